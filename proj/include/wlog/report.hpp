#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "wlog/blowup.hpp"
#include "wlog/dynamics.hpp"
#include "wlog/logcheck.hpp"

namespace wlog {

using Json = nlohmann::json;

/// Stable double formatting for byte-identical text reports.
std::string fmt_double(double x);

Json to_json(const LogVerdict& v);
Json to_json(const WeakLogReport& r);
Json to_json(const CurveWitness& w);
Json to_json(const TransformResult& t);
Json to_json(const MonomialUnitForm& f);
Json to_json(const PrincipalizationTrace& trace);
Json to_json(const EpsMemberReport& m);
Json to_json(const EpsilonFamilyReport& r);
Json to_json(const LimitCurveEvidence& e);
Json to_json(const StabilityReport& r);

std::string render_text(const LogVerdict& v);
std::string render_text(const WeakLogReport& r);
std::string render_text(const CurveWitness& w);
std::string render_text(const PrincipalizationTrace& trace);
std::string render_text(const EpsilonFamilyReport& r);
std::string render_text(const LimitCurveEvidence& e);
std::string render_text(const StabilityReport& r);

/// Header `tau,x1..xn,v1..vn,energy,U`, one row per recorded frame.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace wlog
