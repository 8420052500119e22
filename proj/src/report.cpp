#include "wlog/report.hpp"

#include <cstdio>
#include <sstream>

namespace wlog {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

Json to_json(const LogVerdict& v) {
    Json j;
    j["status"] = v.logarithmic() ? "logarithmic" : "not_polynomial_quotient";
    if (v.logarithmic()) j["P"] = v.P->str();
    j["VU"] = v.vu.str();
    return j;
}

Json to_json(const WeakLogReport& r) {
    Json j;
    j["scales"] = r.scales;
    j["per_scale_sup"] = r.per_scale_sup;
    j["global_sup_estimate"] = r.global_sup_estimate;
    j["growth_flag"] = r.growth_flag;
    j["samples_per_scale"] = r.samples_per_scale;
    j["discarded_samples"] = r.discarded_samples;
    return j;
}

Json to_json(const CurveWitness& w) {
    Json j;
    Json curve = Json::array();
    for (const auto& c : w.curve) curve.push_back(c.str());
    j["curve"] = curve;
    Json pv = Json::array();
    for (const auto& [s, v] : w.p_values) pv.push_back({s, v});
    j["p_values"] = pv;
    j["divergent"] = w.divergent;
    j["skipped_points"] = w.skipped_points;
    return j;
}

Json to_json(const TransformResult& t) {
    Json j;
    j["total"] = t.total.str();
    j["exceptional_exponent"] = t.exceptional_exponent;
    j["strict"] = t.strict.str();
    return j;
}

Json to_json(const MonomialUnitForm& f) {
    Json j;
    j["sign"] = f.sign;
    j["exponents"] = f.exponents;
    j["unit"] = f.unit.str();
    j["certified_positive"] = f.certified_positive;
    return j;
}

Json to_json(const PrincipalizationTrace& trace) {
    Json j;
    j["input"] = trace.input.str();
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json step;
        Json center = Json::array();
        for (std::size_t i : s.chart.center.vars) center.push_back(s.chart.source_vars[i]);
        step["center"] = center;
        step["pivot"] = s.chart.source_vars[s.chart.pivot];
        step["chart_vars"] = s.chart.chart_vars;
        step["transform"] = to_json(s.transform);
        step["cumulative_monomial"] = s.cumulative_monomial;
        step["codim1_flagged"] = s.chart.codim1_flagged;
        steps.push_back(std::move(step));
    }
    j["steps"] = steps;
    j["final_total"] = trace.final_total.str();
    if (trace.monomial_unit)
        j["monomial_unit"] = to_json(*trace.monomial_unit);
    else
        j["monomial_unit"] = nullptr;
    return j;
}

Json to_json(const EpsMemberReport& m) {
    Json j;
    j["eps"] = m.eps;
    j["dt"] = m.dt;
    j["max_speed_g"] = m.max_speed_g;
    j["max_U"] = m.max_U;
    j["speed_bound_ok"] = m.speed_bound_ok;
    j["potential_bound_ok"] = m.potential_bound_ok;
    if (m.escape_time >= 0)
        j["escape_time"] = m.escape_time;
    else
        j["escape_time"] = nullptr;
    j["ydot0"] = m.ydot0;
    j["step_halving_dist"] = m.step_halving_dist;
    j["step_halving_ok"] = m.step_halving_ok;
    Json y = Json::array();
    const std::size_t stride = std::max<std::size_t>(1, m.holonomy.size() / 64);
    for (std::size_t i = 0; i < m.holonomy.size(); i += stride)
        y.push_back({m.holonomy[i].first, m.holonomy[i].second});
    j["holonomy"] = y;
    return j;
}

Json to_json(const EpsilonFamilyReport& r) {
    Json j;
    j["epsilons"] = r.epsilons;
    j["v0"] = r.v0;
    j["v0_norm_g"] = r.v0_norm_g;
    Json members = Json::array();
    for (const auto& m : r.members) members.push_back(to_json(m));
    j["per_eps"] = members;
    j["pairwise_sup_distance"] = r.pairwise_sup_distance;
    return j;
}

Json to_json(const LimitCurveEvidence& e) {
    Json j;
    j["pairwise_sup_distance"] = e.pairwise_sup_distance;
    j["cauchy_trend"] = e.cauchy_trend;
    j["finest_max_U"] = e.finest_max_U;
    j["finest_bound"] = e.finest_bound;
    j["confined"] = e.confined;
    return j;
}

Json to_json(const StabilityReport& r) {
    Json j;
    Json levels = Json::array();
    for (std::size_t i = 0; i < r.energies.size(); ++i) {
        Json l;
        l["energy"] = r.energies[i];
        l["max_excursion"] = r.max_excursion[i];
        l["per_coord_max"] = r.per_coord_max[i];
        levels.push_back(std::move(l));
    }
    j["levels"] = levels;
    Json runs = Json::array();
    for (const auto& run : r.runs) {
        Json rr;
        rr["energy"] = run.energy;
        rr["direction"] = run.direction;
        rr["max_excursion"] = run.max_excursion;
        rr["per_coord_max_excursion"] = run.per_coord_max_excursion;
        rr["non_conservative"] = run.non_conservative;
        runs.push_back(std::move(rr));
    }
    j["runs"] = runs;
    return j;
}

std::string render_text(const LogVerdict& v) {
    std::ostringstream os;
    if (v.logarithmic())
        os << "status: logarithmic\nP = " << v.P->str() << "\n";
    else
        os << "status: not a polynomial quotient\n";
    os << "V(U) = " << v.vu.str() << "\n";
    return os.str();
}

std::string render_text(const WeakLogReport& r) {
    std::ostringstream os;
    os << "shell  r_outer        r_inner        sup|P|\n";
    for (std::size_t k = 0; k + 1 < r.scales.size(); ++k)
        os << k << "  " << fmt_double(r.scales[k]) << "  " << fmt_double(r.scales[k + 1])
           << "  " << fmt_double(r.per_scale_sup[k]) << "\n";
    os << "global sup estimate: " << fmt_double(r.global_sup_estimate) << "\n";
    os << "samples per scale:   " << r.samples_per_scale << "\n";
    os << "discarded samples:   " << r.discarded_samples << "\n";
    os << (r.growth_flag ? "growth detected: |P| appears unbounded near the base point\n"
                         : std::string("no growth detected up to scale r_min = ") +
                               fmt_double(r.scales.back()) + " (not a boundedness proof)\n");
    return os.str();
}

std::string render_text(const CurveWitness& w) {
    std::ostringstream os;
    os << "curve: (";
    for (std::size_t i = 0; i < w.curve.size(); ++i)
        os << (i ? ", " : "") << w.curve[i].str();
    os << ")\n";
    os << "s              |P(gamma(s))|\n";
    for (const auto& [s, v] : w.p_values)
        os << fmt_double(s) << "  " << fmt_double(v) << "\n";
    if (w.skipped_points) os << "skipped points (zero-locus guard): " << w.skipped_points << "\n";
    os << "divergent: " << (w.divergent ? "yes" : "no") << "\n";
    return os.str();
}

std::string render_text(const PrincipalizationTrace& trace) {
    std::ostringstream os;
    os << "input: " << trace.input.str() << "\n";
    int k = 0;
    for (const auto& s : trace.steps) {
        ++k;
        os << "step " << k << ": blowup center={";
        for (std::size_t i = 0; i < s.chart.center.vars.size(); ++i)
            os << (i ? "," : "") << s.chart.source_vars[s.chart.center.vars[i]];
        os << "} pivot=" << s.chart.source_vars[s.chart.pivot];
        if (s.chart.codim1_flagged) os << "  [codimension-one: isomorphism]";
        os << "\n";
        os << "  chart vars: ";
        for (std::size_t i = 0; i < s.chart.chart_vars.size(); ++i)
            os << (i ? "," : "") << s.chart.chart_vars[i];
        os << "\n";
        const std::string pivot_name = s.chart.chart_vars[s.chart.pivot];
        os << "  total  = " << s.transform.total.str() << "\n";
        os << "         = " << pivot_name << "^" << s.transform.exceptional_exponent << " * ("
           << s.transform.strict.str() << ")\n";
        os << "  strict = " << s.transform.strict.str() << "\n";
    }
    os << "final total: " << trace.final_total.str() << "\n";
    if (trace.monomial_unit) {
        const auto& f = *trace.monomial_unit;
        os << "monomial-times-unit form: " << (f.sign < 0 ? "-" : "");
        bool printed = false;
        for (std::size_t i = 0; i < f.exponents.size(); ++i) {
            if (f.exponents[i] == 0) continue;
            if (printed) os << "*";
            os << trace.final_total.vars()[i];
            if (f.exponents[i] > 1) os << "^" << f.exponents[i];
            printed = true;
        }
        if (!printed) os << "1";
        os << " * (" << f.unit.str() << ")\n";
        os << "unit positivity certified by sampling: "
           << (f.certified_positive ? "yes" : "no") << "\n";
    } else {
        os << "NOT monomializable at this stage: the cofactor has zero constant "
              "term or changes sign\n";
    }
    return os.str();
}

std::string render_text(const EpsilonFamilyReport& r) {
    std::ostringstream os;
    os << "V(p) = (";
    for (std::size_t i = 0; i < r.v0.size(); ++i) os << (i ? ", " : "") << fmt_double(r.v0[i]);
    os << "),  ||V(p)||_g = " << fmt_double(r.v0_norm_g) << "\n";
    os << "eps        max||v||_g     max U          speed_ok  pot_ok  escape_tau   ydot(0)\n";
    for (const auto& m : r.members) {
        os << fmt_double(m.eps) << "  " << fmt_double(m.max_speed_g) << "  "
           << fmt_double(m.max_U) << "  " << (m.speed_bound_ok ? "yes" : "NO") << "  "
           << (m.potential_bound_ok ? "yes" : "NO") << "  "
           << (m.escape_time >= 0 ? fmt_double(m.escape_time) : std::string("none")) << "  "
           << fmt_double(m.ydot0) << "\n";
    }
    os << "pairwise sup distances (consecutive eps): ";
    for (std::size_t i = 0; i < r.pairwise_sup_distance.size(); ++i)
        os << (i ? ", " : "") << fmt_double(r.pairwise_sup_distance[i]);
    os << "\n";
    return os.str();
}

std::string render_text(const LimitCurveEvidence& e) {
    std::ostringstream os;
    os << "limit-curve evidence:\n";
    os << "  pairwise sup distances: ";
    for (std::size_t i = 0; i < e.pairwise_sup_distance.size(); ++i)
        os << (i ? ", " : "") << fmt_double(e.pairwise_sup_distance[i]);
    os << "\n  cauchy trend: " << (e.cauchy_trend ? "yes" : "no") << "\n";
    os << "  max U on finest trajectory: " << fmt_double(e.finest_max_U)
       << " (bound eps^2 ||V(p)||^2 / 2 = " << fmt_double(e.finest_bound) << ")\n";
    os << "  confined to shrinking sublevel sets: " << (e.confined ? "yes" : "no") << "\n";
    return os.str();
}

std::string render_text(const StabilityReport& r) {
    std::ostringstream os;
    os << "energy         max excursion  per-coordinate max\n";
    for (std::size_t i = 0; i < r.energies.size(); ++i) {
        os << fmt_double(r.energies[i]) << "  " << fmt_double(r.max_excursion[i]) << "  (";
        for (std::size_t c = 0; c < r.per_coord_max[i].size(); ++c)
            os << (c ? ", " : "") << fmt_double(r.per_coord_max[i][c]);
        os << ")\n";
    }
    return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const std::size_t n = traj.positions.empty() ? 0 : traj.positions[0].size();
    os << "tau";
    for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
    for (std::size_t i = 1; i <= n; ++i) os << ",v" << i;
    os << ",energy,U\n";
    char buf[40];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        os << buf;
    };
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
        put(traj.times[j]);
        for (std::size_t i = 0; i < n; ++i) {
            os << ",";
            put(traj.positions[j][i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            os << ",";
            put(traj.velocities[j][i]);
        }
        os << ",";
        put(traj.energies[j]);
        os << ",";
        put(traj.potentials[j]);
        os << "\n";
    }
}

}  // namespace wlog
