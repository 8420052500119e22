#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wlog/vector_field.hpp"

namespace wlog {

/// Coordinate-subspace blowup center {x_i = 0 : i in vars}. A singleton
/// center is legal but flagged: that blowup is an isomorphism whose only
/// effect is to turn the center into an exceptional divisor.
struct Center {
    std::vector<std::size_t> vars;

    bool codimension_one() const { return vars.size() == 1; }
};

/// How chart coordinates are named: the xi_ prefix for one-shot charts, a
/// trailing step index (y -> y_1 -> y_2) along principalization schedules.
enum class ChartNaming { XiPrefix, StepIndexed };

/// One affine chart of the blowup along a coordinate center: the pivot
/// coordinate is kept and every other center coordinate x_i becomes
/// pivot * xi_i. Variables outside the center are untouched.
struct BlowupChart {
    std::vector<std::string> source_vars;
    std::vector<std::string> chart_vars;  // same positions, center vars renamed
    Center center;
    std::size_t pivot;  // index into both variable lists

    bool codim1_flagged = false;

    bool in_center(std::size_t i) const;
    /// Substitution images of the source variables as chart polynomials.
    std::vector<Polynomial> substitution_images() const;
};

BlowupChart make_chart(const std::vector<std::string>& vars, const Center& center,
                       std::size_t pivot, ChartNaming naming = ChartNaming::XiPrefix,
                       int step_index = 1);

/// Total transform f(pi(.)) together with its exceptional decomposition
/// total = pivot^d * strict, pivot not dividing strict.
struct TransformResult {
    Polynomial total;
    int exceptional_exponent = 0;
    Polynomial strict;
};

Polynomial total_transform(const Polynomial& f, const BlowupChart& chart);
TransformResult strict_transform(const Polynomial& f, const BlowupChart& chart);

struct TangencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unique upstairs field projecting onto V, tangent to the exceptional
/// hyperplane {pivot = 0}. Requires V tangent to the center.
PolyVectorField pullback_field(const PolyVectorField& V, const BlowupChart& chart);

/// Unique downstairs field under the blowup, rational-function valued in
/// general. Requires the upstairs field tangent to {pivot = 0}.
RatVectorField pushout_field(const RatVectorField& V, const BlowupChart& chart);
RatVectorField pushout_field(const PolyVectorField& V, const BlowupChart& chart);

/// Monomial-times-unit normal form: sign * x^d * unit with unit(0) > 0.
/// Positivity of the unit is certified by deterministic sampling on a box,
/// never proved.
struct MonomialUnitForm {
    int sign = 1;
    Exponents exponents;
    Polynomial unit;
    bool certified_positive = false;
};

struct Box {
    std::vector<double> lo, hi;
    static Box unit_cube(std::size_t n, double half_width = 1.0);
};

/// nullopt when the cofactor has zero constant term or changes sign on the box.
std::optional<MonomialUnitForm> to_monomial_unit(const Polynomial& f, const Box& box,
                                                 int samples = 4096);

/// One principalization step: blow up the named center in the current chart.
struct ScheduleStep {
    std::vector<std::string> center_vars;
    std::string pivot;
};

using Schedule = std::vector<ScheduleStep>;

Schedule parse_schedule_file(const std::string& path);
Schedule parse_schedule_text(const std::string& text);

struct TraceStep {
    BlowupChart chart;
    TransformResult transform;      // of the cumulative total
    Exponents cumulative_monomial;  // monomial content of the cumulative total
};

struct PrincipalizationTrace {
    Polynomial input;
    std::vector<TraceStep> steps;
    Polynomial final_total;  // equals input when the schedule is empty
    std::optional<MonomialUnitForm> monomial_unit;
};

/// Applies the schedule step by step in chart coordinates with indexed
/// variable naming, then tests the final total for monomial-times-unit form.
PrincipalizationTrace run_schedule(const Polynomial& U, const Schedule& schedule,
                                   double unit_box_half_width = 1.0);

}  // namespace wlog
