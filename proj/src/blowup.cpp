#include "wlog/blowup.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "wlog/rng.hpp"

namespace wlog {

bool BlowupChart::in_center(std::size_t i) const {
    return std::find(center.vars.begin(), center.vars.end(), i) != center.vars.end();
}

std::vector<Polynomial> BlowupChart::substitution_images() const {
    // x_i -> pivot * xi_i inside the center (pivot itself fixed), identity outside
    std::vector<Polynomial> images;
    images.reserve(source_vars.size());
    Polynomial pivot_poly = Polynomial::variable(chart_vars, pivot);
    for (std::size_t i = 0; i < source_vars.size(); ++i) {
        if (in_center(i) && i != pivot)
            images.push_back(pivot_poly * Polynomial::variable(chart_vars, i));
        else
            images.push_back(Polynomial::variable(chart_vars, i));
    }
    return images;
}

namespace {

std::string indexed_name(const std::string& name, int step_index) {
    // y -> y_1, y_1 -> y_2: a trailing _<digits> suffix is incremented.
    std::size_t us = name.find_last_of('_');
    if (us != std::string::npos && us + 1 < name.size()) {
        bool digits = true;
        for (std::size_t i = us + 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
                digits = false;
                break;
            }
        if (digits) {
            int k = std::stoi(name.substr(us + 1));
            return name.substr(0, us + 1) + std::to_string(k + 1);
        }
    }
    (void)step_index;
    return name + "_1";
}

std::string unique_name(std::string candidate, const std::vector<std::string>& taken) {
    while (std::find(taken.begin(), taken.end(), candidate) != taken.end())
        candidate += "'";
    return candidate;
}

}  // namespace

BlowupChart make_chart(const std::vector<std::string>& vars, const Center& center,
                       std::size_t pivot, ChartNaming naming, int step_index) {
    if (center.vars.empty()) throw std::invalid_argument("make_chart: empty center");
    for (std::size_t i : center.vars)
        if (i >= vars.size()) throw std::out_of_range("make_chart: center index out of range");
    if (std::find(center.vars.begin(), center.vars.end(), pivot) == center.vars.end())
        throw std::invalid_argument("make_chart: pivot outside center");

    BlowupChart chart;
    chart.source_vars = vars;
    chart.chart_vars = vars;
    chart.center = center;
    chart.pivot = pivot;
    chart.codim1_flagged = center.codimension_one();
    for (std::size_t i : center.vars) {
        if (i == pivot) continue;
        std::string base = naming == ChartNaming::XiPrefix ? "xi_" + vars[i]
                                                           : indexed_name(vars[i], step_index);
        chart.chart_vars[i] = unique_name(base, chart.chart_vars);
    }
    return chart;
}

Polynomial total_transform(const Polynomial& f, const BlowupChart& chart) {
    if (f.vars() != chart.source_vars)
        throw std::invalid_argument("total_transform: variable-set mismatch");
    return f.substitute(chart.substitution_images());
}

TransformResult strict_transform(const Polynomial& f, const BlowupChart& chart) {
    if (f.is_zero()) throw std::invalid_argument("strict_transform: zero polynomial");
    TransformResult result;
    result.total = total_transform(f, chart);
    result.exceptional_exponent = result.total.max_power_dividing(chart.pivot);
    result.strict = result.total.shift_down(chart.pivot, result.exceptional_exponent);
    return result;
}

PolyVectorField pullback_field(const PolyVectorField& V, const BlowupChart& chart) {
    if (V.vars != chart.source_vars)
        throw std::invalid_argument("pullback_field: variable-set mismatch");
    if (!is_tangent_to_center(V, chart.center.vars))
        throw TangencyError("pullback_field: field is not tangent to the center");

    const auto images = chart.substitution_images();
    const Polynomial pivot_var = Polynomial::variable(chart.chart_vars, chart.pivot);
    const Polynomial pivot_upstairs = V.components[chart.pivot].substitute(images);

    std::vector<Polynomial> comps(V.num_vars(), Polynomial::zero(chart.chart_vars));
    for (std::size_t i = 0; i < V.num_vars(); ++i) {
        if (i == chart.pivot) {
            comps[i] = pivot_upstairs;
        } else if (chart.in_center(i)) {
            // xi_i' = (V^i(pi) - xi_i V^pivot(pi)) / pivot; tangency makes this exact
            Polynomial xi = Polynomial::variable(chart.chart_vars, i);
            Polynomial numer = V.components[i].substitute(images) - xi * pivot_upstairs;
            auto q = numer.exact_divide_by(pivot_var);
            if (!q) throw TangencyError("pullback_field: exceptional division failed");
            comps[i] = *q;
        } else {
            comps[i] = V.components[i].substitute(images);
        }
    }
    return PolyVectorField(chart.chart_vars, std::move(comps));
}

namespace {

// Downstairs images of the chart variables: xi_i = x_i / pivot.
std::vector<RationalFunction> downstairs_images(const BlowupChart& chart) {
    std::vector<RationalFunction> images;
    images.reserve(chart.chart_vars.size());
    Polynomial pivot_var = Polynomial::variable(chart.source_vars, chart.pivot);
    for (std::size_t i = 0; i < chart.chart_vars.size(); ++i) {
        Polynomial xi = Polynomial::variable(chart.source_vars, i);
        if (chart.in_center(i) && i != chart.pivot)
            images.emplace_back(xi, pivot_var);
        else
            images.emplace_back(xi);
    }
    return images;
}

bool tangent_to_exceptional(const RationalFunction& pivot_component,
                            const BlowupChart& chart) {
    // pivot | component: numerator vanishes on {pivot = 0}, denominator does not
    if (pivot_component.is_zero()) return true;
    if (pivot_component.den().max_power_dividing(chart.pivot) > 0) return false;
    return pivot_component.num().max_power_dividing(chart.pivot) > 0;
}

}  // namespace

RatVectorField pushout_field(const RatVectorField& V, const BlowupChart& chart) {
    if (V.vars != chart.chart_vars)
        throw std::invalid_argument("pushout_field: field must live in chart coordinates");
    if (!tangent_to_exceptional(V.components[chart.pivot], chart))
        throw TangencyError("pushout_field: field is not tangent to the exceptional hyperplane");

    const auto images = downstairs_images(chart);
    const Polynomial pivot_var = Polynomial::variable(chart.chart_vars, chart.pivot);
    RatVectorField result;
    result.vars = chart.source_vars;
    result.components.reserve(V.components.size());
    for (std::size_t i = 0; i < V.components.size(); ++i) {
        RationalFunction upstairs;
        if (i == chart.pivot) {
            upstairs = V.components[i];
        } else if (chart.in_center(i)) {
            // y_i' = pivot * V^{xi_i} + xi_i * V^{pivot}
            Polynomial xi = Polynomial::variable(chart.chart_vars, i);
            upstairs = V.components[i] * pivot_var + V.components[chart.pivot] * xi;
        } else {
            upstairs = V.components[i];
        }
        result.components.push_back(upstairs.substitute(images));
    }
    return result;
}

RatVectorField pushout_field(const PolyVectorField& V, const BlowupChart& chart) {
    RatVectorField rf;
    rf.vars = V.vars;
    rf.components.reserve(V.components.size());
    for (const auto& c : V.components) rf.components.emplace_back(c);
    return pushout_field(rf, chart);
}

Box Box::unit_cube(std::size_t n, double half_width) {
    Box box;
    box.lo.assign(n, -half_width);
    box.hi.assign(n, half_width);
    return box;
}

std::optional<MonomialUnitForm> to_monomial_unit(const Polynomial& f, const Box& box,
                                                 int samples) {
    if (f.is_zero()) throw std::invalid_argument("to_monomial_unit: zero polynomial");
    if (box.lo.size() != f.num_vars() || box.hi.size() != f.num_vars())
        throw std::invalid_argument("to_monomial_unit: box dimension mismatch");

    MonomialUnitForm form;
    form.exponents = f.monomial_content();
    Polynomial cofactor = f;
    for (std::size_t i = 0; i < form.exponents.size(); ++i)
        if (form.exponents[i] > 0) cofactor = cofactor.shift_down(i, form.exponents[i]);

    Rat c0 = cofactor.constant_term();
    if (c0 == 0) return std::nullopt;
    form.sign = sign_of(c0);
    form.unit = form.sign < 0 ? -cofactor : cofactor;

    // Sign-constancy sampling on the box; the unit's value at the origin is
    // positive, so any nonpositive sample defeats the unit claim.
    Rng rng(0);
    std::vector<double> point(f.num_vars());
    bool all_positive = true;
    for (int s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < point.size(); ++i)
            point[i] = rng.uniform(box.lo[i], box.hi[i]);
        double v = form.unit.eval(point);
        if (v < 0.0) return std::nullopt;  // sign change against the constant term
        if (v == 0.0) all_positive = false;
    }
    form.certified_positive = all_positive;
    return form;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            std::string piece = trim(s.substr(start, i - start));
            if (!piece.empty()) out.push_back(piece);
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

Schedule parse_schedule_text(const std::string& text) {
    Schedule schedule;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "blowup")
            throw std::runtime_error("schedule line " + std::to_string(line_no) +
                                     ": expected 'blowup', got '" + word + "'");
        ScheduleStep step;
        while (ls >> word) {
            std::size_t eq = word.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("schedule line " + std::to_string(line_no) +
                                         ": expected key=value, got '" + word + "'");
            std::string key = word.substr(0, eq);
            std::string value = word.substr(eq + 1);
            if (key == "center")
                step.center_vars = split_commas(value);
            else if (key == "pivot")
                step.pivot = trim(value);
            else
                throw std::runtime_error("schedule line " + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
        }
        if (step.center_vars.empty() || step.pivot.empty())
            throw std::runtime_error("schedule line " + std::to_string(line_no) +
                                     ": both center= and pivot= are required");
        schedule.push_back(std::move(step));
    }
    return schedule;
}

Schedule parse_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schedule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schedule_text(buf.str());
}

PrincipalizationTrace run_schedule(const Polynomial& U, const Schedule& schedule,
                                   double unit_box_half_width) {
    PrincipalizationTrace trace;
    trace.input = U;
    Polynomial current = U;
    int step_no = 0;
    for (const ScheduleStep& step : schedule) {
        ++step_no;
        const auto& vars = current.vars();
        Center center;
        for (const std::string& name : step.center_vars) {
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end())
                throw std::runtime_error("schedule step " + std::to_string(step_no) +
                                         ": variable '" + name +
                                         "' does not exist in the current chart");
            center.vars.push_back(static_cast<std::size_t>(it - vars.begin()));
        }
        auto pivot_it = std::find(vars.begin(), vars.end(), step.pivot);
        if (pivot_it == vars.end())
            throw std::runtime_error("schedule step " + std::to_string(step_no) + ": pivot '" +
                                     step.pivot + "' does not exist in the current chart");
        std::size_t pivot = static_cast<std::size_t>(pivot_it - vars.begin());

        TraceStep ts;
        ts.chart = make_chart(vars, center, pivot, ChartNaming::StepIndexed, step_no);
        ts.transform = strict_transform(current, ts.chart);
        ts.cumulative_monomial = ts.transform.total.monomial_content();
        current = ts.transform.total;
        trace.steps.push_back(std::move(ts));
    }
    trace.final_total = current;
    trace.monomial_unit = to_monomial_unit(
        current, Box::unit_cube(current.num_vars(), unit_box_half_width));
    return trace;
}

}  // namespace wlog
