// Command-line front end: logarithmic checks, blowup transforms,
// principalization schedules, and the instability experiment suite.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wlog/blowup.hpp"
#include "wlog/dynamics.hpp"
#include "wlog/logcheck.hpp"
#include "wlog/parser.hpp"
#include "wlog/registry.hpp"
#include "wlog/report.hpp"

using namespace wlog;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

struct Output {
    std::string format = "text";  // text | json
    std::string out_dir;

    void emit(const std::string& text, const Json& json) const {
        // every report carries its full run configuration
        std::string full = text;
        if (json.contains("config"))
            full = "# config " + json["config"].dump() + "\n" + text;
        if (format == "json")
            std::cout << json.dump(2) << "\n";
        else
            std::cout << full;
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::ofstream(out_dir + "/report.txt") << full;
            std::ofstream(out_dir + "/report.json") << json.dump(2) << "\n";
        }
    }

    void write_csv(const std::string& name, const Trajectory& traj) const {
        if (out_dir.empty()) return;
        std::filesystem::create_directories(out_dir);
        std::ofstream os(out_dir + "/" + name);
        write_trajectory_csv(os, traj);
    }
};

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            std::string piece = text.substr(start, i - start);
            if (!piece.empty()) out.push_back(std::stod(piece));
            start = i + 1;
        }
    }
    return out;
}

KineticMetric parse_metric(const std::string& spec, std::size_t n,
                           const std::vector<std::string>& vars) {
    if (spec.empty() || spec == "identity") return KineticMetric::identity(n);
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "diag") {
        auto d = parse_doubles(body);
        if (d.size() != n) throw std::invalid_argument("diag metric needs " + std::to_string(n) + " entries");
        std::vector<double> g(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) g[i * n + i] = d[i];
        return KineticMetric::constant(n, g);
    }
    if (kind == "const") {
        std::vector<double> g;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || body[i] == ';') {
                auto row = parse_doubles(body.substr(start, i - start));
                g.insert(g.end(), row.begin(), row.end());
                start = i + 1;
            }
        }
        return KineticMetric::constant(n, g);
    }
    if (kind == "poly") {
        std::vector<std::vector<Polynomial>> rows;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || body[i] == ';') {
                rows.push_back(parse_polynomial_list(body.substr(start, i - start), vars));
                start = i + 1;
            }
        }
        return KineticMetric::polynomial(rows);
    }
    throw std::invalid_argument("unknown metric spec: " + spec +
                                " (expected identity, diag:..., const:..., poly:...)");
}

struct PotentialArgs {
    std::string expr;
    std::string builtin;
    std::string vars_text;

    PotentialSpec build(std::vector<std::string>& vars_out) const {
        if (!builtin.empty()) {
            auto spec = PotentialSpec::builtin(builtin);
            if (!vars_text.empty())
                vars_out = parse_var_names(vars_text);
            else
                vars_out = spec.dim() == 1 ? std::vector<std::string>{"x"}
                                           : std::vector<std::string>{"x", "y"};
            if (vars_out.size() != spec.dim())
                throw std::invalid_argument("variable list does not match builtin dimension");
            return spec;
        }
        if (expr.empty()) throw std::invalid_argument("either --U or --builtin is required");
        if (vars_text.empty()) throw std::invalid_argument("--vars is required with --U");
        vars_out = parse_var_names(vars_text);
        return PotentialSpec::polynomial(parse_polynomial(expr, vars_out));
    }
};

Center center_from_names(const std::vector<std::string>& vars, const std::string& names_text,
                         const std::string& pivot_name, std::size_t& pivot_out) {
    Center center;
    for (const std::string& name : parse_var_names(names_text)) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw std::invalid_argument("center variable '" + name + "' not in --vars");
        center.vars.push_back(static_cast<std::size_t>(it - vars.begin()));
    }
    auto it = std::find(vars.begin(), vars.end(), pivot_name);
    if (it == vars.end()) throw std::invalid_argument("pivot '" + pivot_name + "' not in --vars");
    pivot_out = static_cast<std::size_t>(it - vars.begin());
    return center;
}

Json run_config(const std::string& command, std::initializer_list<std::pair<std::string, Json>> kv) {
    Json j;
    j["command"] = command;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for logarithmic vector fields, blowups and instability experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    Output output;
    app.add_option("--format", output.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", output.out_dir, "directory for report and CSV artifacts");

    std::string vars_text, u_text, v_text, base_text, center_text, pivot_name, curve_text;
    std::string schedule_path, metric_spec = "identity", method_name_opt = "auto";
    std::string param_name = "s";
    PotentialArgs pot;
    std::string x0_text, v0_text, p_text, eps_text, energies_text;
    WeakLogParams wl;
    WitnessParams wp;
    double box_half = 1.0, dt = 1e-3, horizon = 10.0, pot_factor = 1.0;
    EpsilonFamilyParams ef;
    bool no_step_halving = false;
    StabilityProbeParams sp;
    sp.energies = {1e-6};
    int eps_count = 9, frames = 2000;
    double escape_radius = -1.0;
    bool run_all = false, list_ids = false;
    std::vector<std::string> reproduce_ids;

    auto* c_checklog = app.add_subcommand("check-log", "exact logarithmic test V(U) = P U");
    c_checklog->add_option("--vars", vars_text)->required();
    c_checklog->add_option("--U", u_text)->required();
    c_checklog->add_option("--V", v_text)->required();

    auto* c_weaklog = app.add_subcommand("check-weaklog", "multiscale boundedness sampling of V(U)/U");
    c_weaklog->add_option("--vars", vars_text)->required();
    c_weaklog->add_option("--U", u_text)->required();
    c_weaklog->add_option("--V", v_text)->required();
    c_weaklog->add_option("--base", base_text, "base point on the zero locus (default origin)");
    c_weaklog->add_option("--r0", wl.r0);
    c_weaklog->add_option("--scales", wl.num_scales);
    c_weaklog->add_option("--samples", wl.samples_per_scale);
    c_weaklog->add_option("--seed", wl.seed);
    c_weaklog->add_option("--growth-factor", wl.growth_factor);

    auto* c_witness = app.add_subcommand("witness", "|V(U)/U| along a parametric curve into the locus");
    c_witness->add_option("--vars", vars_text)->required();
    c_witness->add_option("--U", u_text)->required();
    c_witness->add_option("--V", v_text)->required();
    c_witness->add_option("--curve", curve_text, "curve components in the parameter")->required();
    c_witness->add_option("--param", param_name, "curve parameter name");
    c_witness->add_option("--s-max", wp.s_max);
    c_witness->add_option("--s-min", wp.s_min);
    c_witness->add_option("--points", wp.points);
    c_witness->add_option("--ratio", wp.divergence_ratio);

    auto* c_blowup = app.add_subcommand("blowup", "total/strict transform in one blowup chart");
    c_blowup->add_option("--vars", vars_text)->required();
    c_blowup->add_option("--U", u_text)->required();
    c_blowup->add_option("--center", center_text)->required();
    c_blowup->add_option("--pivot", pivot_name)->required();

    auto* c_pullback = app.add_subcommand("pullback", "pull a tangent field back to the chart");
    c_pullback->add_option("--vars", vars_text)->required();
    c_pullback->add_option("--V", v_text)->required();
    c_pullback->add_option("--center", center_text)->required();
    c_pullback->add_option("--pivot", pivot_name)->required();

    auto* c_pushout = app.add_subcommand("pushout", "push a chart field down to the base");
    c_pushout->add_option("--vars", vars_text, "base (downstairs) variables")->required();
    c_pushout->add_option("--V", v_text, "components in chart coordinates")->required();
    c_pushout->add_option("--center", center_text)->required();
    c_pushout->add_option("--pivot", pivot_name)->required();

    auto* c_princ = app.add_subcommand("principalize", "run a blowup schedule and test the normal form");
    c_princ->add_option("--vars", vars_text)->required();
    c_princ->add_option("--U", u_text)->required();
    c_princ->add_option("--schedule", schedule_path, "schedule file")->required();
    c_princ->add_option("--box", box_half, "half-width of the unit-certification box");

    auto* c_sim = app.add_subcommand("simulate", "integrate the Euler-Lagrange flow");
    c_sim->add_option("--vars", pot.vars_text);
    c_sim->add_option("--U", pot.expr);
    c_sim->add_option("--builtin", pot.builtin, "wintner or laloy");
    c_sim->add_option("--metric", metric_spec);
    c_sim->add_option("--x0", x0_text)->required();
    c_sim->add_option("--v0", v0_text)->required();
    c_sim->add_option("--dt", dt);
    c_sim->add_option("--T", horizon);
    c_sim->add_option("--method", method_name_opt, "verlet, rk4 or auto");
    c_sim->add_option("--pot-factor", pot_factor);
    c_sim->add_option("--frames", frames);
    c_sim->add_option("--escape-radius", escape_radius);

    auto* c_eps = app.add_subcommand("eps-family", "the eps-scaled instability experiment");
    c_eps->add_option("--vars", pot.vars_text);
    c_eps->add_option("--U", pot.expr);
    c_eps->add_option("--builtin", pot.builtin);
    c_eps->add_option("--metric", metric_spec);
    c_eps->add_option("--V", v_text, "vector field, evaluated at p for the initial velocity")->required();
    c_eps->add_option("--p", p_text, "base point (default origin)");
    c_eps->add_option("--eps", eps_text, "explicit epsilon list");
    c_eps->add_option("--eps-count", eps_count, "use 2^0 .. 2^-(count-1)");
    c_eps->add_option("--T", ef.T);
    c_eps->add_option("--dt-base", ef.dt_base);
    c_eps->add_option("--escape-radius", ef.escape_radius);
    c_eps->add_option("--frames", ef.frames);
    c_eps->add_flag("--no-step-halving", no_step_halving);

    auto* c_stab = app.add_subcommand("stability", "finite-horizon trapping probe");
    c_stab->add_option("--vars", pot.vars_text);
    c_stab->add_option("--U", pot.expr);
    c_stab->add_option("--builtin", pot.builtin);
    c_stab->add_option("--metric", metric_spec);
    c_stab->add_option("--p", p_text, "equilibrium point (default origin)");
    c_stab->add_option("--energies", energies_text, "comma-separated shell energies");
    c_stab->add_option("--T", sp.T);
    c_stab->add_option("--dt", sp.dt);

    auto* c_rep = app.add_subcommand("reproduce", "re-run the named worked examples");
    c_rep->add_option("ids", reproduce_ids, "registry ids");
    c_rep->add_flag("--all", run_all);
    c_rep->add_flag("--list", list_ids);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*c_checklog) {
            auto vars = parse_var_names(vars_text);
            auto U = parse_polynomial(u_text, vars);
            PolyVectorField V(vars, parse_polynomial_list(v_text, vars));
            auto verdict = check_logarithmic(V, U);
            Json j;
            j["config"] = run_config("check-log", {{"vars", vars_text}, {"U", u_text}, {"V", v_text}});
            j["report"] = to_json(verdict);
            output.emit(render_text(verdict), j);
            return verdict.logarithmic() ? kExitOk : kExitNegative;
        }

        if (*c_weaklog) {
            auto vars = parse_var_names(vars_text);
            auto U = parse_polynomial(u_text, vars);
            PolyVectorField V(vars, parse_polynomial_list(v_text, vars));
            std::vector<double> base(vars.size(), 0.0);
            if (!base_text.empty()) base = parse_doubles(base_text);
            auto report = weaklog_sample(V, U, base, wl);
            Json j;
            j["config"] = run_config("check-weaklog",
                                     {{"vars", vars_text},
                                      {"U", u_text},
                                      {"V", v_text},
                                      {"base", base},
                                      {"r0", wl.r0},
                                      {"scales", wl.num_scales},
                                      {"samples", wl.samples_per_scale},
                                      {"seed", wl.seed},
                                      {"growth_factor", wl.growth_factor}});
            j["report"] = to_json(report);
            output.emit(render_text(report), j);
            return report.growth_flag ? kExitNegative : kExitOk;
        }

        if (*c_witness) {
            auto vars = parse_var_names(vars_text);
            auto U = parse_polynomial(u_text, vars);
            PolyVectorField V(vars, parse_polynomial_list(v_text, vars));
            auto curve = parse_polynomial_list(curve_text, {param_name});
            auto witness = divergence_witness(V, U, curve, wp);
            Json j;
            j["config"] = run_config("witness", {{"vars", vars_text},
                                                 {"U", u_text},
                                                 {"V", v_text},
                                                 {"curve", curve_text},
                                                 {"param", param_name},
                                                 {"s_max", wp.s_max},
                                                 {"s_min", wp.s_min},
                                                 {"points", wp.points},
                                                 {"ratio", wp.divergence_ratio}});
            j["report"] = to_json(witness);
            output.emit(render_text(witness), j);
            return witness.divergent ? kExitOk : kExitNegative;
        }

        if (*c_blowup) {
            auto vars = parse_var_names(vars_text);
            auto U = parse_polynomial(u_text, vars);
            std::size_t pivot = 0;
            Center center = center_from_names(vars, center_text, pivot_name, pivot);
            auto chart = make_chart(vars, center, pivot);
            auto result = strict_transform(U, chart);
            std::ostringstream os;
            os << "chart vars: ";
            for (std::size_t i = 0; i < chart.chart_vars.size(); ++i)
                os << (i ? "," : "") << chart.chart_vars[i];
            if (chart.codim1_flagged)
                os << "   [codimension-one center: the blowup is an isomorphism]";
            os << "\ntotal  = " << result.total.str() << "\n"
               << "       = " << chart.chart_vars[chart.pivot] << "^"
               << result.exceptional_exponent << " * (" << result.strict.str() << ")\n"
               << "strict = " << result.strict.str() << "\n";
            Json j;
            j["config"] = run_config("blowup", {{"vars", vars_text},
                                                {"U", u_text},
                                                {"center", center_text},
                                                {"pivot", pivot_name}});
            j["report"] = to_json(result);
            j["report"]["chart_vars"] = chart.chart_vars;
            j["report"]["codim1_flagged"] = chart.codim1_flagged;
            output.emit(os.str(), j);
            return kExitOk;
        }

        if (*c_pullback) {
            auto vars = parse_var_names(vars_text);
            PolyVectorField V(vars, parse_polynomial_list(v_text, vars));
            std::size_t pivot = 0;
            Center center = center_from_names(vars, center_text, pivot_name, pivot);
            auto chart = make_chart(vars, center, pivot);
            auto up = pullback_field(V, chart);
            std::ostringstream os;
            os << "chart vars: ";
            for (std::size_t i = 0; i < chart.chart_vars.size(); ++i)
                os << (i ? "," : "") << chart.chart_vars[i];
            os << "\npullback = " << up.str() << "\n";
            Json j;
            j["config"] = run_config("pullback", {{"vars", vars_text},
                                                  {"V", v_text},
                                                  {"center", center_text},
                                                  {"pivot", pivot_name}});
            j["report"]["chart_vars"] = chart.chart_vars;
            Json comps = Json::array();
            for (const auto& c : up.components) comps.push_back(c.str());
            j["report"]["components"] = comps;
            output.emit(os.str(), j);
            return kExitOk;
        }

        if (*c_pushout) {
            auto vars = parse_var_names(vars_text);
            std::size_t pivot = 0;
            Center center = center_from_names(vars, center_text, pivot_name, pivot);
            auto chart = make_chart(vars, center, pivot);
            PolyVectorField V(chart.chart_vars, parse_polynomial_list(v_text, chart.chart_vars));
            auto down = pushout_field(V, chart);
            std::ostringstream os;
            os << "downstairs field = " << down.str() << "\n"
               << "polynomial: " << (down.is_polynomial() ? "yes" : "no") << "\n";
            Json j;
            j["config"] = run_config("pushout", {{"vars", vars_text},
                                                 {"V", v_text},
                                                 {"center", center_text},
                                                 {"pivot", pivot_name}});
            Json comps = Json::array();
            for (const auto& c : down.components) comps.push_back(c.str());
            j["report"]["components"] = comps;
            j["report"]["polynomial"] = down.is_polynomial();
            output.emit(os.str(), j);
            return kExitOk;
        }

        if (*c_princ) {
            auto vars = parse_var_names(vars_text);
            auto U = parse_polynomial(u_text, vars);
            auto schedule = parse_schedule_file(schedule_path);
            auto trace = run_schedule(U, schedule, box_half);
            Json j;
            j["config"] = run_config("principalize", {{"vars", vars_text},
                                                      {"U", u_text},
                                                      {"schedule", schedule_path},
                                                      {"box", box_half}});
            j["report"] = to_json(trace);
            output.emit(render_text(trace), j);
            bool ok = trace.monomial_unit && trace.monomial_unit->certified_positive;
            return ok ? kExitOk : kExitNegative;
        }

        if (*c_sim) {
            std::vector<std::string> vars;
            auto potential = pot.build(vars);
            auto metric = parse_metric(metric_spec, potential.dim(), vars);
            auto system = make_system(potential, metric);
            IntegrateOptions opt;
            opt.dt = dt;
            opt.T = horizon;
            opt.pot_factor = pot_factor;
            opt.max_frames = frames;
            opt.escape_radius = escape_radius;
            opt.method = method_name_opt == "auto"
                             ? (metric.position_dependent() ? Method::RK4 : Method::Verlet)
                             : method_from_name(method_name_opt);
            auto x0 = parse_doubles(x0_text);
            auto v0 = parse_doubles(v0_text);
            auto traj = integrate(system, x0, v0, opt);
            std::ostringstream os;
            os << "method: " << traj.method << ", steps: " << std::llround(horizon / dt)
               << ", frames: " << traj.times.size() << "\n"
               << "relative energy drift: " << fmt_double(traj.energy_drift_rel)
               << (traj.non_conservative ? "  [NON-CONSERVATIVE]" : "") << "\n"
               << "max excursion: " << fmt_double(traj.max_excursion) << "\n"
               << "max U: " << fmt_double(traj.max_U) << "\n";
            if (opt.escape_radius > 0)
                os << "escape time: "
                   << (traj.escape_time >= 0 ? fmt_double(traj.escape_time) : std::string("none"))
                   << "\n";
            if (traj.truncated) os << "TRUNCATED: non-finite state reached\n";
            Json j;
            j["config"] = run_config("simulate", {{"potential", potential.name()},
                                                  {"metric", metric_spec},
                                                  {"x0", x0},
                                                  {"v0", v0},
                                                  {"dt", dt},
                                                  {"T", horizon},
                                                  {"method", traj.method},
                                                  {"pot_factor", pot_factor}});
            j["report"]["energy_drift_rel"] = traj.energy_drift_rel;
            j["report"]["non_conservative"] = traj.non_conservative;
            j["report"]["max_excursion"] = traj.max_excursion;
            j["report"]["max_U"] = traj.max_U;
            j["report"]["truncated"] = traj.truncated;
            output.emit(os.str(), j);
            output.write_csv("trajectory.csv", traj);
            return traj.truncated ? kExitNegative : kExitOk;
        }

        if (*c_eps) {
            std::vector<std::string> vars;
            auto potential = pot.build(vars);
            auto metric = parse_metric(metric_spec, potential.dim(), vars);
            auto system = make_system(potential, metric);
            PolyVectorField V(vars, parse_polynomial_list(v_text, vars));
            std::vector<double> p(vars.size(), 0.0);
            if (!p_text.empty()) p = parse_doubles(p_text);
            if (!eps_text.empty())
                ef.epsilons = parse_doubles(eps_text);
            else {
                ef.epsilons.clear();
                for (int k = 0; k < eps_count; ++k) ef.epsilons.push_back(std::ldexp(1.0, -k));
            }
            ef.step_halving_check = !no_step_halving;
            auto report = epsilon_family(system, p, V, ef);
            auto evidence = limit_curve_evidence(report);
            Json j;
            j["config"] = run_config("eps-family", {{"potential", potential.name()},
                                                    {"metric", metric_spec},
                                                    {"V", v_text},
                                                    {"p", p},
                                                    {"epsilons", ef.epsilons},
                                                    {"T", ef.T},
                                                    {"dt_base", ef.dt_base},
                                                    {"escape_radius", ef.escape_radius}});
            j["report"] = to_json(report);
            j["report"]["limit_curve"] = to_json(evidence);
            output.emit(render_text(report) + render_text(evidence), j);
            for (std::size_t m = 0; m < report.members.size(); ++m)
                output.write_csv("eps_" + std::to_string(m) + ".csv",
                                 report.members[m].trajectory);
            bool all_escaped = true;
            for (const auto& m : report.members) all_escaped = all_escaped && m.escape_time >= 0;
            return all_escaped ? kExitOk : kExitNegative;
        }

        if (*c_stab) {
            std::vector<std::string> vars;
            auto potential = pot.build(vars);
            auto metric = parse_metric(metric_spec, potential.dim(), vars);
            auto system = make_system(potential, metric);
            std::vector<double> p(potential.dim(), 0.0);
            if (!p_text.empty()) p = parse_doubles(p_text);
            if (!energies_text.empty()) sp.energies = parse_doubles(energies_text);
            auto report = stability_probe(system, p, sp);
            Json j;
            j["config"] = run_config("stability", {{"potential", potential.name()},
                                                   {"metric", metric_spec},
                                                   {"p", p},
                                                   {"energies", sp.energies},
                                                   {"T", sp.T},
                                                   {"dt", sp.dt}});
            j["report"] = to_json(report);
            output.emit(render_text(report), j);
            return kExitOk;
        }

        if (*c_rep) {
            if (list_ids) {
                for (const auto& id : registry_ids()) std::cout << id << "\n";
                return kExitOk;
            }
            std::vector<std::string> ids = reproduce_ids;
            if (run_all) ids = registry_ids();
            if (ids.empty()) {
                std::cerr << "reproduce: give registry ids or --all (see --list)\n";
                return kExitInput;
            }
            bool all_pass = true;
            std::ostringstream os;
            Json entries = Json::array();
            for (const auto& id : ids) {
                auto result = run_registry_entry(id);
                all_pass = all_pass && result.pass;
                os << render_text(result);
                Json e;
                e["id"] = result.id;
                e["pass"] = result.pass;
                Json ex = Json::array();
                for (const auto& x : result.expectations)
                    ex.push_back({{"name", x.name},
                                  {"provenance", x.provenance},
                                  {"pass", x.pass},
                                  {"detail", x.detail}});
                e["expectations"] = ex;
                entries.push_back(std::move(e));
            }
            os << (all_pass ? "ALL PASS\n" : "FAILURES PRESENT\n");
            Json j;
            j["config"] = run_config("reproduce", {{"ids", ids}});
            j["report"]["entries"] = entries;
            j["report"]["all_pass"] = all_pass;
            output.emit(os.str(), j);
            return all_pass ? kExitOk : kExitNegative;
        }
    } catch (const TangencyError& e) {
        std::cerr << "tangency violation: " << e.what() << "\n";
        return kExitNegative;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
