#include "svsa/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "svsa/avi.hpp"
#include "svsa/euler.hpp"
#include "svsa/fixed_point.hpp"
#include "svsa/io.hpp"
#include "svsa/json_support.hpp"
#include "svsa/lyapunov.hpp"
#include "svsa/mdp.hpp"
#include "svsa/saa.hpp"
#include "svsa/shipped.hpp"
#include "svsa/toml_lite.hpp"

namespace svsa {

namespace fs = std::filesystem;

namespace {

double pd(const nlohmann::json& params, const char* key, double fallback) {
    return params.value(key, fallback);
}

std::size_t pi(const nlohmann::json& params, const char* key, std::size_t fallback) {
    return params.value(key, fallback);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

Mdp resolve_mdp(const nlohmann::json& params, const Mdp& fallback) {
    if (params.contains("mdp")) {
        if (params["mdp"].is_string()) return Mdp::load(params["mdp"].get<std::string>());
        return Mdp::from_json(params["mdp"]);
    }
    return fallback;
}

struct PlotRow {
    std::size_t n;
    double t;
    std::vector<std::pair<const char*, double>> values;
};

void write_plot_csv(const fs::path& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os << "n";
    for (const auto& c : columns) os << ',' << c;
    os << "\n";
    for (const auto& row : rows) {
        os << static_cast<std::size_t>(row[0]);
        for (std::size_t i = 1; i < row.size(); ++i) os << ',' << fmt_g17(row[i]);
        os << "\n";
    }
    write_text(path, os.str());
}

void write_trace_file(const fs::path& path, const RunTrace& trace) {
    std::ostringstream os;
    write_csv(trace, os);
    write_text(path, os.str());
}

// ---- individual experiments ------------------------------------------------

void exp_saa_demo(const ExperimentConfig& config, const fs::path& outdir, SummaryRecord& summary) {
    const auto& p = config.params;
    const std::size_t n_iter = pi(p, "n_iter", 10000);
    const double a0 = pd(p, "a0", 0.5);
    const double radius = pd(p, "radius", 0.1);
    const Vec x0 = p.contains("x0") ? p["x0"].get<Vec>() : Vec{1.0};
    const std::size_t d = x0.size();

    Perturbation pert = NoPerturbation{};
    if (radius > 0.0) pert = BallPerturbation{radius, NormSpec::euclidean()};
    SetValuedMap map(d, [](const Vec& x) { return scale(-1.0, x); }, std::move(pert));
    const NoiseModel noise = p.contains("noise") ? noise_from_json(p["noise"]) : NoiseModel::zero();

    RunTrace trace = run_saa(map, x0, StepSchedule::harmonic(a0), noise,
                             SelectionStrategy::uniform(), n_iter, config.seed);
    write_trace_file(outdir / "trace.csv", trace);

    std::vector<std::vector<double>> plot;
    const std::size_t stride = std::max<std::size_t>(1, trace.iterates.size() / 2000);
    for (std::size_t n = 0; n < trace.iterates.size(); n += stride)
        plot.push_back({static_cast<double>(n), trace.times[n], norm2(trace.iterates[n])});
    write_plot_csv(outdir / "plot.csv", {"t", "norm_x"}, plot);

    summary.metrics["final_norm"] = norm2(trace.iterates.back());
    summary.metrics["tail_norm"] = norm2(trace.tail_average(0.1));
    summary.checks["not_diverged"] = !trace.diverged;
}

void exp_projective_demo(const ExperimentConfig& config, const fs::path& outdir,
                         SummaryRecord& summary) {
    const auto& p = config.params;
    const std::size_t n_iter = pi(p, "n_iter", 100000);
    const double a0 = pd(p, "a0", 1.0);
    const double noise_D = pd(p, "noise_D", 0.2);
    const double r_b = pd(p, "r_b", 1.0);
    const double r_c = pd(p, "r_c", 2.0);
    const std::size_t d = pi(p, "dim", 1);

    // expanding mean field: projections recur forever
    SetValuedMap map(d, [](const Vec& x) { return x; });
    const InwardSetPair pair = InwardSetPair::balls(zeros(d), r_b, r_c, NormSpec::euclidean());
    RunTrace trace = run_projective(map, ones(d), StepSchedule::harmonic(a0),
                                    NoiseModel::bounded_iid(noise_D),
                                    SelectionStrategy::center(), pair, n_iter, config.seed);
    write_trace_file(outdir / "trace.csv", trace);

    bool contained = true;
    for (const Vec& x : trace.iterates) contained = contained && pair.in_closure_C(x);

    // Lemma separation constant: d / (2 D_1) with d the boundary gap and
    // D_1 = D + sup over closure(C) of the mean-field norm
    const double sup_field = r_c; // ||x|| on the ball of radius r_c
    const double delta = pair.boundary_gap() / (2.0 * (noise_D + sup_field));
    const SeparationScan scan = projection_separation(trace);

    summary.metrics["min_separation"] = scan.min_separation;
    summary.metrics["delta"] = delta;
    summary.metrics["n_projections"] = static_cast<double>(scan.n_events);
    summary.checks["containment"] = contained;
    summary.checks["separation"] = scan.min_separation >= delta - 1e-6;
    summary.checks["not_diverged"] = !trace.diverged;
}

AviConfig avi_config_from_params(const nlohmann::json& p, const Mdp& mdp, std::uint64_t seed) {
    const std::size_t d = mdp.n_states();
    AviConfig config;
    config.epsilon = pd(p, "epsilon", 0.1);
    config.n_iter = pi(p, "n_iter", 200000);
    config.schedule = p.contains("schedule") ? schedule_from_json(p["schedule"])
                                             : StepSchedule::harmonic(pd(p, "a0", 1.0));
    config.noise = p.contains("noise") ? noise_from_json(p["noise"])
                                       : NoiseModel::bounded_iid(pd(p, "noise_D", 0.2));
    config.contraction_norm = p.contains("contraction_norm")
                                  ? norm_from_json(p["contraction_norm"])
                                  : NormSpec::weighted_max(ones(d));
    config.error_norm =
        p.contains("error_norm") ? norm_from_json(p["error_norm"]) : config.contraction_norm;
    config.tail_fraction = pd(p, "tail_fraction", 0.1);
    config.seed = seed;
    if (p.contains("j0")) config.j0 = p["j0"].get<Vec>();
    const std::string injector = p.value("injector", "fixed-bias");
    if (injector == "fixed-bias")
        config.injector.kind = ErrorInjector::Kind::FixedBias;
    else if (injector == "uniform-ball")
        config.injector.kind = ErrorInjector::Kind::UniformBall;
    else if (injector == "rounding-grid")
        config.injector.kind = ErrorInjector::Kind::RoundingGrid;
    else
        throw ConfigError("unknown injector '" + injector + "'");
    config.injector.grid_delta = pd(p, "grid_delta", 0.1);
    return config;
}

void write_avi_outputs(const fs::path& outdir, const Mdp& mdp, const AviConfig& config,
                       const AviResult& result) {
    write_trace_file(outdir / "trace.csv", result.trace);
    write_trace_file(outdir / "partner.csv", result.partner_trace);
    std::vector<std::vector<double>> plot;
    const std::size_t count = result.trace.iterates.size();
    const std::size_t stride = std::max<std::size_t>(1, count / 2000);
    for (std::size_t n = 0; n < count; n += stride) {
        const Vec& j = result.trace.iterates[n];
        plot.push_back({static_cast<double>(n), result.trace.times[n],
                        norm_dist(config.error_norm, bellman(mdp, j), j),
                        norm_dist(config.error_norm, j, result.j_star),
                        result.gap_report.gaps[n]});
    }
    write_plot_csv(outdir / "plot.csv", {"t", "residual", "distance", "gap"}, plot);

    nlohmann::json gap;
    gap["N"] = result.gap_report.last_projection_index;
    gap["sup_gap"] = result.gap_report.sup_gap_after_N;
    gap["per_iterate_gap_file"] = "plot.csv";
    write_text(outdir / "gap_report.json", gap.dump(2) + "\n");
}

void exp_avi(const ExperimentConfig& config, const fs::path& outdir, SummaryRecord& summary,
             bool ssp, bool pnorm) {
    const auto& p = config.params;
    const Mdp mdp = resolve_mdp(p, ssp ? shipped_mdp_ssp() : shipped_mdp_3state());
    AviConfig avi = avi_config_from_params(p, mdp, config.seed);
    if (pnorm && !p.contains("error_norm"))
        avi.error_norm = NormSpec::weighted_p(ones(mdp.n_states()), pd(p, "p", 2.0));

    const AviResult result = run_avi(mdp, avi);
    write_avi_outputs(outdir, mdp, avi, result);

    const double eps_nu = avi.error_norm.kind == NormKind::WeightedP
                              ? avi.epsilon / avi.contraction_norm.min_weight()
                              : avi.epsilon;
    const GapCheckResult gap = gap_recursion_check(result, result.alpha, eps_nu);

    const double residual_budget = pd(p, "residual_budget", 0.05);
    const double distance_budget = pd(p, "distance_budget", 0.05);
    summary.metrics["residual"] = result.residual;
    summary.metrics["distance"] = result.distance;
    summary.metrics["alpha"] = result.alpha;
    summary.metrics["certificate"] = result.certificate;
    summary.metrics["sup_gap_after_N"] = result.gap_report.sup_gap_after_N;
    summary.metrics["gap_case1"] = static_cast<double>(gap.case1);
    summary.metrics["gap_case2"] = static_cast<double>(gap.case2);
    summary.checks["residual_within_budget"] = result.residual <= avi.epsilon + residual_budget;
    summary.checks["distance_within_budget"] =
        result.distance <= avi.epsilon / (1.0 - result.alpha) + distance_budget;
    summary.checks["gap_recursion"] = gap.recursion_ok;
    summary.checks["gap_closed_form"] = gap.closed_form_ok;
    summary.checks["certificate_contractive"] = result.certificate < 1.0;
    summary.checks["not_diverged"] = !result.trace.diverged;
}

void exp_epsilon_sweep(const ExperimentConfig& config, const fs::path& outdir,
                       SummaryRecord& summary) {
    const auto& p = config.params;
    const Mdp mdp = resolve_mdp(p, shipped_mdp_3state());
    AviConfig base = avi_config_from_params(p, mdp, config.seed);
    const std::vector<double> epsilons =
        p.contains("epsilons") ? p["epsilons"].get<std::vector<double>>()
                               : std::vector<double>{0.5, 0.1, 0.02};
    const double slack = pd(p, "monotone_slack", 0.02);
    const double residual_budget = pd(p, "residual_budget", 0.05);

    const auto rows = epsilon_sweep(mdp, base, epsilons);
    std::ostringstream os;
    os << "epsilon,residual,distance\n";
    for (const auto& row : rows)
        os << fmt_g17(row.epsilon) << ',' << fmt_g17(row.residual) << ','
           << fmt_g17(row.distance) << "\n";
    write_text(outdir / "sweep.csv", os.str());

    bool monotone = true, residual_ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        summary.metrics["residual_" + std::to_string(i)] = rows[i].residual;
        summary.metrics["distance_" + std::to_string(i)] = rows[i].distance;
        if (i > 0) monotone = monotone && rows[i].distance <= rows[i - 1].distance + slack;
        residual_ok = residual_ok && rows[i].residual <= rows[i].epsilon + residual_budget;
    }
    summary.checks["distance_monotone"] = monotone;
    summary.checks["residual_rowwise"] = residual_ok;
}

void exp_fixed_point(const ExperimentConfig& config, const fs::path& outdir,
                     SummaryRecord& summary) {
    const auto& p = config.params;
    ContractiveSetMap map = p.contains("map")
                                ? (p["map"].is_string()
                                       ? ContractiveSetMap::load(p["map"].get<std::string>())
                                       : ContractiveSetMap::from_json(p["map"]))
                                : shipped_fp_affine();
    const std::size_t n_iter = pi(p, "n_iter", 100000);
    const Vec x0 = p.contains("x0") ? p["x0"].get<Vec>() : Vec{1.0, 1.0};
    const NoiseModel noise =
        p.contains("noise") ? noise_from_json(p["noise"]) : NoiseModel::bounded_iid(0.1);
    const StepSchedule schedule = p.contains("schedule") ? schedule_from_json(p["schedule"])
                                                         : StepSchedule::harmonic(pd(p, "a0", 1.0));

    const FpResult result = run_fixed_point(map, x0, schedule, noise,
                                            SelectionStrategy::uniform(), n_iter, config.seed);
    write_trace_file(outdir / "trace.csv", result.trace);
    write_trace_file(outdir / "partner.csv", result.partner_trace);

    std::vector<std::vector<double>> plot;
    const std::size_t stride = std::max<std::size_t>(1, result.trace.iterates.size() / 2000);
    for (std::size_t n = 0; n < result.trace.iterates.size(); n += stride)
        plot.push_back({static_cast<double>(n), result.trace.times[n],
                        metric_dist(map.metric, result.trace.iterates[n], result.base_fixed_point),
                        result.gap_report.gaps[n]});
    write_plot_csv(outdir / "plot.csv", {"t", "dist_to_base_fp", "gap"}, plot);

    const FpGapCheck gap = fp_gap_bound_check(result, map.alpha, map.diameter);
    summary.metrics["residual"] = result.residual;
    summary.metrics["sup_gap_after_N"] = result.gap_report.sup_gap_after_N;
    summary.metrics["gap_bound"] = 2.0 * map.diameter / (1.0 - map.alpha);
    summary.checks["residual_within_budget"] = result.residual <= pd(p, "residual_budget", 0.05);
    summary.checks["gap_recursion"] = gap.recursion_ok;
    summary.checks["gap_closed_form"] = gap.closed_form_ok;
    summary.checks["not_diverged"] = !result.trace.diverged;
}

void exp_note_lemma(const ExperimentConfig& config, const fs::path& outdir,
                    SummaryRecord& summary) {
    const auto& p = config.params;
    const ContractiveSetMap map = shipped_stage_map();
    const std::size_t n_iter = pi(p, "n_iter", 100000);
    const Vec x0 = p.contains("x0") ? p["x0"].get<Vec>() : Vec{0.2, 0.0};
    const Vec x0_partner = p.contains("x0_partner") ? p["x0_partner"].get<Vec>() : Vec{3.0, 3.0};
    const InwardSetPair pair =
        InwardSetPair::balls(zeros(2), pd(p, "r_b", 0.5), pd(p, "r_c", 1.0), NormSpec::euclidean());
    const NoiseModel xi =
        p.contains("noise") ? noise_from_json(p["noise"]) : NoiseModel::bounded_iid(0.1);

    const StageMapRun run = run_stage_maps(map, x0, x0_partner, xi, pair, n_iter, config.seed);
    const GenericBoundednessResult result =
        generic_boundedness_check(run, map.metric, map.alpha, map.diameter);

    std::vector<std::vector<double>> plot;
    const std::size_t stride = std::max<std::size_t>(1, run.free_iterates.size() / 2000);
    for (std::size_t n = 0; n < run.free_iterates.size(); n += stride)
        plot.push_back({static_cast<double>(n), static_cast<double>(n),
                        metric_dist(map.metric, run.free_iterates[n], run.partner_iterates[n])});
    write_plot_csv(outdir / "plot.csv", {"stage", "gap"}, plot);

    summary.metrics["sup_gap"] = result.sup_gap;
    summary.metrics["bound"] = result.bound;
    summary.metrics["last_correction"] = static_cast<double>(result.last_correction);
    summary.checks["bounded"] = result.ok;
}

void exp_lyapunov_build(const ExperimentConfig& config, const fs::path& outdir,
                        SummaryRecord& summary) {
    const auto& p = config.params;
    const double h = pd(p, "h", 1e-3);
    const double horizon = pd(p, "horizon", 10.0);
    const std::size_t grid_n = pi(p, "grid_points", 100);

    SetValuedMap map(1, [](const Vec& x) { return scale(-1.0, x); });
    const LyapunovEstimate est =
        lyapunov_build(map, FiniteSet(std::vector<Vec>{{0.0}}), pd(p, "c", 1.0), pd(p, "d_g", 2.0), horizon, h);

    std::vector<Vec> grid_points;
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double x = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(grid_n - 1);
        grid_points.push_back({x});
    }
    const FiniteSet grid(grid_points);
    {
        std::ostringstream os;
        write_grid_csv(est, grid, os);
        write_text(outdir / "lyapunov.csv", os.str());
    }

    double max_err = 0.0;
    for (const Vec& x : grid.points) max_err = std::max(max_err, std::abs(est.value(x) - std::abs(x[0])));

    // decrease along trajectories, checked at a few departure points and times
    bool decrease_ok = true;
    std::mt19937_64 rng(0);
    for (double x : {-1.5, -0.7, 0.4, 1.1, 1.9}) {
        const double vx = est.value({x});
        Trajectory traj =
            euler_solve(map, {x}, h, 2.0, SelectionStrategy::center(), rng);
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            const auto k = static_cast<std::size_t>(std::round(t / h));
            if (k >= traj.states.size()) continue;
            decrease_ok = decrease_ok && vx > est.value(traj.states[k]);
        }
    }

    summary.metrics["max_abs_error"] = max_err;
    summary.checks["matches_abs"] = max_err <= pd(p, "tolerance", 1e-3);
    summary.checks["decrease"] = decrease_ok;
}

void exp_inward_check(const ExperimentConfig& config, const fs::path& outdir,
                      SummaryRecord& summary) {
    const auto& p = config.params;
    const std::size_t n_boundary = pi(p, "n_boundary", 64);
    const double h = pd(p, "h", 1e-3);
    const double horizon = pd(p, "horizon", 5.0);
    const double radius = pd(p, "radius", 0.1);

    const InwardSetPair pair =
        InwardSetPair::balls(zeros(2), pd(p, "r_b", 1.0), pd(p, "r_c", 2.0), NormSpec::euclidean());
    SetValuedMap contracting(2, [](const Vec& x) { return scale(-1.0, x); },
                             BallPerturbation{radius, NormSpec::euclidean()});
    SetValuedMap expanding(2, [](const Vec& x) { return x; });

    std::mt19937_64 rng = make_rng(config.seed);
    const InwardCheckResult pos = inward_check(pair, contracting, n_boundary, h, horizon, rng);
    std::mt19937_64 rng_neg = make_rng(config.seed + 1);
    const InwardCheckResult neg = inward_check(pair, expanding, n_boundary, h, horizon, rng_neg);

    nlohmann::json report;
    report["inward"] = pos.inward;
    report["worst_excess"] = pos.worst_excess;
    report["negative_control_inward"] = neg.inward;
    if (neg.counterexample) report["negative_control_witness"] = *neg.counterexample;
    write_text(outdir / "inward.json", report.dump(2) + "\n");

    summary.metrics["worst_excess"] = pos.worst_excess;
    summary.checks["inward"] = pos.inward;
    summary.checks["negative_control_rejected"] = !neg.inward && neg.counterexample.has_value();
}

void exp_noise_window(const ExperimentConfig& config, const fs::path& outdir,
                      SummaryRecord& summary) {
    const auto& p = config.params;
    const std::size_t n_iter = pi(p, "n_iter", 300000);
    const double noise_D = pd(p, "noise_D", 0.2);
    const double T = pd(p, "T", 1.0);
    const std::size_t k_begin = pi(p, "k_begin", 10000);
    const std::size_t k_end = pi(p, "k_end", 100000);

    SetValuedMap map(2, [](const Vec& x) { return zeros(x.size()); });
    RunTrace trace =
        run_saa(map, zeros(2), StepSchedule::harmonic(pd(p, "a0", 1.0)),
                NoiseModel::bounded_iid(noise_D), SelectionStrategy::center(), n_iter,
                config.seed);
    const NoiseWindowResult result = noise_window_check(trace, T, k_begin, k_end);

    std::vector<std::vector<double>> plot;
    const std::size_t stride = std::max<std::size_t>(1, trace.iterates.size() / 2000);
    for (std::size_t n = 0; n < trace.iterates.size(); n += stride)
        plot.push_back({static_cast<double>(n), trace.times[n], norm2(trace.iterates[n])});
    write_plot_csv(outdir / "plot.csv", {"t", "norm_x"}, plot);

    summary.metrics["max_window_sum"] = result.max_window_norm;
    summary.metrics["argmax_k"] = static_cast<double>(result.argmax_k);
    summary.checks["within_budget"] = result.max_window_norm <= pd(p, "budget", 0.05);
    summary.checks["complete_windows"] = !result.partial_window_warning;
}

} // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
    static const std::vector<ExperimentInfo> registry = {
        {"saa-demo", "contracting mean-field with a uniform selection, plain iterate", true},
        {"projective-demo", "expanding mean-field under the projective scheme; separation scan",
         true},
        {"avi-discounted", "stochastic iterative AVI on the shipped discounted MDP", true},
        {"avi-ssp", "stochastic iterative AVI on the shipped stochastic shortest path MDP", true},
        {"avi-pnorm", "AVI with approximation errors bounded in a weighted p-norm", true},
        {"epsilon-sweep", "AVI limiting-set shrinkage as the error bound decreases", true},
        {"fixed-point", "stochastic fixed-point iteration for a contractive set-valued map", true},
        {"note-lemma", "stage-map boundedness bound against the projected partner", true},
        {"lyapunov-build", "numerical Lyapunov construction for dx/dt = -x", false},
        {"inward-check", "inward-directing verification with a negative control", true},
        {"noise-window", "partial noise-window sums over a long bounded-noise run", true},
    };
    return registry;
}

std::string resolve_output_root() {
    if (const char* env = std::getenv("SVSA_OUT"); env && *env) return env;
    return "out";
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    if (!j.contains("id") || !j["id"].is_string())
        throw ConfigError("config requires a string 'id'");
    config.id = j["id"].get<std::string>();
    const auto& registry = experiment_registry();
    const auto it = std::find_if(registry.begin(), registry.end(),
                                 [&](const ExperimentInfo& e) { return e.id == config.id; });
    if (it == registry.end()) throw ConfigError("unknown experiment id '" + config.id + "'");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("seed must be an integer");
        config.seed = j["seed"].get<std::uint64_t>();
        config.seed_set = true;
    }
    if (it->stochastic && !config.seed_set)
        throw ConfigError("experiment '" + config.id + "' is stochastic and requires a seed");
    config.outdir = j.value("outdir", std::string());
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("params must be a table");
        config.params = j["params"];
    }
    return config;
}

ExperimentConfig ExperimentConfig::from_toml_file(const std::string& path) {
    try {
        return from_json(toml_lite_parse_file(path));
    } catch (const TomlParseError& e) {
        throw ConfigError(e.what());
    }
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    if (seed_set) j["seed"] = seed;
    if (!outdir.empty()) j["outdir"] = outdir;
    j["params"] = params;
    return j;
}

std::string ExperimentConfig::hash() const {
    nlohmann::json j;
    j["id"] = id;
    j["seed"] = seed;
    j["params"] = params;
    return fnv1a_hex(j.dump());
}

nlohmann::json SummaryRecord::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["metrics"] = metrics;
    j["checks"] = checks;
    j["wall_time_s"] = wall_time_s;
    return j;
}

bool SummaryRecord::all_checks_pass() const {
    for (const auto& [name, ok] : checks)
        if (!ok) return false;
    return true;
}

SummaryRecord run_experiment(const ExperimentConfig& config) {
    // re-validate so programmatically built configs get the same gate
    ExperimentConfig validated = ExperimentConfig::from_json(config.to_json());

    const fs::path outdir = validated.outdir.empty()
                                ? fs::path(resolve_output_root()) / validated.id
                                : fs::path(validated.outdir);
    fs::create_directories(outdir);

    SummaryRecord summary;
    summary.id = validated.id;
    summary.seed = validated.seed;
    summary.config_hash = validated.hash();

    const auto t0 = std::chrono::steady_clock::now();
    if (validated.id == "saa-demo")
        exp_saa_demo(validated, outdir, summary);
    else if (validated.id == "projective-demo")
        exp_projective_demo(validated, outdir, summary);
    else if (validated.id == "avi-discounted")
        exp_avi(validated, outdir, summary, false, false);
    else if (validated.id == "avi-ssp")
        exp_avi(validated, outdir, summary, true, false);
    else if (validated.id == "avi-pnorm")
        exp_avi(validated, outdir, summary, false, true);
    else if (validated.id == "epsilon-sweep")
        exp_epsilon_sweep(validated, outdir, summary);
    else if (validated.id == "fixed-point")
        exp_fixed_point(validated, outdir, summary);
    else if (validated.id == "note-lemma")
        exp_note_lemma(validated, outdir, summary);
    else if (validated.id == "lyapunov-build")
        exp_lyapunov_build(validated, outdir, summary);
    else if (validated.id == "inward-check")
        exp_inward_check(validated, outdir, summary);
    else if (validated.id == "noise-window")
        exp_noise_window(validated, outdir, summary);
    else
        throw ConfigError("unknown experiment id '" + validated.id + "'");
    const auto t1 = std::chrono::steady_clock::now();
    summary.wall_time_s = std::chrono::duration<double>(t1 - t0).count();

    write_text(outdir / "config.json", validated.to_json().dump(2) + "\n");
    write_text(outdir / "summary.json", summary.to_json().dump(2) + "\n");
    return summary;
}

std::vector<SummaryRecord> run_sweep(const ExperimentConfig& base, std::uint64_t seed_begin,
                                     std::uint64_t seed_end, unsigned jobs) {
    if (seed_end < seed_begin) throw ConfigError("sweep: empty seed range");
    const std::size_t count = static_cast<std::size_t>(seed_end - seed_begin) + 1;
    std::vector<SummaryRecord> results(count);
    std::vector<ExperimentConfig> configs(count, base);
    const fs::path root = base.outdir.empty()
                              ? fs::path(resolve_output_root()) / base.id
                              : fs::path(base.outdir);
    for (std::size_t i = 0; i < count; ++i) {
        configs[i].seed = seed_begin + i;
        configs[i].seed_set = true;
        configs[i].outdir = (root / ("seed-" + std::to_string(configs[i].seed))).string();
    }
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = run_experiment(configs[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(count);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = run_experiment(configs[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

} // namespace svsa
