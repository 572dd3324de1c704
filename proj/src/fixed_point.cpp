#include "svsa/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "svsa/json_support.hpp"

namespace svsa {

Vec AffineMap::apply(const Vec& x) const {
    Vec y = b;
    for (std::size_t i = 0; i < A.size(); ++i) y[i] += dot(A[i], x);
    return y;
}

namespace {

// Gaussian elimination with partial pivoting; the systems here are tiny.
Vec solve_linear(std::vector<Vec> m, Vec rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < 1e-14)
            throw std::runtime_error("solve_linear: singular system");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * x[c];
        x[i] = s / m[i][i];
    }
    return x;
}

} // namespace

Vec AffineMap::fixed_point() const {
    const std::size_t n = b.size();
    std::vector<Vec> m(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < n; ++c) m[i][c] = (i == c ? 1.0 : 0.0) - A[i][c];
    }
    return solve_linear(std::move(m), b);
}

Vec ContractiveSetMap::base_fixed_point() const {
    if (affine) return affine->fixed_point();
    Vec x = zeros(map.dim());
    for (int it = 0; it < 200000; ++it) {
        Vec next = map.base(x);
        const double moved = metric_dist(metric, next, x);
        x = std::move(next);
        if (moved <= 1e-13) return x;
    }
    throw std::runtime_error("ContractiveSetMap: base fixed-point iteration did not converge");
}

ContractiveSetMap ContractiveSetMap::from_json(const nlohmann::json& j) {
    const auto& base = j.at("base");
    if (base.at("kind").get<std::string>() != "affine")
        throw std::invalid_argument("ContractiveSetMap: only affine bases load from JSON");
    AffineMap aff;
    aff.A = base.at("A").get<std::vector<Vec>>();
    aff.b = base.at("b").get<Vec>();
    const std::size_t d = aff.b.size();
    for (const Vec& row : aff.A) require_dim(row, d, "ContractiveSetMap A row");

    MetricSpec metric = MetricSpec::from_norm(norm_from_json(j.at("metric")));

    Perturbation pert = NoPerturbation{};
    if (j.contains("offsets")) {
        const auto& off = j.at("offsets");
        const std::string kind = off.at("kind").get<std::string>();
        if (kind == "ball")
            pert = BallPerturbation{off.at("radius").get<double>(), metric.norm};
        else if (kind == "list")
            pert = OffsetListPerturbation{off.at("points").get<std::vector<Vec>>()};
        else if (kind != "none")
            throw std::invalid_argument("ContractiveSetMap: unknown offsets kind");
    }

    ContractiveSetMap m{
        SetValuedMap(d, [aff](const Vec& x) { return aff.apply(x); }, std::move(pert)),
        std::move(metric), j.at("alpha").get<double>(), j.at("D").get<double>(), aff};
    if (!(m.alpha > 0.0 && m.alpha < 1.0))
        throw std::invalid_argument("ContractiveSetMap: alpha must be in (0,1)");
    if (m.diameter < 0.0) throw std::invalid_argument("ContractiveSetMap: D must be >= 0");
    return m;
}

nlohmann::json ContractiveSetMap::to_json() const {
    nlohmann::json j;
    if (!affine) throw std::runtime_error("ContractiveSetMap: only affine bases serialize");
    j["base"] = {{"kind", "affine"}, {"A", affine->A}, {"b", affine->b}};
    j["metric"] = norm_to_json(metric.norm);
    if (const auto* ball = std::get_if<BallPerturbation>(&map.perturbation()))
        j["offsets"] = {{"kind", "ball"}, {"radius", ball->radius}};
    else if (const auto* list = std::get_if<OffsetListPerturbation>(&map.perturbation()))
        j["offsets"] = {{"kind", "list"}, {"points", list->offsets}};
    else
        j["offsets"] = {{"kind", "none"}};
    j["alpha"] = alpha;
    j["D"] = diameter;
    return j;
}

ContractiveSetMap ContractiveSetMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ContractiveSetMap::load: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

namespace {

double offsets_diameter(const SetValuedMap& map, const MetricSpec& metric) {
    if (const auto* ball = std::get_if<BallPerturbation>(&map.perturbation()))
        return 2.0 * ball->radius;
    if (const auto* list = std::get_if<OffsetListPerturbation>(&map.perturbation())) {
        double d = 0.0;
        for (std::size_t i = 0; i < list->offsets.size(); ++i)
            for (std::size_t k = i + 1; k < list->offsets.size(); ++k)
                d = std::max(d, metric_dist(metric, list->offsets[i], list->offsets[k]));
        return d;
    }
    return 0.0;
}

// rho-distance from q to the value set F(x) + offsets.
double rho_membership_distance(const ContractiveSetMap& m, const Vec& x, const Vec& q) {
    const Vec f = m.map.base(x);
    if (const auto* ball = std::get_if<BallPerturbation>(&m.map.perturbation()))
        return std::max(0.0, metric_dist(m.metric, q, f) - ball->radius);
    if (const auto* list = std::get_if<OffsetListPerturbation>(&m.map.perturbation())) {
        if (list->offsets.size() == 2) {
            // convex in the segment parameter; golden-section search
            const Vec& p0 = list->offsets[0];
            const Vec& p1 = list->offsets[1];
            auto value = [&](double t) {
                return metric_dist(m.metric, q, add(f, axpy(p0, t, sub(p1, p0))));
            };
            double lo = 0.0, hi = 1.0;
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
            double v1 = value(m1), v2 = value(m2);
            for (int it = 0; it < 200; ++it) {
                if (v1 <= v2) {
                    hi = m2;
                    m2 = m1;
                    v2 = v1;
                    m1 = hi - phi * (hi - lo);
                    v1 = value(m1);
                } else {
                    lo = m1;
                    m1 = m2;
                    v1 = v2;
                    m2 = lo + phi * (hi - lo);
                    v2 = value(m2);
                }
            }
            return std::min(v1, v2);
        }
        // vertex-and-centroid screen for larger lists
        double best = metric_dist(m.metric, q, add(f, m.map.center_offset()));
        for (const Vec& o : list->offsets)
            best = std::min(best, metric_dist(m.metric, q, add(f, o)));
        return best;
    }
    return metric_dist(m.metric, q, f);
}

} // namespace

CertifyReport certify_map(const ContractiveSetMap& m, std::size_t n_pairs, const FiniteSet& grid,
                          std::uint64_t seed, bool probe_attractor) {
    CertifyReport report;
    std::mt19937_64 rng = make_rng(seed);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const std::size_t d = m.map.dim();

    for (std::size_t k = 0; k < n_pairs; ++k) {
        Vec x(d), y(d);
        for (double& v : x) v = u(rng);
        for (double& v : y) v = u(rng);
        const double denom = metric_dist(m.metric, x, y);
        if (denom == 0.0) continue;
        // values are common-offset translates, so the Hausdorff distance
        // reduces to the base-point distance
        const double ratio = metric_dist(m.metric, m.map.base(x), m.map.base(y)) / denom;
        if (ratio > report.max_contraction_ratio) {
            report.max_contraction_ratio = ratio;
            report.ratio_witness = {x, y};
        }
        const double dom_excess = dist2(x, y) - m.metric.dominance_constant * denom;
        report.max_dominance_excess = std::max(report.max_dominance_excess, dom_excess);
    }
    const double diam = offsets_diameter(m.map, m.metric);
    for (std::size_t i = 0; i < grid.size(); ++i) report.max_diameter = std::max(report.max_diameter, diam);

    report.contraction_ok = report.max_contraction_ratio <= m.alpha + 1e-12;
    report.diameter_ok = report.max_diameter <= m.diameter + 1e-12;
    report.dominance_ok = report.max_dominance_excess <= 1e-9;
    report.attractor_note =
        "global attractor hypothesis declared by the map spec, not numerically provable";
    report.pass = report.contraction_ok && report.diameter_ok && report.dominance_ok;

    if (probe_attractor) {
        report.attractor_probe_ran = true;
        SetValuedMap shifted(
            d, [&m](const Vec& x) { return sub(m.map.base(x), x); }, m.map.perturbation());
        for (int s = 0; s < 8; ++s) {
            Vec start(d);
            for (double& v : start) v = u(rng);
            std::mt19937_64 traj_rng(rng());
            Trajectory traj = euler_solve(shifted, start, 1e-2, 20.0,
                                          SelectionStrategy::center(), traj_rng);
            report.attractor_probe_worst =
                std::max(report.attractor_probe_worst,
                         rho_membership_distance(m, traj.final_state(), traj.final_state()));
        }
    }
    return report;
}

FpResult run_fixed_point(const ContractiveSetMap& m, const Vec& x0, const StepSchedule& schedule,
                         const NoiseModel& noise, const SelectionStrategy& strategy,
                         std::size_t n_iter, std::uint64_t seed, const FpOptions& opts) {
    const std::size_t d = m.map.dim();
    require_dim(x0, d, "run_fixed_point x0");
    {
        const FiniteSet grid({zeros(d)});
        const CertifyReport cert = certify_map(m, opts.certify_pairs, grid, seed ^ 0xabcdefull);
        if (!cert.pass)
            throw std::runtime_error("run_fixed_point: map certificate failed");
    }

    FpResult result;
    result.alpha = m.alpha;
    result.diameter = m.diameter;
    result.metric = m.metric;
    result.base_fixed_point = m.base_fixed_point();

    const double unit = std::max(m.diameter, opts.partner_diameter_floor) / (1.0 - m.alpha);
    const InwardSetPair pair =
        InwardSetPair::balls(result.base_fixed_point, opts.partner_inner_factor * unit,
                             opts.partner_outer_factor * unit, m.metric.norm);

    // mean-field of the fixed-point iteration: y_n in T x_n - x_n
    SetValuedMap shifted(
        d, [base = m.map](const Vec& x) { return sub(base.base(x), x); }, m.map.perturbation());

    CoupledResult coupled =
        coupled_run(shifted, x0, schedule, noise, strategy, pair, n_iter, seed, m.metric.norm);
    result.trace = std::move(coupled.free_trace);
    result.partner_trace = std::move(coupled.partner_trace);
    result.gap_report = std::move(coupled.report);

    result.x_bar = result.trace.tail_average(opts.tail_fraction);
    result.residual = rho_membership_distance(m, result.x_bar, result.x_bar);
    return result;
}

FpGapCheck fp_gap_bound_check(const FpResult& result, double alpha, double D) {
    const RunTrace& free_trace = result.trace;
    const RunTrace& partner = result.partner_trace;
    if (free_trace.n_steps() == 0 || free_trace.n_steps() != partner.n_steps())
        throw std::invalid_argument("fp_gap_bound_check: coupled traces required");
    constexpr double kSlack = 1e-10;
    const NormSpec& norm = result.metric.norm;

    FpGapCheck check;
    check.recursion_ok = true;
    for (std::size_t n = 0; n < free_trace.n_steps(); ++n) {
        const double a = free_trace.steps[n];
        const double gap = norm_dist(norm, free_trace.iterates[n], partner.iterates[n]);
        const Vec pre = sub(partner.iterates[n + 1], partner.corrections[n]);
        const double lhs = norm_dist(norm, free_trace.iterates[n + 1], pre);
        const double rhs = (1.0 - a) * gap + a * (2.0 * D + alpha * gap);
        check.worst_recursion_slack = std::max(check.worst_recursion_slack, lhs - rhs);
        if (lhs > rhs + kSlack) check.recursion_ok = false;
        if (2.0 * D <= (1.0 - alpha) * gap)
            ++check.case1;
        else
            ++check.case2;
    }

    const auto events = partner.projection_indices();
    const std::size_t first_clean = events.empty() ? 0 : events.back() + 1;
    const double gap_N =
        norm_dist(norm, free_trace.iterates[first_clean], partner.iterates[first_clean]);
    const double bound = std::max(2.0 * D / (1.0 - alpha), gap_N);
    check.closed_form_ok = true;
    for (std::size_t n = first_clean; n < free_trace.iterates.size(); ++n) {
        const double gap = norm_dist(norm, free_trace.iterates[n], partner.iterates[n]);
        check.worst_closed_form_slack = std::max(check.worst_closed_form_slack, gap - bound);
        if (gap > bound + kSlack) check.closed_form_ok = false;
    }
    check.ok = check.recursion_ok && check.closed_form_ok;
    return check;
}

StageMapRun run_stage_maps(const ContractiveSetMap& m, const Vec& x0, const Vec& x0_partner,
                           const NoiseModel& xi, const InwardSetPair& pair, std::size_t n_iter,
                           std::uint64_t seed) {
    const std::size_t d = m.map.dim();
    require_dim(x0, d, "run_stage_maps x0");
    require_dim(x0_partner, d, "run_stage_maps x0_partner");
    std::mt19937_64 rng = make_rng(seed);

    StageMapRun run;
    run.free_iterates.push_back(x0);
    run.partner_iterates.push_back(x0_partner);
    Vec x = x0, xt = x0_partner;
    for (std::size_t n = 0; n < n_iter; ++n) {
        const Vec u = m.map.draw_offset(rng);
        const Vec noise = xi.draw(x, rng);
        const Vec projected = pair.project(xt);
        if (dist2(projected, xt) > 0.0) run.correction_indices.push_back(n);
        Vec next = add(add(m.map.base(x), noise), u);
        Vec next_partner = add(add(m.map.base(projected), noise), u);
        x = std::move(next);
        xt = std::move(next_partner);
        run.free_iterates.push_back(x);
        run.partner_iterates.push_back(xt);
    }
    return run;
}

GenericBoundednessResult generic_boundedness_check(const StageMapRun& run,
                                                   const MetricSpec& metric, double alpha,
                                                   double D) {
    GenericBoundednessResult result;
    result.last_correction =
        run.correction_indices.empty() ? 0 : run.correction_indices.back();
    const std::size_t N = result.last_correction;
    result.bound = 2.0 * D / (1.0 - alpha) +
                   metric_dist(metric, run.free_iterates[N], run.partner_iterates[N]);
    for (std::size_t n = N + 1; n < run.free_iterates.size(); ++n)
        result.sup_gap = std::max(
            result.sup_gap, metric_dist(metric, run.free_iterates[n], run.partner_iterates[n]));
    result.ok = result.sup_gap <= result.bound + 1e-10;
    return result;
}

} // namespace svsa
