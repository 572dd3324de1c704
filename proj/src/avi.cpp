#include "svsa/avi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svsa {

namespace {

Vec fixed_bias_vector(const AviConfig& config, std::size_t d) {
    Vec dir = config.injector.direction;
    if (dir.empty()) dir = unit(d, 0);
    require_dim(dir, d, "ErrorInjector direction");
    const double n = norm_eval(config.error_norm, dir);
    if (config.epsilon == 0.0) return zeros(d);
    if (n == 0.0) throw std::invalid_argument("ErrorInjector: zero direction");
    return scale(config.epsilon / n, dir);
}

Vec rounding_error(const AviConfig& config, const Vec& tj) {
    const double delta = config.injector.grid_delta;
    Vec err(tj.size());
    for (std::size_t i = 0; i < tj.size(); ++i)
        err[i] = std::round(tj[i] / delta) * delta - tj[i];
    const double n = norm_eval(config.error_norm, err);
    if (n > config.epsilon) err = scale(config.epsilon / n, err); // rescale to respect eps
    return err;
}

void assert_error_bound(const AviConfig& config, const Vec& err) {
    const double n = norm_eval(config.error_norm, err);
    if (n > config.epsilon + 1e-12)
        throw std::logic_error("run_avi: injected error exceeds its norm bound");
    if (config.error_norm.kind == NormKind::WeightedP) {
        // norm bridge: an (omega,p)-bounded error is nu-bounded by eps/nu_min
        const double nu_min = config.contraction_norm.min_weight();
        if (norm_eval(config.contraction_norm, err) > config.epsilon / nu_min + 1e-12)
            throw std::logic_error("run_avi: injected error violates the norm bridge");
    }
}

} // namespace

AviResult run_avi(const Mdp& mdp, const AviConfig& config) {
    mdp.validate();
    const std::size_t d = mdp.n_states();
    if (config.epsilon < 0.0) throw std::invalid_argument("run_avi: epsilon must be >= 0");
    if (config.contraction_norm.kind != NormKind::WeightedMax ||
        config.contraction_norm.dim() != d)
        throw std::invalid_argument("run_avi: contraction norm must be a weighted max-norm on "
                                    "the state space");
    if (config.error_norm.kind == NormKind::Euclidean)
        throw std::invalid_argument("run_avi: error norm must carry weights");
    if (config.error_norm.dim() != d)
        throw std::invalid_argument("run_avi: error norm dimension mismatch");
    if (config.error_norm.kind == NormKind::WeightedP)
        for (double w : config.error_norm.weights)
            if (w < 1.0)
                throw std::invalid_argument("run_avi: weighted-p error weights must be >= 1 for "
                                            "the norm bridge to hold");
    const ScheduleVerdict verdict = validate_schedule(config.schedule);
    if (verdict.status == ScheduleVerdict::Status::Fail)
        throw std::invalid_argument("run_avi: schedule fails validation: " + verdict.reason);

    AviResult result;
    result.epsilon = config.epsilon;
    result.certificate =
        contraction_certificate(mdp, config.contraction_norm, config.certificate_pairs,
                                config.seed ^ 0x9e3779b97f4a7c15ull);
    if (result.certificate >= 1.0)
        throw std::runtime_error("run_avi: contraction certificate failed (ratio >= 1)");
    result.alpha = config.declared_alpha > 0.0
                       ? config.declared_alpha
                       : (mdp.mode == Mdp::Mode::Discounted ? mdp.gamma : result.certificate);

    const ViResult vi = exact_vi(mdp, config.vi_tol, config.contraction_norm);
    if (!vi.converged) throw std::runtime_error("run_avi: exact VI did not converge");
    result.j_star = vi.J;

    // projective partner sets: contraction-norm balls around J*
    const double eps_eff = std::max(config.epsilon, config.partner_epsilon_floor);
    const double unit_radius = eps_eff / (1.0 - result.alpha);
    const InwardSetPair pair =
        InwardSetPair::balls(result.j_star, config.partner_inner_factor * unit_radius,
                             config.partner_outer_factor * unit_radius, config.contraction_norm);

    Vec j = config.j0.empty() ? zeros(d) : config.j0;
    require_dim(j, d, "run_avi j0");
    Vec jp = pair.project(j);

    RunTrace& trace = result.trace;
    RunTrace& partner = result.partner_trace;
    trace.iterates.push_back(j);
    trace.times.push_back(0.0);
    partner.iterates.push_back(jp);
    partner.times.push_back(0.0);
    result.gap_report.gaps.push_back(norm_dist(config.contraction_norm, j, jp));

    std::mt19937_64 rng = make_rng(config.seed);
    const Vec bias = fixed_bias_vector(config, d);
    const SetValuedMap error_ball(
        d, [](const Vec& x) { return x; },
        config.epsilon > 0.0 ? Perturbation(BallPerturbation{config.epsilon, config.error_norm})
                             : Perturbation(NoPerturbation{}));

    for (std::size_t n = 0; n < config.n_iter; ++n) {
        const double a = config.schedule.at(n);
        const Vec tj = bellman(mdp, j);
        const Vec tjp = bellman(mdp, jp);

        Vec err, errp;
        switch (config.injector.kind) {
        case ErrorInjector::Kind::FixedBias:
            err = bias;
            errp = bias;
            break;
        case ErrorInjector::Kind::UniformBall: {
            // shared draw, the strongest coupling
            err = error_ball.draw_offset(rng);
            errp = err;
            break;
        }
        case ErrorInjector::Kind::RoundingGrid:
            err = rounding_error(config, tj);
            errp = rounding_error(config, tjp);
            break;
        }
        assert_error_bound(config, err);
        assert_error_bound(config, errp);

        const Vec m = config.noise.draw(j, rng);

        // y_n = T J_n - J_n + eps_n is a selection of the perturbed mean-field
        Vec y = add(sub(tj, j), err);
        Vec yp = add(sub(tjp, jp), errp);
        Vec next = j;
        axpy_inplace(next, a, y);
        axpy_inplace(next, a, m);
        Vec pre = jp;
        axpy_inplace(pre, a, yp);
        axpy_inplace(pre, a, m);
        if (!all_finite(next) || norm2(next) > kDivergenceSentinel || !all_finite(pre) ||
            norm2(pre) > kDivergenceSentinel) {
            trace.diverged = true;
            trace.diverged_index = n;
            break;
        }
        Vec z = pair.project(pre);

        trace.selections.push_back(std::move(y));
        trace.noise.push_back(m);
        trace.steps.push_back(a);
        trace.times.push_back(trace.times.back() + a);
        trace.corrections.push_back(zeros(d));
        trace.iterates.push_back(next);

        partner.selections.push_back(std::move(yp));
        partner.noise.push_back(m);
        partner.steps.push_back(a);
        partner.times.push_back(partner.times.back() + a);
        partner.corrections.push_back(sub(z, pre));
        partner.iterates.push_back(z);

        j = std::move(next);
        jp = std::move(z);
        result.gap_report.gaps.push_back(norm_dist(config.contraction_norm, j, jp));
    }

    result.gap_report.last_projection_index = partner.last_projection_index();
    double sup = 0.0;
    for (std::size_t n = result.gap_report.last_projection_index;
         n < result.gap_report.gaps.size(); ++n)
        sup = std::max(sup, result.gap_report.gaps[n]);
    result.gap_report.sup_gap_after_N = sup;
    result.gap_report.finite = std::isfinite(sup) && !trace.diverged;

    result.j_bar = trace.tail_average(config.tail_fraction);
    result.residual = norm_dist(config.error_norm, bellman(mdp, result.j_bar), result.j_bar);
    result.distance = norm_dist(config.error_norm, result.j_bar, result.j_star);
    result.gap_norm = config.contraction_norm;
    return result;
}

GapCheckResult gap_recursion_check(const AviResult& result, double alpha, double epsilon) {
    const RunTrace& free_trace = result.trace;
    const RunTrace& partner = result.partner_trace;
    if (free_trace.n_steps() == 0 || free_trace.n_steps() != partner.n_steps())
        throw std::invalid_argument("gap_recursion_check: coupled traces required");
    const NormSpec& nu = result.gap_norm;
    constexpr double kSlack = 1e-10;

    GapCheckResult check;
    check.recursion_ok = true;
    const double cap = 2.0 * epsilon / (1.0 - alpha);

    for (std::size_t n = 0; n < free_trace.n_steps(); ++n) {
        const double a = free_trace.steps[n];
        const double gap = norm_dist(nu, free_trace.iterates[n], partner.iterates[n]);
        // partner pre-projection value
        const Vec pre = sub(partner.iterates[n + 1], partner.corrections[n]);
        const double lhs = norm_dist(nu, free_trace.iterates[n + 1], pre);
        const double rhs = (1.0 - a) * gap + a * (2.0 * epsilon + alpha * gap);
        check.worst_recursion_slack = std::max(check.worst_recursion_slack, lhs - rhs);
        if (lhs > rhs + kSlack) check.recursion_ok = false;
        if (2.0 * epsilon <= (1.0 - alpha) * gap)
            ++check.case1;
        else
            ++check.case2;
    }

    // closed-form bound after the last projection
    const auto events = partner.projection_indices();
    const std::size_t first_clean = events.empty() ? 0 : events.back() + 1;
    check.last_projection_index = events.empty() ? 0 : events.back();
    const double gap_N =
        norm_dist(nu, free_trace.iterates[first_clean], partner.iterates[first_clean]);
    const double bound = std::max(gap_N, cap);
    check.closed_form_ok = true;
    for (std::size_t n = first_clean; n < free_trace.iterates.size(); ++n) {
        const double gap = norm_dist(nu, free_trace.iterates[n], partner.iterates[n]);
        check.worst_closed_form_slack = std::max(check.worst_closed_form_slack, gap - bound);
        if (gap > bound + kSlack) check.closed_form_ok = false;
    }
    check.ok = check.recursion_ok && check.closed_form_ok;
    return check;
}

std::vector<SweepRow> epsilon_sweep(const Mdp& mdp, const AviConfig& base,
                                    const std::vector<double>& epsilons) {
    if (epsilons.empty()) throw std::invalid_argument("epsilon_sweep: empty list");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1]))
            throw std::invalid_argument("epsilon_sweep: list must be strictly decreasing");
    std::vector<SweepRow> rows;
    for (double eps : epsilons) {
        AviConfig config = base;
        config.epsilon = eps;
        const AviResult r = run_avi(mdp, config);
        rows.push_back({eps, r.residual, r.distance});
    }
    return rows;
}

} // namespace svsa
