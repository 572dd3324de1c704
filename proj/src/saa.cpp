#include "svsa/saa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svsa {

namespace {

void check_preconditions(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                         std::size_t n_iter) {
    require_dim(x0, map.dim(), "run x0");
    if (n_iter == 0) throw std::invalid_argument("run: n_iter must be >= 1");
    const ScheduleVerdict verdict = validate_schedule(schedule);
    if (verdict.status == ScheduleVerdict::Status::Fail)
        throw std::invalid_argument("run: step-size schedule fails validation: " + verdict.reason);
}

void reserve(RunTrace& trace, std::size_t n_iter) {
    trace.iterates.reserve(n_iter + 1);
    trace.selections.reserve(n_iter);
    trace.noise.reserve(n_iter);
    trace.steps.reserve(n_iter);
    trace.times.reserve(n_iter + 1);
    trace.corrections.reserve(n_iter);
}

bool out_of_range(const Vec& x) { return !all_finite(x) || norm2(x) > kDivergenceSentinel; }

} // namespace

RunTrace run_saa(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                 const NoiseModel& noise, const SelectionStrategy& strategy,
                 std::size_t n_iter, std::uint64_t seed) {
    check_preconditions(map, x0, schedule, n_iter);
    std::mt19937_64 rng = make_rng(seed);
    RunTrace trace;
    reserve(trace, n_iter);
    trace.iterates.push_back(x0);
    trace.times.push_back(0.0);

    Vec x = x0;
    for (std::size_t n = 0; n < n_iter; ++n) {
        const double a = schedule.at(n);
        Vec y = select(map, x, strategy, rng);
        Vec m = noise.draw(x, rng);
        Vec next = x;
        axpy_inplace(next, a, y);
        axpy_inplace(next, a, m);
        if (out_of_range(next)) {
            trace.diverged = true;
            trace.diverged_index = n;
            break;
        }
        trace.selections.push_back(std::move(y));
        trace.noise.push_back(std::move(m));
        trace.steps.push_back(a);
        trace.times.push_back(trace.times.back() + a);
        trace.corrections.push_back(zeros(map.dim()));
        trace.iterates.push_back(next);
        x = std::move(next);
    }
    return trace;
}

Vec project(const InwardSetPair& pair, const Vec& x) { return pair.project(x); }

RunTrace run_projective(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                        const NoiseModel& noise, const SelectionStrategy& strategy,
                        const InwardSetPair& pair, std::size_t n_iter, std::uint64_t seed) {
    check_preconditions(map, x0, schedule, n_iter);
    std::mt19937_64 rng = make_rng(seed);
    RunTrace trace;
    reserve(trace, n_iter);
    // the initial point is projected before the scheme starts
    Vec x = pair.project(x0);
    trace.iterates.push_back(x);
    trace.times.push_back(0.0);

    for (std::size_t n = 0; n < n_iter; ++n) {
        const double a = schedule.at(n);
        Vec y = select(map, x, strategy, rng);
        Vec m = noise.draw(x, rng);
        Vec pre = x;
        axpy_inplace(pre, a, y);
        axpy_inplace(pre, a, m);
        if (out_of_range(pre)) {
            trace.diverged = true;
            trace.diverged_index = n;
            break;
        }
        Vec z = pair.project(pre);
        trace.corrections.push_back(sub(z, pre));
        trace.selections.push_back(std::move(y));
        trace.noise.push_back(std::move(m));
        trace.steps.push_back(a);
        trace.times.push_back(trace.times.back() + a);
        trace.iterates.push_back(z);
        x = std::move(z);
    }
    return trace;
}

CoupledResult coupled_run(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                          const NoiseModel& noise, const SelectionStrategy& strategy,
                          const InwardSetPair& pair, std::size_t n_iter, std::uint64_t seed,
                          const NormSpec& gap_norm) {
    check_preconditions(map, x0, schedule, n_iter);
    std::mt19937_64 rng = make_rng(seed);
    CoupledResult result;
    reserve(result.free_trace, n_iter);
    reserve(result.partner_trace, n_iter);

    Vec x = x0;                    // free iteration starts unprojected
    Vec xp = pair.project(x0);     // partner starts projected
    result.free_trace.iterates.push_back(x);
    result.free_trace.times.push_back(0.0);
    result.partner_trace.iterates.push_back(xp);
    result.partner_trace.times.push_back(0.0);
    result.report.gaps.push_back(norm_dist(gap_norm, x, xp));

    const bool callback = strategy.kind == SelectionStrategy::Kind::Callback;
    for (std::size_t n = 0; n < n_iter; ++n) {
        const double a = schedule.at(n);
        // shared perturbation draw and shared noise realization
        Vec y, yp;
        if (callback) {
            y = select(map, x, strategy, rng);
            yp = select(map, xp, strategy, rng);
        } else {
            const Vec u = selection_offset(map, x, strategy, rng);
            y = add(map.base(x), u);
            yp = add(map.base(xp), u);
        }
        const Vec m = noise.draw(x, rng);

        Vec next = x;
        axpy_inplace(next, a, y);
        axpy_inplace(next, a, m);
        Vec pre = xp;
        axpy_inplace(pre, a, yp);
        axpy_inplace(pre, a, m);
        if (out_of_range(next) || out_of_range(pre)) {
            result.free_trace.diverged = result.free_trace.diverged || out_of_range(next);
            result.partner_trace.diverged = result.partner_trace.diverged || out_of_range(pre);
            result.free_trace.diverged_index = n;
            result.partner_trace.diverged_index = n;
            break;
        }
        Vec z = pair.project(pre);

        result.free_trace.selections.push_back(y);
        result.free_trace.noise.push_back(m);
        result.free_trace.steps.push_back(a);
        result.free_trace.times.push_back(result.free_trace.times.back() + a);
        result.free_trace.corrections.push_back(zeros(map.dim()));
        result.free_trace.iterates.push_back(next);

        result.partner_trace.selections.push_back(yp);
        result.partner_trace.noise.push_back(m);
        result.partner_trace.steps.push_back(a);
        result.partner_trace.times.push_back(result.partner_trace.times.back() + a);
        result.partner_trace.corrections.push_back(sub(z, pre));
        result.partner_trace.iterates.push_back(z);

        x = std::move(next);
        xp = std::move(z);
        result.report.gaps.push_back(norm_dist(gap_norm, x, xp));
    }

    result.report.last_projection_index = result.partner_trace.last_projection_index();
    double sup = 0.0;
    for (std::size_t n = result.report.last_projection_index; n < result.report.gaps.size(); ++n)
        sup = std::max(sup, result.report.gaps[n]);
    result.report.sup_gap_after_N = sup;
    result.report.finite = std::isfinite(sup) && !result.free_trace.diverged;
    return result;
}

InterpolatedPath::InterpolatedPath(const RunTrace& trace) {
    if (trace.iterates.empty()) throw std::invalid_argument("InterpolatedPath: empty trace");
    times_ = trace.times;
    iterates_ = trace.iterates;
    jump_at_.assign(trace.iterates.size(), false);
    for (std::size_t n = 0; n < trace.n_steps(); ++n) {
        drifts_.push_back(add(trace.selections[n], trace.noise[n]));
        if (n < trace.corrections.size() && norm2(trace.corrections[n]) > 0.0)
            jump_at_[n + 1] = true;
    }
}

Vec InterpolatedPath::at(double t) const {
    if (t <= times_.front()) return iterates_.front();
    if (t >= times_.back()) return iterates_.back();
    // locate t in [t_n, t_{n+1})
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t n = static_cast<std::size_t>(it - times_.begin()) - 1;
    if (n >= drifts_.size()) return iterates_.back();
    return axpy(iterates_[n], t - times_[n], drifts_[n]);
}

std::vector<double> InterpolatedPath::jump_times() const {
    std::vector<double> out;
    for (std::size_t n = 0; n < jump_at_.size(); ++n)
        if (jump_at_[n]) out.push_back(times_[n]);
    return out;
}

NoiseWindowResult noise_window_check(const RunTrace& trace, double T, std::size_t k_begin,
                                     std::size_t k_end) {
    if (trace.n_steps() == 0) throw std::invalid_argument("noise_window_check: empty trace");
    if (!(T > 0.0)) throw std::invalid_argument("noise_window_check: T must be positive");
    const std::size_t n = trace.n_steps();
    const std::size_t d = trace.dim();
    k_end = std::min(k_end, n);
    k_begin = std::min(k_begin, k_end);

    // prefix sums of a(n) and of a(n) M_{n+1}
    std::vector<double> pa(n + 1, 0.0);
    std::vector<Vec> pm(n + 1, zeros(d));
    for (std::size_t i = 0; i < n; ++i) {
        pa[i + 1] = pa[i] + trace.steps[i];
        pm[i + 1] = axpy(pm[i], trace.steps[i], trace.noise[i]);
    }

    NoiseWindowResult result;
    bool any_complete = false;
    std::size_t m = k_begin;
    for (std::size_t k = k_begin; k < k_end; ++k) {
        if (m < k) m = k;
        while (m < n && pa[m + 1] - pa[k] < T) ++m;
        const bool complete = m < n && pa[m + 1] - pa[k] >= T;
        if (!complete) {
            // windows only get shorter from here on
            result.partial_window_warning = true;
            if (!any_complete) {
                result.max_window_norm = dist2(pm[n], pm[k]);
                result.argmax_k = k;
            }
            break;
        }
        any_complete = true;
        const double norm = dist2(pm[m + 1], pm[k]);
        if (norm > result.max_window_norm) {
            result.max_window_norm = norm;
            result.argmax_k = k;
        }
    }
    return result;
}

} // namespace svsa
