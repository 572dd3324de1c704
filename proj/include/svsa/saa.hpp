#pragma once

#include <cstdint>
#include <optional>

#include "svsa/inward.hpp"
#include "svsa/noise.hpp"
#include "svsa/run_trace.hpp"
#include "svsa/schedule.hpp"
#include "svsa/set_valued_map.hpp"

namespace svsa {

/// The core iteration x_{n+1} = x_n + a(n) [y_n + M_{n+1}] with y_n in H(x_n).
/// Bitwise reproducible for a fixed seed. Iterates past the divergence
/// sentinel set the diverged flag and stop the run.
RunTrace run_saa(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                 const NoiseModel& noise, const SelectionStrategy& strategy,
                 std::size_t n_iter, std::uint64_t seed);

/// Projection map of the pair, exposed standalone: identity on C, otherwise a
/// deterministic nearest-point selection of closure(B).
Vec project(const InwardSetPair& pair, const Vec& x);

/// Projective partner scheme: the initial point is projected first, then
/// x~_{n+1} = x_n + a(n)[y_n + M_{n+1}], x_{n+1} = project(x~_{n+1}) with the
/// correction g_n recorded. Every iterate lies in closure(C).
RunTrace run_projective(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                        const NoiseModel& noise, const SelectionStrategy& strategy,
                        const InwardSetPair& pair, std::size_t n_iter, std::uint64_t seed);

struct ComparabilityReport {
    std::vector<double> gaps;            // ||x_n - x^_n|| per iterate, chosen norm
    std::size_t last_projection_index = 0; // N
    double sup_gap_after_N = 0.0;
    bool finite = false;
};

struct CoupledResult {
    RunTrace free_trace;
    RunTrace partner_trace;
    ComparabilityReport report;
};

/// Runs the free iteration and its projective partner with the identical
/// noise realization and identical perturbation draws, then reports the
/// per-iterate gap.
CoupledResult coupled_run(const SetValuedMap& map, const Vec& x0, const StepSchedule& schedule,
                          const NoiseModel& noise, const SelectionStrategy& strategy,
                          const InwardSetPair& pair, std::size_t n_iter, std::uint64_t seed,
                          const NormSpec& gap_norm);

/// Linearly interpolated trajectory X_l(t): equals x_n at t_n, linear toward
/// the pre-projection point on [t_n, t_{n+1}), jumps exactly where g_{n-1} is
/// nonzero.
class InterpolatedPath {
public:
    explicit InterpolatedPath(const RunTrace& trace);

    Vec at(double t) const;
    const std::vector<double>& grid() const { return times_; }
    std::vector<double> jump_times() const;

private:
    std::vector<double> times_;
    std::vector<Vec> iterates_;
    std::vector<Vec> drifts_; // y_n + M_{n+1}
    std::vector<bool> jump_at_; // jump_at_[n]: g_{n-1} != 0
};

struct NoiseWindowResult {
    double max_window_norm = 0.0;
    std::size_t argmax_k = 0;
    bool partial_window_warning = false;
};

/// Max over k of || sum_{n=k}^{m_T(k)} a(n) M_{n+1} || with
/// m_T(k) = min{ m >= k : sum_{n=k}^m a(n) >= T }. Windows that run past the
/// end of the trace raise the partial-window warning.
NoiseWindowResult noise_window_check(const RunTrace& trace, double T, std::size_t k_begin = 0,
                                     std::size_t k_end = SIZE_MAX);

} // namespace svsa
