#pragma once

#include <cstdint>
#include <optional>

#include "svsa/mdp.hpp"
#include "svsa/noise.hpp"
#include "svsa/saa.hpp"
#include "svsa/schedule.hpp"

namespace svsa {

/// How the per-step approximation error eps_n is produced. Every injected
/// error is asserted to satisfy ||eps_n|| <= eps in the configured norm.
struct ErrorInjector {
    enum class Kind { FixedBias, UniformBall, RoundingGrid };

    Kind kind = Kind::FixedBias;
    /// FixedBias: direction rescaled to norm exactly eps. Empty means the
    /// first axis direction.
    Vec direction;
    /// RoundingGrid: grid spacing of the coarse rounding operator.
    double grid_delta = 0.1;
};

struct AviConfig {
    double epsilon = 0.1;
    NormSpec error_norm;       // nu (weighted max) or (omega, p)
    NormSpec contraction_norm; // the weighted max-norm of (AV1)
    ErrorInjector injector;
    StepSchedule schedule = StepSchedule::harmonic(1.0);
    NoiseModel noise = NoiseModel::zero();
    std::size_t n_iter = 100000;
    double tail_fraction = 0.1;
    std::uint64_t seed = 0;
    Vec j0; // empty means the zero vector

    /// Projective partner sets: contraction-norm balls centered at J* with
    /// radii (inner, outer) * max(epsilon, epsilon_floor) / (1 - alpha).
    double partner_inner_factor = 2.0;
    double partner_outer_factor = 4.0;
    double partner_epsilon_floor = 0.05;

    /// Contraction modulus; < 0 means use gamma for discounted MDPs or a
    /// sampled certificate for SSP.
    double declared_alpha = -1.0;

    double vi_tol = 1e-12;
    std::size_t certificate_pairs = 2000;
};

struct AviResult {
    RunTrace trace;         // the free AVI iterates J_n
    RunTrace partner_trace; // the projective partner, identical noise
    ComparabilityReport gap_report;
    Vec j_star;
    Vec j_bar;        // tail average
    double residual = 0.0; // ||T j_bar - j_bar|| in the error norm
    double distance = 0.0; // ||j_bar - J*|| in the error norm
    double alpha = 0.0;
    double epsilon = 0.0;
    double certificate = 0.0; // sampled contraction ratio
    NormSpec gap_norm;        // norm used for the coupled gap (the contraction norm)
};

/// Stochastic iterative AVI J_{n+1} = J_n + a(n)[T J_n - J_n + eps_n +
/// M_{n+1}] run together with its projective partner under the identical
/// noise realization. Weighted-p error norms additionally assert the bridge
/// ||eps_n||_nu <= eps / nu_min at every step.
AviResult run_avi(const Mdp& mdp, const AviConfig& config);

struct GapCheckResult {
    bool ok = false;
    bool recursion_ok = false;
    bool closed_form_ok = false;
    std::size_t case1 = 0; // steps with 2 eps <= (1-alpha) gap
    std::size_t case2 = 0;
    double worst_recursion_slack = 0.0;  // max LHS - RHS over steps
    double worst_closed_form_slack = 0.0;
    std::size_t last_projection_index = 0;
};

/// Per-step recursion ||J_{n+1} - J~_{n+1}||_nu <= (1 - a(n)) gap_n +
/// a(n)(2 eps + alpha gap_n) (partner pre-projection on the left) at every
/// step, plus the closed-form bound gap_n <= gap_N v 2 eps/(1-alpha) for
/// n >= N, slack 1e-10. For weighted-p error bounds pass eps / nu_min.
GapCheckResult gap_recursion_check(const AviResult& result, double alpha, double epsilon);

struct SweepRow {
    double epsilon = 0.0;
    double residual = 0.0;
    double distance = 0.0;
};

/// Full AVI runs over a strictly decreasing epsilon list.
std::vector<SweepRow> epsilon_sweep(const Mdp& mdp, const AviConfig& base,
                                    const std::vector<double>& epsilons);

} // namespace svsa
