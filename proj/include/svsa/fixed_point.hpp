#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "svsa/inward.hpp"
#include "svsa/noise.hpp"
#include "svsa/saa.hpp"
#include "svsa/schedule.hpp"

#include <json.hpp>

namespace svsa {

struct AffineMap {
    std::vector<Vec> A; // row-major
    Vec b;

    Vec apply(const Vec& x) const;
    /// Solves x = Ax + b, the fixed point of the base map.
    Vec fixed_point() const;
};

/// Contractive set-valued map Tx = F(x) + offsets with declared modulus alpha
/// and diameter bound D under the metric rho.
struct ContractiveSetMap {
    SetValuedMap map;
    MetricSpec metric;
    double alpha = 0.0;
    double diameter = 0.0;
    std::optional<AffineMap> affine; // set when the base is affine

    static ContractiveSetMap from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static ContractiveSetMap load(const std::string& path);

    /// Fixed point of the base map: linear solve for affine bases, Banach
    /// iteration otherwise.
    Vec base_fixed_point() const;
};

struct CertifyReport {
    double max_contraction_ratio = 0.0; // over sampled pairs, H_rho(Tx,Ty)/rho(x,y)
    double max_diameter = 0.0;          // over the grid
    double max_dominance_excess = 0.0;  // max of ||x-y|| - C rho(x,y) over samples
    bool contraction_ok = false;
    bool diameter_ok = false;
    bool dominance_ok = false;
    bool pass = false;
    std::optional<std::pair<Vec, Vec>> ratio_witness;
    std::string attractor_note; // the global-attractor hypothesis is declared, not proven
    bool attractor_probe_ran = false;
    double attractor_probe_worst = 0.0; // worst trailing membership distance over probe starts
};

/// Samples the contraction ratio, diameter and metric dominance claims.
/// Translation structure makes H_rho(Tx,Ty) = rho(F(x),F(y)) exact here.
/// The attractor hypothesis is recorded as declared; the optional probe runs
/// Euler trajectories of dx/dt in Tx - x from scattered starts.
CertifyReport certify_map(const ContractiveSetMap& map, std::size_t n_pairs,
                          const FiniteSet& grid, std::uint64_t seed, bool probe_attractor = false);

struct FpResult {
    RunTrace trace;
    RunTrace partner_trace;
    ComparabilityReport gap_report;
    Vec x_bar;              // tail average
    Vec base_fixed_point;
    double residual = 0.0;  // membership distance of x_bar to T x_bar in rho
    double alpha = 0.0;
    double diameter = 0.0;
    MetricSpec metric;
};

struct FpOptions {
    double tail_fraction = 0.1;
    double partner_inner_factor = 2.0;
    double partner_outer_factor = 4.0;
    double partner_diameter_floor = 0.05;
    std::size_t certify_pairs = 500;
};

/// Runs x_{n+1} = x_n + a(n)[y_n + M_{n+1}] with y_n in T x_n - x_n together
/// with its projective partner (identical noise, identical offset draws).
FpResult run_fixed_point(const ContractiveSetMap& map, const Vec& x0,
                         const StepSchedule& schedule, const NoiseModel& noise,
                         const SelectionStrategy& strategy, std::size_t n_iter,
                         std::uint64_t seed, const FpOptions& opts = {});

struct FpGapCheck {
    bool ok = false;
    bool recursion_ok = false;
    bool closed_form_ok = false;
    std::size_t case1 = 0; // steps with 2D <= (1-alpha) gap
    std::size_t case2 = 0;
    double worst_recursion_slack = 0.0;
    double worst_closed_form_slack = 0.0;
};

/// Per-step recursion rho(x_{n+1}, x~_{n+1}) <= (1-a) rho_n + a (2D + alpha
/// rho_n) plus the closed-form bound rho_n <= (2D/(1-alpha)) v rho_N for
/// n >= N, slack 1e-10.
FpGapCheck fp_gap_bound_check(const FpResult& result, double alpha, double D);

/// One run of the stage-map recursion x_{n+1} in G(x_n, xi_n) next to its
/// projected partner x~_{n+1} in G(project(x~_n), xi_n) with identical xi and
/// identical offset draws. G(x, xi) = F(x) + xi + offsets.
struct StageMapRun {
    std::vector<Vec> free_iterates;
    std::vector<Vec> partner_iterates;
    std::vector<std::size_t> correction_indices; // n where project moved the partner
};

StageMapRun run_stage_maps(const ContractiveSetMap& map, const Vec& x0, const Vec& x0_partner,
                           const NoiseModel& xi, const InwardSetPair& pair, std::size_t n_iter,
                           std::uint64_t seed);

struct GenericBoundednessResult {
    bool ok = false;
    std::size_t last_correction = 0; // N
    double sup_gap = 0.0;            // sup_{n >= N+1} rho(x_n, x~_n)
    double bound = 0.0;              // 2D/(1-alpha) + rho(x_N, x~_N)
};

GenericBoundednessResult generic_boundedness_check(const StageMapRun& run,
                                                   const MetricSpec& metric, double alpha,
                                                   double D);

} // namespace svsa
