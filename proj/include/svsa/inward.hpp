#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <random>

#include "svsa/lyapunov.hpp"
#include "svsa/norms.hpp"
#include "svsa/set_valued_map.hpp"

namespace svsa {

/// The pair (B, C) of nested open sets used by projective schemes: either
/// sublevel sets {V < r} of a Lyapunov estimate, or concentric norm balls.
/// Membership, boundary sampling and the projection map live here.
class InwardSetPair {
public:
    static InwardSetPair balls(Vec center, double r_b, double r_c, NormSpec norm);
    static InwardSetPair sublevels(std::shared_ptr<const LyapunovEstimate> V, double r_b,
                                   double r_c, double bisect_tol = 1e-10);

    std::size_t dim() const;
    double level_b() const { return r_b_; }
    double level_c() const { return r_c_; }

    /// V(x) for sublevel pairs, ||x - center||_norm for ball pairs.
    double level_value(const Vec& x) const;

    bool in_B(const Vec& x) const { return level_value(x) < r_b_; }
    bool in_C(const Vec& x) const { return level_value(x) < r_c_; }
    bool in_closure_C(const Vec& x) const { return level_value(x) <= r_c_; }

    /// Projection map: identity on C, otherwise a deterministic selection of
    /// the nearest points of closure(B) (radial/clamp for balls, bisection
    /// toward the attractor centroid for sublevels).
    Vec project(const Vec& x) const;

    /// A point of the boundary of C along a random direction from the center.
    Vec sample_boundary_C(std::mt19937_64& rng) const;

    /// Minimum Euclidean distance between the boundary of C and closure(B).
    /// Exact for ball pairs, sampled (64 directions) for sublevel pairs.
    double boundary_gap() const;

    bool is_ball_pair() const { return ball_.has_value(); }
    const Vec& ball_center() const;
    const NormSpec& ball_norm() const;

private:
    InwardSetPair() = default;

    struct BallBackend {
        Vec center;
        NormSpec norm;
    };
    std::optional<BallBackend> ball_;
    std::shared_ptr<const LyapunovEstimate> lyapunov_;
    double r_b_ = 0.0;
    double r_c_ = 0.0;
    double bisect_tol_ = 1e-10;

    Vec ray_point(const Vec& dir, double target_level) const;
};

InwardSetPair build_inward_pair(std::shared_ptr<const LyapunovEstimate> V, double r_b,
                                double r_c);

struct InwardCheckOptions {
    double time_margin = 0.0;      // ignore t <= margin when testing containment
    double level_band_frac = 0.01; // exit means level_value >= R_c * (1 + band)
};

struct InwardCheckResult {
    bool inward = false;
    std::optional<Vec> counterexample; // boundary start that escaped
    /// max of level_value - R_c observed past the margin; negative when the
    /// flow never comes back out toward the boundary
    double worst_excess = -std::numeric_limits<double>::infinity();
};

/// Tests whether C is inward directing for dx/dt in H(x): Euler trajectories
/// from sampled boundary points of C, under the center and axis-extreme
/// selections, must stay in C past the time margin.
InwardCheckResult inward_check(const InwardSetPair& pair, const SetValuedMap& map,
                               std::size_t n_boundary, double h, double horizon,
                               std::mt19937_64& rng, InwardCheckOptions opts = {});

} // namespace svsa
