#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "svsa/norms.hpp"
#include "svsa/vec.hpp"

namespace svsa {

struct NoPerturbation {};

/// Ball {u : ||u||_norm <= radius} added to the base point.
struct BallPerturbation {
    double radius = 0.0;
    NormSpec norm;
};

/// Convex hull of a finite offset list added to the base point.
struct OffsetListPerturbation {
    std::vector<Vec> offsets;
};

using Perturbation = std::variant<NoPerturbation, BallPerturbation, OffsetListPerturbation>;

/// Set-valued map H(x) = { F(x) + u : u in perturbation }. Values are convex
/// and compact by construction; upper semicontinuity holds structurally for a
/// continuous base plus a fixed compact perturbation and is not tested
/// numerically.
class SetValuedMap {
public:
    SetValuedMap(std::size_t dim, std::function<Vec(const Vec&)> base,
                 Perturbation pert = NoPerturbation{});

    std::size_t dim() const { return dim_; }
    Vec base(const Vec& x) const;
    const Perturbation& perturbation() const { return pert_; }

    /// sup ||u||_2 over the perturbation set (0 when there is none).
    double perturbation_euclidean_radius() const;

    /// How far y is from H(x). Exact for no/ball perturbations (ball residual
    /// measured in the ball's own norm); distance to the convex hull for
    /// offset lists (exact for <= 2 offsets, iterative otherwise).
    double membership_distance(const Vec& x, const Vec& y) const;

    /// Deterministic extreme offsets used to bracket the set: one per axis
    /// direction for balls, the listed offsets for lists, none otherwise.
    std::vector<Vec> extreme_offsets() const;

    /// Offset of the center selection (zero for balls, centroid for lists).
    Vec center_offset() const;

    /// Uniform draw from the perturbation set (simplex-uniform over hulls).
    Vec draw_offset(std::mt19937_64& rng) const;

private:
    std::size_t dim_;
    std::function<Vec(const Vec&)> base_;
    Perturbation pert_;
};

/// How a single selection y in H(x) is produced at each step.
struct SelectionStrategy {
    enum class Kind { Center, UniformInPerturbation, FixedBias, Callback };

    Kind kind = Kind::Center;
    Vec bias;                                  // FixedBias
    std::function<Vec(const Vec&)> callback;   // Callback: x -> y

    static SelectionStrategy center() { return {Kind::Center, {}, nullptr}; }
    static SelectionStrategy uniform() { return {Kind::UniformInPerturbation, {}, nullptr}; }
    static SelectionStrategy fixed_bias(Vec u) { return {Kind::FixedBias, std::move(u), nullptr}; }
    static SelectionStrategy with_callback(std::function<Vec(const Vec&)> cb) {
        return {Kind::Callback, {}, std::move(cb)};
    }

    bool stochastic() const { return kind == Kind::UniformInPerturbation; }
};

struct MembershipViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kMembershipTol = 1e-9;

/// Returns the offset u such that y = F(x) + u for the strategy. Callback
/// strategies are resolved against H(x) and validated for membership.
Vec selection_offset(const SetValuedMap& map, const Vec& x, const SelectionStrategy& strategy,
                     std::mt19937_64& rng);

/// One selection y in H(x). Deterministic given the rng state and kind.
Vec select(const SetValuedMap& map, const Vec& x, const SelectionStrategy& strategy,
           std::mt19937_64& rng);

struct MarchaudRow {
    Vec x;
    double sup_norm = 0.0; // sup_{w in H(x)} ||w|| (upper bound for non-Euclidean balls)
    double bound = 0.0;    // K(1 + ||x||)
    bool ok = false;
};

struct MarchaudReport {
    std::vector<MarchaudRow> rows;
    bool pass = false;
    std::string convexity_note;
    std::string usc_note;
};

/// Checks the pointwise bound sup_{w in H(x)} ||w|| <= K(1+||x||) on a grid.
MarchaudReport marchaud_report(const SetValuedMap& map, const FiniteSet& grid, double K);

} // namespace svsa
