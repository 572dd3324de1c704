#pragma once

#include <iosfwd>
#include <random>
#include <vector>

#include "svsa/set_valued_map.hpp"
#include "svsa/vec.hpp"

namespace svsa {

/// Magnitude past which an iterate or trajectory is flagged as diverged
/// instead of aborting the run.
constexpr double kDivergenceSentinel = 1e12;

/// Explicit-Euler selection solution of dx/dt in H(x): states[k+1] =
/// states[k] + h * y_k with y_k a recorded selection.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<Vec> selections;
    double step = 0.0;
    bool diverged = false;
    std::size_t diverged_index = 0;

    std::size_t n_steps() const { return selections.size(); }
    const Vec& final_state() const { return states.back(); }
};

Trajectory euler_solve(const SetValuedMap& map, const Vec& x0, double h, double horizon,
                       const SelectionStrategy& strategy, std::mt19937_64& rng);

/// CSV columns: t, x_1..x_d.
void write_csv(const Trajectory& traj, std::ostream& os);

} // namespace svsa
