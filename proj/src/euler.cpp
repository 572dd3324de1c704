#include "svsa/euler.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "svsa/io.hpp"

namespace svsa {

Trajectory euler_solve(const SetValuedMap& map, const Vec& x0, double h, double horizon,
                       const SelectionStrategy& strategy, std::mt19937_64& rng) {
    if (!(h > 0.0)) throw std::invalid_argument("euler_solve: step must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("euler_solve: horizon must be positive");
    require_dim(x0, map.dim(), "euler_solve x0");

    const auto n_steps = static_cast<std::size_t>(std::ceil(horizon / h));
    Trajectory traj;
    traj.step = h;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.selections.reserve(n_steps);
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    Vec x = x0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        Vec y = select(map, x, strategy, rng);
        Vec next = axpy(x, h, y);
        if (!all_finite(next) || norm2(next) > kDivergenceSentinel) {
            traj.diverged = true;
            traj.diverged_index = k;
            break;
        }
        traj.selections.push_back(std::move(y));
        traj.times.push_back(static_cast<double>(k + 1) * h);
        traj.states.push_back(next);
        x = std::move(next);
    }
    return traj;
}

void write_csv(const Trajectory& traj, std::ostream& os) {
    const std::size_t d = traj.states.empty() ? 0 : traj.states.front().size();
    os << "t";
    for (std::size_t i = 1; i <= d; ++i) os << ",x_" << i;
    os << "\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        os << fmt_g17(traj.times[k]);
        for (double v : traj.states[k]) os << ',' << fmt_g17(v);
        os << "\n";
    }
}

} // namespace svsa
