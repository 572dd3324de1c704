#include "svsa/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "svsa/io.hpp"

namespace svsa {

LyapunovEstimate::LyapunovEstimate(SetValuedMap map, FiniteSet attractor, LyapunovParams params)
    : map_(std::move(map)), attractor_(std::move(attractor)), params_(params) {
    if (!(params_.c > 0.0) || !(params_.c < params_.d_g))
        throw std::invalid_argument("LyapunovEstimate: need 0 < c < d_g");
    if (!(params_.h > 0.0) || !(params_.horizon > 0.0))
        throw std::invalid_argument("LyapunovEstimate: need positive h and horizon");
    if (attractor_.dim() != map_.dim())
        throw std::invalid_argument("LyapunovEstimate: attractor dimension mismatch");
}

double LyapunovEstimate::g(double t) const {
    return params_.d_g - (params_.d_g - params_.c) * std::exp(-t);
}

double LyapunovEstimate::attractor_distance(const Vec& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& a : attractor_.points) best = std::min(best, dist2(x, a));
    return best;
}

Vec LyapunovEstimate::attractor_centroid() const {
    Vec c = zeros(attractor_.dim());
    for (const Vec& a : attractor_.points)
        axpy_inplace(c, 1.0 / static_cast<double>(attractor_.size()), a);
    return c;
}

double LyapunovEstimate::value(const Vec& x) const {
    require_dim(x, map_.dim(), "LyapunovEstimate::value");

    std::vector<SelectionStrategy> family;
    family.push_back(SelectionStrategy::center());
    for (const Vec& u : map_.extreme_offsets())
        family.push_back(SelectionStrategy::fixed_bias(u));

    double v = 0.0;
    std::mt19937_64 rng(0); // strategies in the family are deterministic
    for (const auto& strategy : family) {
        Trajectory traj = euler_solve(map_, x, params_.h, params_.horizon, strategy, rng);
        if (traj.diverged)
            throw HorizonTooShort("Lyapunov trajectory diverged before reaching the attractor");
        for (std::size_t k = 0; k < traj.states.size(); ++k)
            v = std::max(v, attractor_distance(traj.states[k]) * g(traj.times[k]));
        if (attractor_distance(traj.final_state()) > params_.attractor_tol)
            throw HorizonTooShort("trajectory not within tolerance of the attractor at the horizon");
    }
    return v;
}

LyapunovEstimate lyapunov_build(const SetValuedMap& map, FiniteSet attractor, double c,
                                double d_g, double horizon, double h, double attractor_tol) {
    LyapunovParams params;
    params.c = c;
    params.d_g = d_g;
    params.horizon = horizon;
    params.h = h;
    params.attractor_tol = attractor_tol;
    return LyapunovEstimate(map, std::move(attractor), params);
}

void write_grid_csv(const LyapunovEstimate& est, const FiniteSet& grid, std::ostream& os) {
    const std::size_t d = grid.dim();
    for (std::size_t i = 1; i <= d; ++i) os << "x_" << i << ',';
    os << "V\n";
    for (const Vec& x : grid.points) {
        for (double v : x) os << fmt_g17(v) << ',';
        os << fmt_g17(est.value(x)) << "\n";
    }
}

} // namespace svsa
