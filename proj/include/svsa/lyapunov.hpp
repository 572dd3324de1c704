#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "svsa/euler.hpp"
#include "svsa/norms.hpp"
#include "svsa/set_valued_map.hpp"

namespace svsa {

struct HorizonTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LyapunovParams {
    double c = 1.0;   // 0 < c < d_g
    double d_g = 2.0;
    double horizon = 10.0;
    double h = 1e-3;
    double attractor_tol = 1e-2; // trajectories must be this close to A at the horizon
};

/// Numerical Lyapunov function V(x) = max{ d(y, A) g(t) : y on a sampled
/// trajectory from x, t in [0, horizon] } with g(t) = d_g - (d_g - c) e^{-t}.
/// The max over all solutions is approximated by the center selection plus
/// the axis-extreme offset selections.
class LyapunovEstimate {
public:
    LyapunovEstimate(SetValuedMap map, FiniteSet attractor, LyapunovParams params);

    double g(double t) const;
    double attractor_distance(const Vec& x) const; // Euclidean d(x, A)
    /// V(x). Throws HorizonTooShort if some sampled trajectory has not reached
    /// the attractor tolerance by the horizon.
    double value(const Vec& x) const;

    const FiniteSet& attractor() const { return attractor_; }
    Vec attractor_centroid() const;
    const LyapunovParams& params() const { return params_; }
    const SetValuedMap& map() const { return map_; }

private:
    SetValuedMap map_;
    FiniteSet attractor_;
    LyapunovParams params_;
};

LyapunovEstimate lyapunov_build(const SetValuedMap& map, FiniteSet attractor, double c,
                                double d_g, double horizon, double h,
                                double attractor_tol = 1e-2);

/// CSV columns: x_1..x_d, V.
void write_grid_csv(const LyapunovEstimate& est, const FiniteSet& grid, std::ostream& os);

} // namespace svsa
