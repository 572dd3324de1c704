#pragma once

#include <cstdint>
#include <random>

#include "svsa/vec.hpp"

namespace svsa {

/// Martingale-difference noise models. Bounded-iid draws satisfy
/// ||M_{n+1}|| <= D always; state-scaled Gaussian draws satisfy
/// E[||M_{n+1}||^2 | F_n] <= K (1 + ||x_n||^2).
class NoiseModel {
public:
    enum class Kind { Zero, BoundedIid, StateScaledGaussian };
    enum class IidShape { UniformBall, UniformBox, Rademacher };

    static NoiseModel zero();
    static NoiseModel bounded_iid(double D, IidShape shape = IidShape::UniformBall);
    static NoiseModel state_scaled_gaussian(double K);

    /// Draws M given the current state (the state only matters for the
    /// state-scaled kind). Dimension follows x.
    Vec draw(const Vec& x, std::mt19937_64& rng) const;

    Kind kind() const { return kind_; }
    double bound() const { return D_; }
    double scale() const { return K_; }

private:
    Kind kind_ = Kind::Zero;
    IidShape shape_ = IidShape::UniformBall;
    double D_ = 0.0;
    double K_ = 0.0;
};

} // namespace svsa
