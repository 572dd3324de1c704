#include "svsa/noise.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace svsa {

NoiseModel NoiseModel::zero() { return NoiseModel{}; }

NoiseModel NoiseModel::bounded_iid(double D, IidShape shape) {
    if (!(D >= 0.0)) throw std::invalid_argument("NoiseModel: D must be >= 0");
    NoiseModel m;
    m.kind_ = Kind::BoundedIid;
    m.D_ = D;
    m.shape_ = shape;
    return m;
}

NoiseModel NoiseModel::state_scaled_gaussian(double K) {
    if (!(K > 0.0)) throw std::invalid_argument("NoiseModel: K must be positive");
    NoiseModel m;
    m.kind_ = Kind::StateScaledGaussian;
    m.K_ = K;
    return m;
}

Vec NoiseModel::draw(const Vec& x, std::mt19937_64& rng) const {
    const std::size_t d = x.size();
    switch (kind_) {
    case Kind::Zero:
        return zeros(d);
    case Kind::BoundedIid: {
        Vec m(d);
        switch (shape_) {
        case IidShape::UniformBall: {
            std::normal_distribution<double> g(0.0, 1.0);
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            for (double& v : m) v = g(rng);
            const double n = norm2(m);
            const double rad = D_ * std::pow(u01(rng), 1.0 / static_cast<double>(d));
            m = n > 0.0 ? svsa::scale(rad / n, m) : zeros(d);
            break;
        }
        case IidShape::UniformBox: {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            const double span = D_ / std::sqrt(static_cast<double>(d));
            for (double& v : m) v = span * u(rng);
            break;
        }
        case IidShape::Rademacher: {
            std::uniform_int_distribution<int> coin(0, 1);
            const double span = D_ / std::sqrt(static_cast<double>(d));
            for (double& v : m) v = coin(rng) ? span : -span;
            break;
        }
        }
        assert(norm2(m) <= D_ * (1.0 + 1e-12));
        return m;
    }
    case Kind::StateScaledGaussian: {
        std::normal_distribution<double> g(0.0, 1.0);
        const double sigma = std::sqrt(K_ * (1.0 + dot(x, x)) / static_cast<double>(d));
        Vec m(d);
        for (double& v : m) v = sigma * g(rng);
        return m;
    }
    }
    throw std::logic_error("NoiseModel: unknown kind");
}

} // namespace svsa
