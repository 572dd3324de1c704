#pragma once

#include <cstddef>
#include <vector>

#include "svsa/vec.hpp"

namespace svsa {

enum class NormKind { WeightedMax, WeightedP, Euclidean };

/// A norm on R^d: weighted max-norm max_i |z_i|/nu_i, weighted p-norm
/// (sum_i w_i |z_i|^p)^(1/p), or the plain Euclidean norm.
struct NormSpec {
    NormKind kind = NormKind::Euclidean;
    std::vector<double> weights; // empty for Euclidean
    double p = 2.0;              // WeightedP only, p >= 1

    static NormSpec euclidean();
    static NormSpec weighted_max(std::vector<double> nu);
    static NormSpec weighted_p(std::vector<double> omega, double p);

    std::size_t dim() const { return weights.size(); }
    double min_weight() const;
    double max_weight() const;
};

double norm_eval(const NormSpec& spec, const Vec& z);
double norm_dist(const NormSpec& spec, const Vec& a, const Vec& b);

/// sup{ ||u||_2 : ||u||_spec <= 1 }. The tight Euclidean circumradius of the
/// unit ball of the norm.
double max_euclidean_radius(const NormSpec& spec);

/// inf{ ||u||_2 : ||u||_spec = 1 }. The Euclidean inradius of the unit ball.
double min_euclidean_radius(const NormSpec& spec);

struct SandwichConstants {
    double lower = 0.0;
    double upper = 0.0;
};

/// Constants (lower, upper) with lower*||z||_spec <= ||z|| <= upper*||z||_spec
/// for the weighted max-norm (lower = nu_min, upper = d*nu_max, Euclidean
/// reference norm). Throws for the Euclidean kind.
SandwichConstants sandwich_constants(const NormSpec& spec, std::size_t d);

/// Constants relating a weighted p-norm to a weighted max-norm:
/// lower*||z||_nu <= ||z||_{omega,p} <= upper*||z||_nu with lower = nu_min and
/// upper = d*omega_max*nu_max. The lower bound requires omega_i >= 1.
SandwichConstants sandwich_constants(const NormSpec& p_spec, const NormSpec& max_spec,
                                     std::size_t d);

/// Metric rho(x,y) = ||x-y||_norm together with the tight analytic dominance
/// constant C satisfying ||x-y|| <= C*rho(x,y).
struct MetricSpec {
    NormSpec norm;
    double dominance_constant = 1.0;

    static MetricSpec from_norm(NormSpec n);
};

inline double metric_dist(const MetricSpec& m, const Vec& a, const Vec& b) {
    return norm_dist(m.norm, a, b);
}

/// Nonempty list of points in R^d, all of the same dimension.
struct FiniteSet {
    std::vector<Vec> points;

    FiniteSet() = default;
    explicit FiniteSet(std::vector<Vec> pts);

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

/// Hausdorff distance between two finite point sets under the metric:
/// max( max_{x in A} min_{y in B} rho(x,y), max_{y in B} min_{x in A} rho(x,y) ).
double hausdorff(const FiniteSet& a, const FiniteSet& b, const MetricSpec& metric);

/// Hausdorff distance between two equal-radius balls of the given norm centered
/// at c1 and c2. Translation invariance makes this exactly ||c1-c2||_norm.
double ball_translate_hausdorff(const Vec& c1, const Vec& c2, double radius,
                                const NormSpec& norm);

} // namespace svsa
