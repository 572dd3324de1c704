#include "svsa/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace svsa {

namespace {

void check_weights(const std::vector<double>& w) {
    if (w.empty()) throw std::invalid_argument("NormSpec: weights must be nonempty");
    for (double v : w)
        if (!(v > 0.0)) throw std::invalid_argument("NormSpec: weights must be strictly positive");
}

} // namespace

NormSpec NormSpec::euclidean() { return NormSpec{NormKind::Euclidean, {}, 2.0}; }

NormSpec NormSpec::weighted_max(std::vector<double> nu) {
    check_weights(nu);
    return NormSpec{NormKind::WeightedMax, std::move(nu), 2.0};
}

NormSpec NormSpec::weighted_p(std::vector<double> omega, double p) {
    check_weights(omega);
    if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: exponent p must be >= 1");
    return NormSpec{NormKind::WeightedP, std::move(omega), p};
}

double NormSpec::min_weight() const {
    return *std::min_element(weights.begin(), weights.end());
}

double NormSpec::max_weight() const {
    return *std::max_element(weights.begin(), weights.end());
}

double norm_eval(const NormSpec& spec, const Vec& z) {
    switch (spec.kind) {
    case NormKind::Euclidean:
        return norm2(z);
    case NormKind::WeightedMax: {
        require_dim(z, spec.weights.size(), "norm_eval");
        double r = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            r = std::max(r, std::abs(z[i]) / spec.weights[i]);
        return r;
    }
    case NormKind::WeightedP: {
        require_dim(z, spec.weights.size(), "norm_eval");
        double s = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            s += spec.weights[i] * std::pow(std::abs(z[i]), spec.p);
        return std::pow(s, 1.0 / spec.p);
    }
    }
    throw std::logic_error("norm_eval: unknown kind");
}

double norm_dist(const NormSpec& spec, const Vec& a, const Vec& b) {
    return norm_eval(spec, sub(a, b));
}

double max_euclidean_radius(const NormSpec& spec) {
    switch (spec.kind) {
    case NormKind::Euclidean:
        return 1.0;
    case NormKind::WeightedMax: {
        // corner of the box {|u_i| <= nu_i}
        double s = 0.0;
        for (double v : spec.weights) s += v * v;
        return std::sqrt(s);
    }
    case NormKind::WeightedP: {
        const double p = spec.p;
        if (p <= 2.0) {
            double r = 0.0;
            for (double w : spec.weights) r = std::max(r, std::pow(w, -1.0 / p));
            return r;
        }
        double s = 0.0;
        for (double w : spec.weights) s += std::pow(w, -2.0 / (p - 2.0));
        return std::pow(s, (p - 2.0) / (2.0 * p));
    }
    }
    throw std::logic_error("max_euclidean_radius: unknown kind");
}

double min_euclidean_radius(const NormSpec& spec) {
    switch (spec.kind) {
    case NormKind::Euclidean:
        return 1.0;
    case NormKind::WeightedMax:
        // nearest face of the box
        return spec.min_weight();
    case NormKind::WeightedP: {
        const double p = spec.p;
        if (p >= 2.0) {
            double r = std::numeric_limits<double>::infinity();
            for (double w : spec.weights) r = std::min(r, std::pow(w, -1.0 / p));
            return r;
        }
        double s = 0.0;
        for (double w : spec.weights) s += std::pow(w, 2.0 / (2.0 - p));
        return std::pow(s, (p - 2.0) / (2.0 * p));
    }
    }
    throw std::logic_error("min_euclidean_radius: unknown kind");
}

SandwichConstants sandwich_constants(const NormSpec& spec, std::size_t d) {
    if (spec.kind == NormKind::Euclidean)
        throw std::invalid_argument("sandwich_constants: no sandwich needed for the Euclidean norm");
    if (spec.weights.size() != d)
        throw std::invalid_argument("sandwich_constants: dimension does not match weights");
    if (spec.kind == NormKind::WeightedMax)
        return {spec.min_weight(), static_cast<double>(d) * spec.max_weight()};
    // Weighted p-norm with the companion max-norm sharing the same weights.
    return sandwich_constants(spec, NormSpec::weighted_max(spec.weights), d);
}

SandwichConstants sandwich_constants(const NormSpec& p_spec, const NormSpec& max_spec,
                                     std::size_t d) {
    if (p_spec.kind != NormKind::WeightedP || max_spec.kind != NormKind::WeightedMax)
        throw std::invalid_argument("sandwich_constants: expected (weighted-p, weighted-max)");
    if (p_spec.weights.size() != d || max_spec.weights.size() != d)
        throw std::invalid_argument("sandwich_constants: dimension does not match weights");
    return {max_spec.min_weight(),
            static_cast<double>(d) * p_spec.max_weight() * max_spec.max_weight()};
}

MetricSpec MetricSpec::from_norm(NormSpec n) {
    MetricSpec m;
    m.dominance_constant = max_euclidean_radius(n);
    m.norm = std::move(n);
    return m;
}

FiniteSet::FiniteSet(std::vector<Vec> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("FiniteSet: must be nonempty");
    const std::size_t d = points.front().size();
    for (const Vec& p : points)
        if (p.size() != d) throw std::invalid_argument("FiniteSet: mixed dimensions");
}

namespace {

double directed_hausdorff(const FiniteSet& a, const FiniteSet& b, const MetricSpec& metric) {
    double worst = 0.0;
    for (const Vec& x : a.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& y : b.points) best = std::min(best, metric_dist(metric, x, y));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double hausdorff(const FiniteSet& a, const FiniteSet& b, const MetricSpec& metric) {
    if (a.size() == 0 || b.size() == 0)
        throw std::invalid_argument("hausdorff: sets must be nonempty");
    if (a.dim() != b.dim()) throw std::invalid_argument("hausdorff: dimension mismatch");
    return std::max(directed_hausdorff(a, b, metric), directed_hausdorff(b, a, metric));
}

double ball_translate_hausdorff(const Vec& c1, const Vec& c2, double radius,
                                const NormSpec& norm) {
    if (radius < 0.0) throw std::invalid_argument("ball_translate_hausdorff: negative radius");
    return norm_dist(norm, c1, c2);
}

} // namespace svsa
