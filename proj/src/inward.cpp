#include "svsa/inward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace svsa {

InwardSetPair InwardSetPair::balls(Vec center, double r_b, double r_c, NormSpec norm) {
    if (!(r_b > 0.0) || !(r_b < r_c))
        throw std::invalid_argument("InwardSetPair: need 0 < R_b < R_c");
    if (norm.kind != NormKind::Euclidean && norm.dim() != center.size())
        throw std::invalid_argument("InwardSetPair: norm dimension mismatch");
    InwardSetPair pair;
    pair.ball_ = BallBackend{std::move(center), std::move(norm)};
    pair.r_b_ = r_b;
    pair.r_c_ = r_c;
    return pair;
}

InwardSetPair InwardSetPair::sublevels(std::shared_ptr<const LyapunovEstimate> V, double r_b,
                                       double r_c, double bisect_tol) {
    if (!V) throw std::invalid_argument("InwardSetPair: null Lyapunov estimate");
    if (!(r_b > 0.0) || !(r_b < r_c))
        throw std::invalid_argument("InwardSetPair: need 0 < R_b < R_c");
    InwardSetPair pair;
    pair.lyapunov_ = std::move(V);
    pair.r_b_ = r_b;
    pair.r_c_ = r_c;
    pair.bisect_tol_ = bisect_tol;
    return pair;
}

std::size_t InwardSetPair::dim() const {
    return ball_ ? ball_->center.size() : lyapunov_->map().dim();
}

double InwardSetPair::level_value(const Vec& x) const {
    if (ball_) return norm_dist(ball_->norm, x, ball_->center);
    return lyapunov_->value(x);
}

const Vec& InwardSetPair::ball_center() const {
    if (!ball_) throw std::logic_error("InwardSetPair: not a ball pair");
    return ball_->center;
}

const NormSpec& InwardSetPair::ball_norm() const {
    if (!ball_) throw std::logic_error("InwardSetPair: not a ball pair");
    return ball_->norm;
}

Vec InwardSetPair::project(const Vec& x) const {
    if (in_C(x)) return x;
    if (ball_) {
        const Vec& c = ball_->center;
        if (ball_->norm.kind == NormKind::WeightedMax) {
            // Euclidean nearest point of the box closure(B): per-coordinate clamp
            Vec y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double half = r_b_ * ball_->norm.weights[i];
                y[i] = std::clamp(x[i], c[i] - half, c[i] + half);
            }
            return y;
        }
        // radial selection; exact Euclidean nearest point for Euclidean balls
        const Vec u = sub(x, c);
        const double n = norm_eval(ball_->norm, u);
        return axpy(c, r_b_ / n, u);
    }
    // bisection along the segment from x to the attractor centroid, accepting
    // the first point with V <= R_b
    const Vec target = lyapunov_->attractor_centroid();
    double lo = 0.0; // at x: V > R_b (x is outside C, hence outside B)
    double hi = 1.0;
    if (lyapunov_->value(target) > r_b_)
        throw std::runtime_error("InwardSetPair::project: centroid not inside B");
    const Vec dir = sub(target, x);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = lyapunov_->value(axpy(x, mid, dir));
        if (v <= r_b_)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-14) break;
        if (std::abs(v - r_b_) <= bisect_tol_ && v <= r_b_) {
            hi = mid;
            break;
        }
    }
    return axpy(x, hi, dir);
}

Vec InwardSetPair::ray_point(const Vec& dir, double target_level) const {
    const Vec origin = ball_ ? ball_->center : lyapunov_->attractor_centroid();
    if (ball_) {
        const double n = norm_eval(ball_->norm, dir);
        return axpy(origin, target_level / n, dir);
    }
    // expand until the level is bracketed, then bisect
    double lo = 0.0, hi = 1.0;
    double v_hi = lyapunov_->value(axpy(origin, hi, dir));
    int guard = 0;
    while (v_hi < target_level) {
        lo = hi;
        hi *= 2.0;
        v_hi = lyapunov_->value(axpy(origin, hi, dir));
        if (++guard > 60)
            throw std::runtime_error("InwardSetPair: level not reachable along ray");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = lyapunov_->value(axpy(origin, mid, dir));
        if (v < target_level)
            lo = mid;
        else
            hi = mid;
        if (std::abs(v - target_level) <= bisect_tol_) return axpy(origin, mid, dir);
    }
    return axpy(origin, 0.5 * (lo + hi), dir);
}

Vec InwardSetPair::sample_boundary_C(std::mt19937_64& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec dir(dim());
    double n = 0.0;
    while (n == 0.0) {
        for (double& v : dir) v = g(rng);
        n = norm2(dir);
    }
    return ray_point(scale(1.0 / n, dir), r_c_);
}

double InwardSetPair::boundary_gap() const {
    if (ball_) return (r_c_ - r_b_) * min_euclidean_radius(ball_->norm);
    std::mt19937_64 rng(12345);
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 64; ++i) {
        const Vec x = sample_boundary_C(rng);
        // project() is the identity inside C; nudge outward so the bisection
        // actually lands on closure(B)
        const Vec outward = axpy(x, 1e-6, sub(x, lyapunov_->attractor_centroid()));
        gap = std::min(gap, dist2(x, project(outward)));
    }
    return gap;
}

InwardCheckResult inward_check(const InwardSetPair& pair, const SetValuedMap& map,
                               std::size_t n_boundary, double h, double horizon,
                               std::mt19937_64& rng, InwardCheckOptions opts) {
    InwardCheckResult result;
    result.inward = true;
    result.worst_excess = -std::numeric_limits<double>::infinity();
    const double band = opts.level_band_frac * pair.level_c();

    std::vector<SelectionStrategy> family;
    family.push_back(SelectionStrategy::center());
    for (const Vec& u : map.extreme_offsets())
        family.push_back(SelectionStrategy::fixed_bias(u));

    for (std::size_t i = 0; i < n_boundary; ++i) {
        const Vec start = pair.sample_boundary_C(rng);
        for (const auto& strategy : family) {
            std::mt19937_64 traj_rng(rng());
            Trajectory traj = euler_solve(map, start, h, horizon, strategy, traj_rng);
            if (traj.diverged) {
                result.inward = false;
                if (!result.counterexample) result.counterexample = start;
                result.worst_excess = std::numeric_limits<double>::infinity();
                continue;
            }
            for (std::size_t k = 1; k < traj.states.size(); ++k) {
                if (traj.times[k] <= opts.time_margin) continue;
                const double level = pair.level_value(traj.states[k]);
                result.worst_excess = std::max(result.worst_excess, level - pair.level_c());
                if (level >= pair.level_c() + band) {
                    result.inward = false;
                    if (!result.counterexample) result.counterexample = start;
                    break;
                }
            }
        }
    }
    return result;
}

InwardSetPair build_inward_pair(std::shared_ptr<const LyapunovEstimate> V, double r_b,
                                double r_c) {
    return InwardSetPair::sublevels(std::move(V), r_b, r_c);
}

} // namespace svsa
