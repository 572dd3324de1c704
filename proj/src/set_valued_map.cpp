#include "svsa/set_valued_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svsa {

SetValuedMap::SetValuedMap(std::size_t dim, std::function<Vec(const Vec&)> base,
                           Perturbation pert)
    : dim_(dim), base_(std::move(base)), pert_(std::move(pert)) {
    if (dim_ == 0) throw std::invalid_argument("SetValuedMap: dimension must be positive");
    if (!base_) throw std::invalid_argument("SetValuedMap: base map required");
    if (auto* ball = std::get_if<BallPerturbation>(&pert_)) {
        if (ball->radius < 0.0)
            throw std::invalid_argument("SetValuedMap: ball radius must be >= 0");
        if (ball->norm.kind != NormKind::Euclidean && ball->norm.dim() != dim_)
            throw std::invalid_argument("SetValuedMap: ball norm dimension mismatch");
    }
    if (auto* list = std::get_if<OffsetListPerturbation>(&pert_)) {
        if (list->offsets.empty())
            throw std::invalid_argument("SetValuedMap: offset list must be nonempty");
        for (const Vec& o : list->offsets) require_dim(o, dim_, "SetValuedMap offset");
    }
}

Vec SetValuedMap::base(const Vec& x) const {
    require_dim(x, dim_, "SetValuedMap::base");
    Vec y = base_(x);
    require_dim(y, dim_, "SetValuedMap::base result");
    return y;
}

double SetValuedMap::perturbation_euclidean_radius() const {
    if (std::holds_alternative<NoPerturbation>(pert_)) return 0.0;
    if (const auto* ball = std::get_if<BallPerturbation>(&pert_))
        return ball->radius * max_euclidean_radius(ball->norm);
    const auto& list = std::get<OffsetListPerturbation>(pert_);
    double r = 0.0;
    for (const Vec& o : list.offsets) r = std::max(r, norm2(o));
    return r;
}

namespace {

// Distance from q to the segment [a, b] (Euclidean).
double segment_distance(const Vec& q, const Vec& a, const Vec& b) {
    Vec ab = sub(b, a);
    const double denom = dot(ab, ab);
    double t = denom > 0.0 ? dot(sub(q, a), ab) / denom : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist2(q, axpy(a, t, ab));
}

// Distance from q to conv{offsets} via Frank-Wolfe. Used only for lists with
// three or more offsets; accuracy is adequate for membership screening.
double hull_distance(const Vec& q, const std::vector<Vec>& vs) {
    Vec z = vs.front();
    for (int it = 0; it < 20000; ++it) {
        Vec grad = sub(z, q);
        std::size_t best = 0;
        double best_val = dot(grad, vs[0]);
        for (std::size_t i = 1; i < vs.size(); ++i) {
            const double val = dot(grad, vs[i]);
            if (val < best_val) {
                best_val = val;
                best = i;
            }
        }
        Vec dir = sub(vs[best], z);
        const double denom = dot(dir, dir);
        if (denom <= 0.0) break;
        double t = -dot(grad, dir) / denom;
        if (t <= 0.0) break;
        t = std::min(t, 1.0);
        axpy_inplace(z, t, dir);
    }
    return dist2(q, z);
}

} // namespace

double SetValuedMap::membership_distance(const Vec& x, const Vec& y) const {
    const Vec f = base(x);
    if (std::holds_alternative<NoPerturbation>(pert_)) return dist2(y, f);
    if (const auto* ball = std::get_if<BallPerturbation>(&pert_))
        return std::max(0.0, norm_dist(ball->norm, y, f) - ball->radius);
    const auto& list = std::get<OffsetListPerturbation>(pert_);
    const Vec u = sub(y, f);
    if (list.offsets.size() == 1) return dist2(u, list.offsets.front());
    if (list.offsets.size() == 2)
        return segment_distance(u, list.offsets[0], list.offsets[1]);
    return hull_distance(u, list.offsets);
}

std::vector<Vec> SetValuedMap::extreme_offsets() const {
    std::vector<Vec> out;
    if (std::holds_alternative<NoPerturbation>(pert_)) return out;
    if (const auto* ball = std::get_if<BallPerturbation>(&pert_)) {
        for (std::size_t i = 0; i < dim_; ++i) {
            double span = ball->radius;
            switch (ball->norm.kind) {
            case NormKind::Euclidean:
                break;
            case NormKind::WeightedMax:
                span *= ball->norm.weights[i];
                break;
            case NormKind::WeightedP:
                span *= std::pow(ball->norm.weights[i], -1.0 / ball->norm.p);
                break;
            }
            out.push_back(unit(dim_, i, span));
            out.push_back(unit(dim_, i, -span));
        }
        return out;
    }
    return std::get<OffsetListPerturbation>(pert_).offsets;
}

Vec SetValuedMap::center_offset() const {
    if (const auto* list = std::get_if<OffsetListPerturbation>(&pert_)) {
        Vec c = zeros(dim_);
        for (const Vec& o : list->offsets) axpy_inplace(c, 1.0 / list->offsets.size(), o);
        return c;
    }
    return zeros(dim_);
}

Vec SetValuedMap::draw_offset(std::mt19937_64& rng) const {
    if (std::holds_alternative<NoPerturbation>(pert_)) return zeros(dim_);
    if (const auto* ball = std::get_if<BallPerturbation>(&pert_)) {
        const double r = ball->radius;
        if (r == 0.0) return zeros(dim_);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        switch (ball->norm.kind) {
        case NormKind::WeightedMax: {
            // the ball is a box; coordinates are independent
            Vec u(dim_);
            for (std::size_t i = 0; i < dim_; ++i)
                u[i] = (2.0 * u01(rng) - 1.0) * r * ball->norm.weights[i];
            return u;
        }
        case NormKind::Euclidean: {
            std::normal_distribution<double> g(0.0, 1.0);
            Vec u(dim_);
            for (double& v : u) v = g(rng);
            const double n = norm2(u);
            const double rad = r * std::pow(u01(rng), 1.0 / static_cast<double>(dim_));
            return n > 0.0 ? scale(rad / n, u) : zeros(dim_);
        }
        case NormKind::WeightedP: {
            // rejection from the bounding box
            Vec u(dim_);
            for (int tries = 0; tries < 100000; ++tries) {
                for (std::size_t i = 0; i < dim_; ++i) {
                    const double span = r * std::pow(ball->norm.weights[i], -1.0 / ball->norm.p);
                    u[i] = (2.0 * u01(rng) - 1.0) * span;
                }
                if (norm_eval(ball->norm, u) <= r) return u;
            }
            throw std::runtime_error("draw_offset: rejection sampling failed");
        }
        }
    }
    const auto& list = std::get<OffsetListPerturbation>(pert_);
    if (list.offsets.size() == 1) return list.offsets.front();
    // simplex-uniform convex combination
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(list.offsets.size());
    double total = 0.0;
    for (double& v : w) {
        v = ex(rng);
        total += v;
    }
    Vec u = zeros(dim_);
    for (std::size_t i = 0; i < w.size(); ++i) axpy_inplace(u, w[i] / total, list.offsets[i]);
    return u;
}

Vec selection_offset(const SetValuedMap& map, const Vec& x, const SelectionStrategy& strategy,
                     std::mt19937_64& rng) {
    switch (strategy.kind) {
    case SelectionStrategy::Kind::Center:
        return map.center_offset();
    case SelectionStrategy::Kind::UniformInPerturbation:
        return map.draw_offset(rng);
    case SelectionStrategy::Kind::FixedBias: {
        require_dim(strategy.bias, map.dim(), "SelectionStrategy bias");
        const Vec y = add(map.base(x), strategy.bias);
        if (map.membership_distance(x, y) > kMembershipTol)
            throw MembershipViolation("fixed-bias offset lies outside the perturbation set");
        return strategy.bias;
    }
    case SelectionStrategy::Kind::Callback: {
        if (!strategy.callback)
            throw std::invalid_argument("SelectionStrategy: callback not set");
        const Vec y = strategy.callback(x);
        require_dim(y, map.dim(), "selection callback result");
        if (map.membership_distance(x, y) > kMembershipTol)
            throw MembershipViolation("callback selection lies outside H(x)");
        return sub(y, map.base(x));
    }
    }
    throw std::logic_error("selection_offset: unknown kind");
}

Vec select(const SetValuedMap& map, const Vec& x, const SelectionStrategy& strategy,
           std::mt19937_64& rng) {
    return add(map.base(x), selection_offset(map, x, strategy, rng));
}

MarchaudReport marchaud_report(const SetValuedMap& map, const FiniteSet& grid, double K) {
    if (grid.size() == 0) throw std::invalid_argument("marchaud_report: empty grid");
    MarchaudReport report;
    report.pass = true;
    for (const Vec& x : grid.points) {
        MarchaudRow row;
        row.x = x;
        const Vec f = map.base(x);
        if (const auto* list = std::get_if<OffsetListPerturbation>(&map.perturbation())) {
            // convex max attained at a vertex
            for (const Vec& o : list->offsets) row.sup_norm = std::max(row.sup_norm, norm2(add(f, o)));
        } else {
            row.sup_norm = norm2(f) + map.perturbation_euclidean_radius();
        }
        row.bound = K * (1.0 + norm2(x));
        row.ok = row.sup_norm <= row.bound;
        report.pass = report.pass && row.ok;
        report.rows.push_back(std::move(row));
    }
    report.convexity_note = "values convex and compact by construction";
    report.usc_note = "upper semicontinuity by construction, not numerically tested";
    return report;
}

} // namespace svsa
