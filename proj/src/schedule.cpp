#include "svsa/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace svsa {

StepSchedule StepSchedule::harmonic(double a0) {
    if (!(a0 > 0.0)) throw std::invalid_argument("StepSchedule: a0 must be positive");
    StepSchedule s;
    s.kind = Kind::Harmonic;
    s.a0 = a0;
    return s;
}

StepSchedule StepSchedule::polynomial(double a0, double q) {
    if (!(a0 > 0.0)) throw std::invalid_argument("StepSchedule: a0 must be positive");
    if (!(q > 0.0) || !(q <= 1.0))
        throw std::invalid_argument("StepSchedule: polynomial exponent q must be in (0,1]");
    StepSchedule s;
    s.kind = Kind::Polynomial;
    s.a0 = a0;
    s.q = q;
    return s;
}

StepSchedule StepSchedule::explicit_list(std::vector<double> values) {
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("StepSchedule: entries must be >= 0");
    StepSchedule s;
    s.kind = Kind::Explicit;
    s.values = std::move(values);
    return s;
}

double StepSchedule::at(std::size_t n) const {
    switch (kind) {
    case Kind::Harmonic:
        return a0 / static_cast<double>(n + 1);
    case Kind::Polynomial:
        return a0 / std::pow(static_cast<double>(n + 1), q);
    case Kind::Explicit:
        if (n >= values.size())
            throw std::out_of_range("StepSchedule: explicit list exhausted");
        return values[n];
    }
    throw std::logic_error("StepSchedule: unknown kind");
}

namespace {

// Block-ratio trend of dyadic partial sums: ratios near 1 mean the series is
// still growing (divergent-looking), ratios well below 1 mean geometric decay
// (convergent-looking).
enum class Trend { Divergent, Convergent, Ambiguous };

Trend block_trend(const std::vector<double>& v, bool squared) {
    std::vector<double> blocks;
    std::size_t lo = 0, width = 1;
    while (lo < v.size()) {
        const std::size_t hi = std::min(v.size(), lo + width);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += squared ? v[i] * v[i] : v[i];
        blocks.push_back(s);
        lo = hi;
        width *= 2;
    }
    if (blocks.size() < 4) return Trend::Ambiguous;
    // trailing ratio of consecutive dyadic blocks
    double ratio = 0.0;
    int used = 0;
    for (std::size_t j = blocks.size() >= 6 ? blocks.size() - 3 : blocks.size() - 2;
         j < blocks.size(); ++j) {
        if (blocks[j - 1] > 0.0) {
            ratio = std::max(ratio, blocks[j] / blocks[j - 1]);
            ++used;
        }
    }
    if (used == 0) return Trend::Convergent; // tail is identically zero
    if (ratio >= 0.95) return Trend::Divergent;
    if (ratio <= 0.70) return Trend::Convergent;
    return Trend::Ambiguous;
}

} // namespace

ScheduleVerdict validate_schedule(const StepSchedule& s) {
    switch (s.kind) {
    case StepSchedule::Kind::Harmonic:
        return {ScheduleVerdict::Status::Pass, "harmonic: sum diverges, squared sum converges"};
    case StepSchedule::Kind::Polynomial:
        if (s.q > 0.5)
            return {ScheduleVerdict::Status::Pass,
                    "polynomial q in (1/2,1]: sum diverges, squared sum converges"};
        return {ScheduleVerdict::Status::Fail,
                "polynomial q <= 1/2: sum of a(n)^2 diverges (p-series)"};
    case StepSchedule::Kind::Explicit: {
        const Trend sum_trend = block_trend(s.values, false);
        const Trend sq_trend = block_trend(s.values, true);
        if (sum_trend == Trend::Convergent)
            return {ScheduleVerdict::Status::Fail, "explicit list: partial sums look convergent"};
        if (sq_trend == Trend::Divergent)
            return {ScheduleVerdict::Status::Fail,
                    "explicit list: squared partial sums look divergent"};
        if (sum_trend == Trend::Divergent && sq_trend == Trend::Convergent)
            return {ScheduleVerdict::Status::Pass, "explicit list: heuristic partial-sum test"};
        return {ScheduleVerdict::Status::Inconclusive,
                "explicit list: block-ratio in the ambiguous band; summability undecidable "
                "from a finite prefix"};
    }
    }
    throw std::logic_error("validate_schedule: unknown kind");
}

} // namespace svsa
