#include "svsa/run_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "svsa/io.hpp"

namespace svsa {

std::vector<std::size_t> RunTrace::projection_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t n = 0; n < corrections.size(); ++n)
        if (norm2(corrections[n]) > 0.0) idx.push_back(n);
    return idx;
}

std::size_t RunTrace::last_projection_index() const {
    const auto idx = projection_indices();
    return idx.empty() ? 0 : idx.back();
}

Vec RunTrace::tail_average(double fraction) const {
    const std::size_t count = iterates.size();
    std::size_t window = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(count)));
    window = std::clamp<std::size_t>(window, 1, count);
    Vec avg = zeros(dim());
    for (std::size_t k = count - window; k < count; ++k)
        axpy_inplace(avg, 1.0 / static_cast<double>(window), iterates[k]);
    return avg;
}

void write_csv(const RunTrace& trace, std::ostream& os) {
    const std::size_t d = trace.dim();
    os << "n,t,a";
    for (std::size_t i = 1; i <= d; ++i) os << ",x_" << i;
    for (std::size_t i = 1; i <= d; ++i) os << ",y_" << i;
    for (std::size_t i = 1; i <= d; ++i) os << ",M_" << i;
    os << ",g_norm\n";
    const Vec zero = zeros(d);
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        const bool has_step = n < trace.n_steps();
        os << n << ',' << fmt_g17(trace.times[n]) << ','
           << fmt_g17(has_step ? trace.steps[n] : 0.0);
        for (double v : trace.iterates[n]) os << ',' << fmt_g17(v);
        const Vec& y = has_step ? trace.selections[n] : zero;
        for (double v : y) os << ',' << fmt_g17(v);
        const Vec& m = has_step ? trace.noise[n] : zero;
        for (double v : m) os << ',' << fmt_g17(v);
        const double g = has_step && n < trace.corrections.size() ? norm2(trace.corrections[n]) : 0.0;
        os << ',' << fmt_g17(g) << "\n";
    }
}

SeparationScan projection_separation(const RunTrace& trace) {
    SeparationScan scan;
    scan.min_separation = std::numeric_limits<double>::infinity();
    const auto idx = trace.projection_indices();
    scan.n_events = idx.size();
    for (std::size_t i = 1; i < idx.size(); ++i)
        scan.min_separation =
            std::min(scan.min_separation, trace.times[idx[i]] - trace.times[idx[i - 1]]);
    if (idx.size() < 2) scan.min_separation = std::numeric_limits<double>::infinity();
    return scan;
}

} // namespace svsa
