#pragma once

#include <iosfwd>
#include <vector>

#include "svsa/vec.hpp"

namespace svsa {

/// Full record of a stochastic approximation run. Index convention:
/// iterates has n_steps()+1 entries x_0..x_n; selections, noise, steps and
/// corrections have n_steps() entries; times[n] = sum_{m<n} a(m).
/// corrections[n] is zero for unprojected runs, otherwise g_n = z_n - x~_{n+1}.
struct RunTrace {
    std::vector<Vec> iterates;
    std::vector<Vec> selections;
    std::vector<Vec> noise;
    std::vector<double> steps;
    std::vector<double> times;
    std::vector<Vec> corrections;
    bool diverged = false;
    std::size_t diverged_index = 0;

    std::size_t n_steps() const { return selections.size(); }
    std::size_t dim() const { return iterates.empty() ? 0 : iterates.front().size(); }

    /// Indices n with g_n != 0.
    std::vector<std::size_t> projection_indices() const;

    /// Index of the last nonzero correction; 0 when there is none.
    std::size_t last_projection_index() const;

    /// Mean of the final ceil(fraction * count) iterates.
    Vec tail_average(double fraction) const;
};

/// CSV columns: n, t, a, x_1..x_d, y_1..y_d, M_1..M_d, g_norm. The final row
/// carries the terminal iterate with zero step fields.
void write_csv(const RunTrace& trace, std::ostream& os);

struct SeparationScan {
    double min_separation = 0.0; // min over consecutive projections of t_m - t_n
    std::size_t n_events = 0;
};

/// Cumulative-time separation between consecutive projection events.
SeparationScan projection_separation(const RunTrace& trace);

} // namespace svsa
