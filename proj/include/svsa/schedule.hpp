#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace svsa {

/// Step-size sequence a(n): harmonic a0/(n+1), polynomial a0/(n+1)^q with
/// q in (0,1], or an explicit nonnegative list.
struct StepSchedule {
    enum class Kind { Harmonic, Polynomial, Explicit };

    Kind kind = Kind::Harmonic;
    double a0 = 1.0;
    double q = 1.0;
    std::vector<double> values;

    static StepSchedule harmonic(double a0);
    static StepSchedule polynomial(double a0, double q);
    static StepSchedule explicit_list(std::vector<double> values);

    double at(std::size_t n) const;
};

struct ScheduleVerdict {
    enum class Status { Pass, Fail, Inconclusive };
    Status status = Status::Fail;
    std::string reason;

    bool pass() const { return status == Status::Pass; }
};

/// Checks sum a(n) = inf and sum a(n)^2 < inf. Symbolic for the known kinds;
/// explicit lists use a dyadic partial-sum heuristic with a documented
/// inconclusive band (block-ratio in (0.7, 0.95)).
ScheduleVerdict validate_schedule(const StepSchedule& s);

} // namespace svsa
