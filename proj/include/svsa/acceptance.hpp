#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace svsa {

struct CriterionResult {
    int index = 0;
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string comparison = "<="; // measured <comparison> threshold
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> notes; // failing sub-checks, context
};

struct AcceptanceOptions {
    /// Replaces the passing polynomial schedule in the validator criterion;
    /// used as a forced negative control.
    std::optional<double> tamper_schedule_q;
};

/// Runs every acceptance criterion at its documented scale. Failures are
/// rows, not exceptions.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

void print_acceptance(const std::vector<CriterionResult>& rows, std::ostream& os);

bool all_pass(const std::vector<CriterionResult>& rows);

} // namespace svsa
