#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmimo {

struct ValidationOptions {
    std::uint64_t master_seed = 2016;
    unsigned threads = 1;
    // Multiplies the bound-gap coefficient inside the identity checks
    // (criteria 3 and 6). 1.0 = faithful run; anything else must trip those
    // criteria — a self-test that the validation can actually fail.
    double coefficient_fault = 1.0;
};

struct CriterionResult {
    std::string id;      // "C01" .. "C12"
    std::string name;    // short slug, e.g. "bound-enclosure"
    bool passed = false;
    std::string detail;  // measured values or the first failing sub-check
};

// Runs the full acceptance suite: every criterion is evaluated even when an
// earlier one fails, and exceptions inside a criterion fail that criterion
// rather than aborting the run.
std::vector<CriterionResult> run_validation(const ValidationOptions& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);

// One line per criterion: "PASS C01 elementary-equivalence: <detail>".
std::string format_criterion(const CriterionResult& result);

} // namespace dmimo
