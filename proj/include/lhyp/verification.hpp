#pragma once

// The acceptance suite: one record per measured quantity, grouped by
// criterion AC1..AC9, seeded and byte-deterministic.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lhyp {

enum class Comparison { at_most, below, above };
const char* to_string(Comparison c);

struct CheckRecord {
    std::string id;         // e.g. "AC4.maximality"
    std::string criterion;  // "AC4"
    std::string anchor;     // what is asserted, as a formula
    double measured = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::at_most;
    bool pass = false;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerance_overrides;  // by record id
    // AC9 determinism re-runs AC1..AC8; off inside that re-run
    bool self_check = true;
};

std::vector<CheckRecord> run_suite(const SuiteOptions& opt = {});

// Criteria in order with the conjunction of their records.
std::vector<std::pair<std::string, bool>> criterion_summary(const std::vector<CheckRecord>& records);

// JSON report {"seed", "pass", "checks": [...]}, failing records first.
std::string report_json(const std::vector<CheckRecord>& records, std::uint64_t seed);

}  // namespace lhyp
