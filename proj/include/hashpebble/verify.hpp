#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hashpebble/owf.hpp"

namespace hashpebble {

struct VerifyOptions {
    unsigned k_max = 10;
    Owf owf = builtin("testmix64");
    std::optional<Value> seed;  // default_seed(owf) when absent
    /// Deliberate defect to confirm the suite notices it; see fault_names().
    std::optional<std::string> fault;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Faults understood by VerifyOptions::fault.
std::vector<std::string_view> fault_names();

/// Runs the self-checks (schedule algebra, oracle reversal, work and storage
/// bounds, in-place equivalence, counter decoding) for orders up to k_max.
/// Throws ConfigError for an unknown fault name.
std::vector<PropertyResult> run_verification(const VerifyOptions& options);

}  // namespace hashpebble
