#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skew {

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<std::string> rings;
    long checks = 0;
    long failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0 && checks > 0; }
    /// One key=value line.
    std::string summary() const;
};

std::vector<std::string> suite_names();
/// Runs the named property suite with one shard per ring, concurrently.
/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int samples = 100);

}  // namespace skew
