#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace listrec {

struct CriterionResult {
    std::string id;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

const std::vector<std::string>& selftest_ids();

/// Runs the whole fixed-seed acceptance corpus, one result per criterion in
/// selftest_ids() order. cli_path names the command-line binary for the
/// end-to-end determinism check; when empty that check falls back to
/// in-process report serialization.
std::vector<CriterionResult> run_selftest(const std::string& cli_path = "",
                                          std::uint64_t seed = 4242);

}  // namespace listrec
