#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "mwsieve/common.hpp"

namespace mwsieve {

enum class OutputFormat { Text, Json };

struct SieveConfig {
    i64 prime_bound = 1000;
    i64 smoothness = 7;
    i64 max_residue_count = 10'000'000;
    i64 max_modulus = 1'000'000'000'000;
    int prime_budget = 40;       // identification
    int mismatch_tolerance = 2;  // identification
    std::optional<std::filesystem::path> cache_dir;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::vector<i64>> prime_override;  // bypasses choose_primes
    int workers = 0;  // 0 = available parallelism; 1 = serial

    void check() const;  // throws std::invalid_argument on nonpositive bounds
};

}  // namespace mwsieve
