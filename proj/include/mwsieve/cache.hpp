#pragma once

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "mwsieve/sieve.hpp"

namespace mwsieve {

// Per-prime local data is d-independent: computed once per (N, l), shared by
// every d. Memory map with optional disk persistence keyed by the model
// content hash. Safe for concurrent readers with single-writer insertion.
class LocalDataCache {
  public:
    explicit LocalDataCache(const CurveModelData& model,
                            std::optional<std::filesystem::path> dir = std::nullopt);

    const CurveModelData& model() const { return model_; }

    // Memory -> disk -> compute. Throws on unusable primes (bad reduction,
    // l | 2N) with std::invalid_argument / validation_error.
    const LocalData& get(i64 ell);

    // Order of the reduced generator at ell, without C-enumeration.
    i64 generator_order(i64 ell);

    // True when ell is usable: odd prime, coprime to 2N, nonsingular reduction,
    // generator reducing onto the curve.
    bool usable(i64 ell);

  private:
    const CurveModelData& model_;
    std::optional<std::filesystem::path> dir_;
    std::unordered_map<i64, LocalData> data_;
    std::unordered_map<i64, i64> orders_;
    mutable std::shared_mutex mu_;
};

// On-disk representation (one file per (N, l), keyed by model hash).
std::filesystem::path cache_file_path(const std::filesystem::path& dir, i64 N, i64 ell,
                                      std::string_view model_hash);

// Serialize local data to dir. IO failures surface as io_error.
void store_local_data(const LocalData& data, const std::filesystem::path& dir,
                      std::string_view model_hash);

// Reload; returns nullopt on missing file, stale hash, or any parse problem
// (cache misses are never fatal).
std::optional<LocalData> load_local_data(const std::filesystem::path& dir, i64 N, i64 ell,
                                         std::string_view model_hash);

}  // namespace mwsieve
