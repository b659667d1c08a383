#include "mwsieve/config.hpp"

#include <stdexcept>

namespace mwsieve {

void SieveConfig::check() const {
    if (prime_bound <= 0 || max_residue_count <= 0 || max_modulus <= 0) {
        throw std::invalid_argument("SieveConfig: bounds must be positive");
    }
    if (smoothness < 2) {
        throw std::invalid_argument("SieveConfig: smoothness must be at least 2");
    }
    if (prime_budget <= 0 || mismatch_tolerance < 0) {
        throw std::invalid_argument("SieveConfig: identification parameters out of range");
    }
    if (workers < 0) {
        throw std::invalid_argument("SieveConfig: workers must be nonnegative");
    }
}

}  // namespace mwsieve
