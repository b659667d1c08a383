#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mwsieve {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Error taxonomy. Contract violations on arguments use std::invalid_argument.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct explosion_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mwsieve
