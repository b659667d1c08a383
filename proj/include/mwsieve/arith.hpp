#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mwsieve/common.hpp"

namespace mwsieve {

// Splitting behaviour of an odd prime l in Q(sqrt(d)).
enum class SplittingType { Split, Inert, Ramified };

const char* to_string(SplittingType s);

// Least nonnegative representative of a mod m (m > 0).
i64 mod_reduce(i64 a, i64 m);

// (a * b) mod m via 128-bit product; a, b in [0, m), m > 0.
i64 mulmod(i64 a, i64 b, i64 m);

// a^e mod m, e >= 0, m > 0.
i64 powmod(i64 a, i64 e, i64 m);

// Inverse of a mod m for gcd(a, m) = 1; throws std::invalid_argument otherwise.
i64 invmod(i64 a, i64 m);

bool is_prime(i64 n);

// Ascending primes p < bound.
std::vector<i64> primes_below(i64 bound);

// Prime factors of |n| with multiplicity, ascending. n != 0.
std::vector<i64> factorize(i64 n);

// True iff every prime factor of |n| is <= s (n != 0).
bool is_smooth(i64 n, i64 s);

bool is_squarefree(i64 n);

// Legendre symbol (a/l): 0 iff l | a, 1 for nonzero QRs, -1 otherwise.
// l must be an odd prime.
int legendre_symbol(i64 a, i64 ell);

// Ramified iff l | d, Split iff (d/l) = 1, Inert otherwise.
// d must be squarefree and not 0 or 1; l an odd prime.
SplittingType splitting_type(i64 d, i64 ell);

// The squarefree d with n = d * k^2, k > 0; sign(d) = sign(n). n != 0.
i64 squarefree_part(i64 n);

// lcm(a, b) for positive a, b; throws explosion_error when it would exceed cap.
i64 checked_lcm(i64 a, i64 b, i64 cap);

// Reduce a decimal integer literal (optional leading '-') mod m > 0,
// returning the least nonnegative representative.
i64 decimal_mod(std::string_view digits, i64 m);

// Integer literal as stored in model files: kept exact as a decimal string,
// with a fast path when it fits in 64 bits.
class dec_int {
  public:
    dec_int() : small_(0), fits_(true) {}
    explicit dec_int(i64 v);
    explicit dec_int(std::string decimal);  // throws parse_error on malformed input

    bool fits_i64() const { return fits_; }
    i64 value_i64() const;  // throws std::invalid_argument when !fits_i64()
    const std::string& str() const { return text_; }
    bool is_zero() const;
    bool negative() const;
    i64 mod(i64 m) const;  // least nonnegative representative

    friend bool operator==(const dec_int& a, const dec_int& b) { return a.text_ == b.text_; }

  private:
    std::string text_;  // canonical decimal form, no leading zeros, "-" prefix if negative
    i64 small_ = 0;
    bool fits_ = false;
};

}  // namespace mwsieve
