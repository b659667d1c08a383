#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mwsieve/arith.hpp"
#include "mwsieve/common.hpp"

namespace mwsieve {

struct Term {
    dec_int coeff;
    std::vector<std::uint8_t> exps;  // length = variable count
};

// Sparse multivariate polynomial with exact integer coefficients.
// Canonical form: terms sorted by exponent vector in descending lexicographic
// order, duplicate exponent vectors merged, zero coefficients dropped.
class SparsePolynomial {
  public:
    SparsePolynomial() = default;

    // Canonicalizes: merges duplicates (exact big-integer addition), drops
    // zeros, sorts. Throws std::invalid_argument on exponent-length mismatch.
    static SparsePolynomial from_terms(int nvars, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }

    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b);

  private:
    int nvars_ = 0;
    std::vector<Term> terms_;
};

// Value of p at point, all arithmetic mod ell > 1.
// Throws std::invalid_argument on length mismatch.
i64 evaluate_poly(const SparsePolynomial& p, std::span<const i64> point, i64 ell);

}  // namespace mwsieve
