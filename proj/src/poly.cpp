#include "mwsieve/poly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>

namespace mwsieve {

SparsePolynomial SparsePolynomial::from_terms(int nvars, std::vector<Term> terms) {
    if (nvars < 0) throw std::invalid_argument("SparsePolynomial: negative variable count");
    // exact merge of duplicate exponent vectors
    std::map<std::vector<std::uint8_t>, mpz_class> acc;
    for (auto& t : terms) {
        if (static_cast<int>(t.exps.size()) != nvars) {
            throw std::invalid_argument("SparsePolynomial: exponent vector length mismatch");
        }
        acc[t.exps] += mpz_class(t.coeff.str());
    }
    SparsePolynomial p;
    p.nvars_ = nvars;
    for (auto& [exps, coeff] : acc) {
        if (coeff == 0) continue;
        p.terms_.push_back(Term{dec_int(coeff.get_str()), exps});
    }
    // canonical order: descending lexicographic exponent vectors
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return a.exps > b.exps; });
    return p;
}

bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].exps != b.terms_[i].exps) return false;
        if (!(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    return true;
}

i64 evaluate_poly(const SparsePolynomial& p, std::span<const i64> point, i64 ell) {
    if (ell <= 1) throw std::invalid_argument("evaluate_poly: modulus must exceed 1");
    if (static_cast<int>(point.size()) != p.nvars()) {
        throw std::invalid_argument("evaluate_poly: point length mismatch");
    }
    i64 acc = 0;
    for (const Term& t : p.terms()) {
        i64 v = t.coeff.mod(ell);
        if (v == 0) continue;
        for (size_t i = 0; i < t.exps.size(); ++i) {
            i64 base = mod_reduce(point[i], ell);
            for (int e = t.exps[i]; e > 0; --e) v = mulmod(v, base, ell);
        }
        acc += v;
        if (acc >= ell) acc -= ell;
    }
    return acc;
}

}  // namespace mwsieve
