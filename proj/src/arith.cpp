#include "mwsieve/arith.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace mwsieve {

const char* to_string(SplittingType s) {
    switch (s) {
        case SplittingType::Split: return "split";
        case SplittingType::Inert: return "inert";
        case SplittingType::Ramified: return "ramified";
    }
    return "?";
}

i64 mod_reduce(i64 a, i64 m) {
    if (m <= 0) throw std::invalid_argument("mod_reduce: modulus must be positive");
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(a) * b) % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
    if (e < 0) throw std::invalid_argument("powmod: negative exponent");
    if (m <= 0) throw std::invalid_argument("powmod: modulus must be positive");
    i64 r = 1 % m;
    a = mod_reduce(a, m);
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 invmod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod_reduce(a, m);
    while (a1) {
        i64 q = g / a1;
        g -= q * a1;
        std::swap(g, a1);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw std::invalid_argument("invmod: not invertible");
    return mod_reduce(x, m);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<i64> primes_below(i64 bound) {
    std::vector<i64> out;
    if (bound <= 2) return out;
    std::vector<bool> comp(static_cast<size_t>(bound), false);
    for (i64 i = 2; i < bound; ++i) {
        if (comp[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j < bound; j += i) comp[static_cast<size_t>(j)] = true;
    }
    return out;
}

std::vector<i64> factorize(i64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    std::vector<i64> out;
    for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            out.push_back(static_cast<i64>(p));
            m /= p;
        }
    }
    if (m > 1) out.push_back(static_cast<i64>(m));
    return out;
}

bool is_smooth(i64 n, i64 s) {
    if (n == 0) throw std::invalid_argument("is_smooth: n must be nonzero");
    auto fs = factorize(n);
    return fs.empty() || fs.back() <= s;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    auto fs = factorize(n);
    return std::adjacent_find(fs.begin(), fs.end()) == fs.end();
}

int legendre_symbol(i64 a, i64 ell) {
    if (ell <= 2 || !is_prime(ell)) {
        throw std::invalid_argument("legendre_symbol: modulus must be an odd prime");
    }
    i64 r = mod_reduce(a, ell);
    if (r == 0) return 0;
    i64 e = powmod(r, (ell - 1) / 2, ell);  // Euler's criterion
    return e == 1 ? 1 : -1;
}

SplittingType splitting_type(i64 d, i64 ell) {
    if (d == 0 || d == 1 || !is_squarefree(d)) {
        throw std::invalid_argument("splitting_type: d must be squarefree and not 0 or 1");
    }
    int s = legendre_symbol(d, ell);
    if (s == 0) return SplittingType::Ramified;
    return s == 1 ? SplittingType::Split : SplittingType::Inert;
}

i64 squarefree_part(i64 n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: n must be nonzero");
    i64 sign = n < 0 ? -1 : 1;
    auto fs = factorize(n);
    i64 out = 1;
    for (size_t i = 0; i < fs.size();) {
        size_t j = i;
        while (j < fs.size() && fs[j] == fs[i]) ++j;
        if ((j - i) % 2) out *= fs[i];
        i = j;
    }
    return sign * out;
}

i64 checked_lcm(i64 a, i64 b, i64 cap) {
    i64 g = std::gcd(a, b);
    i128 l = static_cast<i128>(a / g) * b;
    if (l > cap) throw explosion_error("combinatorial explosion: modulus would exceed limit");
    return static_cast<i64>(l);
}

i64 decimal_mod(std::string_view digits, i64 m) {
    if (m <= 0) throw std::invalid_argument("decimal_mod: modulus must be positive");
    bool neg = false;
    size_t i = 0;
    if (i < digits.size() && (digits[i] == '-' || digits[i] == '+')) {
        neg = digits[i] == '-';
        ++i;
    }
    if (i == digits.size()) throw parse_error("decimal_mod: empty literal");
    i64 r = 0;
    for (; i < digits.size(); ++i) {
        char c = digits[i];
        if (c < '0' || c > '9') throw parse_error("decimal_mod: malformed decimal literal");
        r = (mulmod(r, 10 % m, m) + (c - '0')) % m;
    }
    return neg ? mod_reduce(-r, m) : r;
}

namespace {

std::string canonical_decimal(std::string s) {
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw parse_error("dec_int: empty literal");
    for (size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
            throw parse_error("dec_int: malformed decimal literal '" + s + "'");
        }
    }
    while (i + 1 < s.size() && s[i] == '0') ++i;
    std::string body = s.substr(i);
    if (body == "0") return body;
    return neg ? "-" + body : body;
}

}  // namespace

dec_int::dec_int(i64 v) : text_(std::to_string(v)), small_(v), fits_(true) {}

dec_int::dec_int(std::string decimal) : text_(canonical_decimal(std::move(decimal))) {
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(text_.data(), text_.data() + text_.size(), v);
    fits_ = ec == std::errc() && ptr == text_.data() + text_.size();
    small_ = fits_ ? v : 0;
}

i64 dec_int::value_i64() const {
    if (!fits_) throw std::invalid_argument("dec_int: value exceeds 64 bits");
    return small_;
}

bool dec_int::is_zero() const { return text_ == "0"; }

bool dec_int::negative() const { return !text_.empty() && text_[0] == '-'; }

i64 dec_int::mod(i64 m) const {
    if (fits_) return mod_reduce(small_ % m, m);
    return decimal_mod(text_, m);
}

}  // namespace mwsieve
