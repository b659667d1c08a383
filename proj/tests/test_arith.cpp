#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

#include "mwsieve/arith.hpp"

using namespace mwsieve;

namespace {

// Brute-force quadratic-residue test: scan all squares mod l.
int legendre_brute(i64 a, i64 ell) {
    i64 r = mod_reduce(a, ell);
    if (r == 0) return 0;
    for (i64 x = 1; x < ell; ++x) {
        if (mulmod(x, x, ell) == r) return 1;
    }
    return -1;
}

}  // namespace

TEST_CASE("mod_reduce maps onto [0, m)") {
    CHECK(mod_reduce(7, 5) == 2);
    CHECK(mod_reduce(-1, 5) == 4);
    CHECK(mod_reduce(-10, 5) == 0);
    CHECK(mod_reduce(0, 1) == 0);
    CHECK(mod_reduce(INT64_MIN, 2) == 0);
    CHECK(mod_reduce(INT64_MIN, 3) == 1);  // -2^63 = 1 mod 3
    CHECK_THROWS_AS(mod_reduce(1, 0), std::invalid_argument);
    for (i64 a = -50; a <= 50; ++a) {
        for (i64 m = 1; m <= 12; ++m) {
            i64 r = mod_reduce(a, m);
            CHECK(r >= 0);
            CHECK(r < m);
            CHECK((a - r) % m == 0);
        }
    }
}

TEST_CASE("mulmod and powmod survive 10^12-scale moduli") {
    const i64 m = 999'999'999'989;  // prime just under 10^12
    i64 a = m - 1, b = m - 2;
    // (m-1)(m-2) = m^2 - 3m + 2 = 2 mod m
    CHECK(mulmod(a, b, m) == 2);
    CHECK(powmod(2, 100, m) == [&] {
        i64 r = 1;
        for (int i = 0; i < 100; ++i) r = mulmod(r, 2, m);
        return r;
    }());
    CHECK(powmod(123456789, m - 1, m) == 1);  // Fermat
    CHECK(powmod(5, 0, 7) == 1);
    CHECK(powmod(5, 0, 1) == 0);
    CHECK_THROWS_AS(powmod(2, -1, 7), std::invalid_argument);
}

TEST_CASE("invmod inverts exactly the units") {
    for (i64 m : {2, 3, 4, 6, 7, 12, 97, 63504000}) {
        for (i64 a = 1; a < std::min<i64>(m, 200); ++a) {
            if (std::gcd(a, m) != 1) {
                CHECK_THROWS_AS(invmod(a, m), std::invalid_argument);
            } else {
                CHECK(mulmod(invmod(a, m), a, m) == 1);
            }
        }
    }
    CHECK(invmod(-1, 7) == 6);
}

TEST_CASE("is_prime agrees with the sieve below 10000") {
    auto ps = primes_below(10000);
    size_t k = 0;
    for (i64 n = 0; n < 10000; ++n) {
        bool sieve_prime = k < ps.size() && ps[k] == n;
        if (sieve_prime) ++k;
        CHECK(is_prime(n) == sieve_prime);
    }
}

TEST_CASE("is_prime handles pseudoprime traps and large inputs") {
    CHECK(!is_prime(561));      // Carmichael
    CHECK(!is_prime(1105));
    CHECK(!is_prime(3215031751LL));  // strong pseudoprime to bases 2,3,5,7
    CHECK(is_prime((1LL << 61) - 1));
    CHECK(!is_prime((1LL << 59) - 1));
    CHECK(is_prime(999'999'999'989));
    CHECK(!is_prime(1));
    CHECK(!is_prime(0));
    CHECK(!is_prime(-7));
}

TEST_CASE("primes_below returns the classical list") {
    CHECK(primes_below(2).empty());
    CHECK(primes_below(30) ==
          std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    auto ps = primes_below(1000);
    CHECK(ps.size() == 168);
    CHECK(ps.back() == 997);
}

TEST_CASE("factorize yields ascending factors with multiplicity") {
    CHECK(factorize(53) == std::vector<i64>{53});
    CHECK(factorize(-60) == std::vector<i64>{2, 2, 3, 5});
    CHECK(factorize(1).empty());
    CHECK(factorize(-1).empty());
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    auto fs = factorize(INT64_MIN);
    CHECK(fs.size() == 63);
    CHECK(std::all_of(fs.begin(), fs.end(), [](i64 p) { return p == 2; }));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        i64 n = static_cast<i64>(rng() % 2'000'000) + 2;
        auto f = factorize(n);
        CHECK(std::is_sorted(f.begin(), f.end()));
        i64 prod = 1;
        for (i64 p : f) {
            CHECK(is_prime(p));
            prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("is_smooth matches the factorization") {
    CHECK(is_smooth(63504000, 7));       // 2^7 3^4 5^3 7^2
    CHECK(!is_smooth(63504000 * 11, 7));
    CHECK(is_smooth(1, 2));
    CHECK(is_smooth(-8, 2));
    CHECK(!is_smooth(46, 7));  // 2 * 23
    CHECK_THROWS_AS(is_smooth(0, 7), std::invalid_argument);
}

TEST_CASE("is_squarefree") {
    CHECK(is_squarefree(-11));
    CHECK(is_squarefree(1));
    CHECK(is_squarefree(-1));
    CHECK(is_squarefree(2 * 3 * 5 * 7));
    CHECK(!is_squarefree(12));
    CHECK(!is_squarefree(-4));
    CHECK(!is_squarefree(49));
    CHECK(!is_squarefree(0));
}

TEST_CASE("legendre_symbol equals the brute-force square scan below 100") {
    for (i64 ell : primes_below(100)) {
        if (ell == 2) continue;
        for (i64 a = -2 * ell; a <= 2 * ell; ++a) {
            CAPTURE(a);
            CAPTURE(ell);
            CHECK(legendre_symbol(a, ell) == legendre_brute(a, ell));
        }
    }
}

TEST_CASE("legendre_symbol is multiplicative and balanced") {
    for (i64 ell : {3, 5, 7, 11, 13, 53, 97}) {
        int squares = 0;
        for (i64 a = 1; a < ell; ++a) {
            if (legendre_symbol(a, ell) == 1) ++squares;
            for (i64 b = 1; b < ell; ++b) {
                CHECK(legendre_symbol(a * b, ell) ==
                      legendre_symbol(a, ell) * legendre_symbol(b, ell));
            }
        }
        CHECK(squares == (ell - 1) / 2);
    }
    CHECK_THROWS_AS(legendre_symbol(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre_symbol(3, 15), std::invalid_argument);
}

TEST_CASE("splitting_type on known fields") {
    CHECK(splitting_type(-47, 5) == SplittingType::Inert);
    CHECK(splitting_type(-47, 7) == SplittingType::Split);
    CHECK(splitting_type(-47, 11) == SplittingType::Inert);
    CHECK(splitting_type(3, 3) == SplittingType::Ramified);
    CHECK(splitting_type(-1, 5) == SplittingType::Split);
    CHECK(splitting_type(-1, 7) == SplittingType::Inert);
    CHECK(splitting_type(-11, 11) == SplittingType::Ramified);
    CHECK_THROWS_AS(splitting_type(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(splitting_type(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(splitting_type(12, 5), std::invalid_argument);
}

TEST_CASE("splitting_type matches legendre on every squarefree |d| < 100") {
    for (i64 d = -99; d < 100; ++d) {
        if (d == 0 || d == 1 || !is_squarefree(d)) continue;
        for (i64 ell : {3, 5, 7, 11, 13, 17}) {
            SplittingType s = splitting_type(d, ell);
            int leg = legendre_symbol(d, ell);
            if (leg == 0) CHECK(s == SplittingType::Ramified);
            if (leg == 1) CHECK(s == SplittingType::Split);
            if (leg == -1) CHECK(s == SplittingType::Inert);
        }
    }
}

TEST_CASE("squarefree_part strips exactly the square divisor") {
    CHECK(squarefree_part(12) == 3);
    CHECK(squarefree_part(-1) == -1);
    CHECK(squarefree_part(50) == 2);
    CHECK(squarefree_part(18) == 2);
    CHECK(squarefree_part(-12) == -3);
    CHECK(squarefree_part(4) == 1);
    CHECK(squarefree_part(-4) == -1);
    CHECK_THROWS_AS(squarefree_part(0), std::invalid_argument);
    for (i64 n = -300; n <= 300; ++n) {
        if (n == 0) continue;
        i64 d = squarefree_part(n);
        CHECK(is_squarefree(d));
        CHECK((n < 0) == (d < 0));
        i64 q = n / d;
        CHECK(n % d == 0);
        i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(q))));
        CHECK(r * r == q);               // n / squarefree_part is a perfect square
        CHECK(squarefree_part(d) == d);  // idempotent
    }
}

TEST_CASE("checked_lcm enforces the cap") {
    CHECK(checked_lcm(6, 4, 100) == 12);
    CHECK(checked_lcm(1, 1, 1) == 1);
    CHECK(checked_lcm(63504000, 46, 1'000'000'000'000) == 63504000LL * 23);
    CHECK_THROWS_AS(checked_lcm(1'000'000, 999'999, 1'000'000'000), explosion_error);
}

TEST_CASE("decimal_mod reduces arbitrary-precision literals") {
    // independent oracle: sum of digit * 10^position via powmod
    auto oracle = [](std::string_view s, i64 m) {
        bool neg = s[0] == '-';
        if (neg) s.remove_prefix(1);
        i64 r = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            i64 digit = s[i] - '0';
            i64 place = powmod(10, static_cast<i64>(s.size() - 1 - i), m);
            r = (r + mulmod(mod_reduce(digit, m), place, m)) % m;
        }
        return neg ? mod_reduce(-r, m) : r;
    };
    const std::string big = "123456789012345678901234567890123456789";
    for (i64 m : std::vector<i64>{2, 3, 7, 97, 1009, 999'999'999'989}) {
        CHECK(decimal_mod(big, m) == oracle(big, m));
        CHECK(decimal_mod("-" + big, m) == oracle("-" + big, m));
    }
    CHECK(decimal_mod("0", 7) == 0);
    CHECK(decimal_mod("-0", 7) == 0);
    CHECK(decimal_mod("+14", 7) == 0);
    CHECK_THROWS_AS(decimal_mod("", 7), parse_error);
    CHECK_THROWS_AS(decimal_mod("12a", 7), parse_error);
    CHECK_THROWS_AS(decimal_mod("--3", 7), parse_error);
    CHECK_THROWS_AS(decimal_mod("5", 0), std::invalid_argument);
}

TEST_CASE("dec_int canonicalizes and reduces consistently") {
    CHECK(dec_int("0").is_zero());
    CHECK(dec_int("-0").str() == "0");
    CHECK(dec_int("007").str() == "7");
    CHECK(dec_int("-042").str() == "-42");
    CHECK(dec_int(std::string("123")) == dec_int(i64{123}));
    CHECK(dec_int(i64{-5}).negative());
    CHECK(!dec_int(i64{5}).negative());
    CHECK_THROWS_AS(dec_int(""), parse_error);
    CHECK_THROWS_AS(dec_int("-"), parse_error);
    CHECK_THROWS_AS(dec_int("1e5"), parse_error);

    dec_int small(i64{-123456789});
    CHECK(small.fits_i64());
    CHECK(small.value_i64() == -123456789);
    CHECK(small.mod(97) == mod_reduce(-123456789, 97));

    dec_int big("123456789012345678901234567890");
    CHECK(!big.fits_i64());
    CHECK_THROWS_AS(big.value_i64(), std::invalid_argument);
    CHECK(big.mod(97) == decimal_mod("123456789012345678901234567890", 97));

    dec_int edge(std::to_string(INT64_MAX));
    CHECK(edge.fits_i64());
    CHECK(edge.value_i64() == INT64_MAX);
    dec_int past("9223372036854775808");  // INT64_MAX + 1
    CHECK(!past.fits_i64());
}
