#include "mwsieve/ec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mwsieve {

WeierstrassCurve WeierstrassCurve::make(i64 ell, const std::array<i64, 5>& coeffs) {
    if (ell <= 2 || !is_prime(ell)) {
        throw std::invalid_argument("WeierstrassCurve: modulus must be an odd prime");
    }
    WeierstrassCurve c{ell,
                       mod_reduce(coeffs[0], ell),
                       mod_reduce(coeffs[1], ell),
                       mod_reduce(coeffs[2], ell),
                       mod_reduce(coeffs[3], ell),
                       mod_reduce(coeffs[4], ell)};
    if (c.discriminant() == 0) {
        throw validation_error("WeierstrassCurve: singular reduction at l=" + std::to_string(ell));
    }
    return c;
}

i64 WeierstrassCurve::discriminant() const {
    auto mul = [&](i64 a, i64 b) { return mulmod(mod_reduce(a, ell), mod_reduce(b, ell), ell); };
    i64 b2 = mod_reduce(mul(a1, a1) + 4 * a2, ell);
    i64 b4 = mod_reduce(2 * a4 + mul(a1, a3), ell);
    i64 b6 = mod_reduce(mul(a3, a3) + 4 * a6, ell);
    i64 b8 = mod_reduce(mul(mul(a1, a1), a6) + 4 * mul(a2, a6) - mul(a1, mul(a3, a4)) +
                            mul(a2, mul(a3, a3)) - mul(a4, a4),
                        ell);
    i64 d = mod_reduce(-mul(mul(b2, b2), b8) - 8 * mul(b4, mul(b4, b4)) - 27 * mul(b6, b6) +
                           9 * mul(b2, mul(b4, b6)),
                       ell);
    return d;
}

i64 point_key(const WeierstrassCurve& c, const CurvePoint& p) {
    return p.infinity ? -1 : p.x * c.ell + p.y;
}

bool on_curve(const WeierstrassCurve& c, const CurvePoint& p) {
    if (p.infinity) return true;
    i64 l = c.ell;
    i64 lhs = mod_reduce(mulmod(p.y, p.y, l) + mulmod(c.a1, mulmod(p.x, p.y, l), l) +
                             mulmod(c.a3, p.y, l),
                         l);
    i64 x2 = mulmod(p.x, p.x, l);
    i64 rhs = mod_reduce(mulmod(x2, p.x, l) + mulmod(c.a2, x2, l) + mulmod(c.a4, p.x, l) + c.a6, l);
    return lhs == rhs;
}

CurvePoint ec_negate(const WeierstrassCurve& c, const CurvePoint& p) {
    if (p.infinity) return p;
    return CurvePoint::affine(p.x, mod_reduce(-p.y - c.a1 * p.x - c.a3, c.ell));
}

CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p, const CurvePoint& q) {
    if (!on_curve(c, p) || !on_curve(c, q)) {
        throw std::invalid_argument("add: point not on curve");
    }
    if (p.infinity) return q;
    if (q.infinity) return p;
    i64 l = c.ell;
    if (p.x == q.x && mod_reduce(p.y + q.y + c.a1 * q.x + c.a3, l) == 0) {
        return CurvePoint::inf();
    }
    i64 lam;
    if (p.x == q.x) {  // tangent
        i64 num = mod_reduce(3 * mulmod(p.x, p.x, l) + 2 * mulmod(c.a2, p.x, l) + c.a4 -
                                 mulmod(c.a1, p.y, l),
                             l);
        i64 den = mod_reduce(2 * p.y + mulmod(c.a1, p.x, l) + c.a3, l);
        lam = mulmod(num, invmod(den, l), l);
    } else {
        i64 num = mod_reduce(q.y - p.y, l);
        i64 den = mod_reduce(q.x - p.x, l);
        lam = mulmod(num, invmod(den, l), l);
    }
    i64 x3 = mod_reduce(mulmod(lam, lam, l) + mulmod(c.a1, lam, l) - c.a2 - p.x - q.x, l);
    i64 y3 = mod_reduce(-(mulmod(lam, mod_reduce(x3 - p.x, l), l) + p.y) -
                            mulmod(c.a1, x3, l) - c.a3,
                        l);
    return CurvePoint::affine(x3, y3);
}

CurvePoint scalar_mul(const WeierstrassCurve& c, i64 k, const CurvePoint& p) {
    if (k < 0) return scalar_mul(c, -k, ec_negate(c, p));
    CurvePoint acc = CurvePoint::inf();
    CurvePoint base = p;
    while (k) {
        if (k & 1) acc = add(c, acc, base);
        base = add(c, base, base);
        k >>= 1;
    }
    return acc;
}

namespace {

// Euler criterion without re-validating primality (curve construction did).
inline i64 chi(i64 a, i64 l) {
    if (a == 0) return 0;
    return powmod(a, (l - 1) / 2, l) == 1 ? 1 : -1;
}

// Number of y with y^2 + (a1 x + a3) y = f(x): 1 + chi(discriminant).
inline i64 solutions_at_x(const WeierstrassCurve& c, i64 x) {
    i64 l = c.ell;
    i64 x2 = mulmod(x, x, l);
    i64 f = mod_reduce(mulmod(x2, x, l) + mulmod(c.a2, x2, l) + mulmod(c.a4, x, l) + c.a6, l);
    i64 b = mod_reduce(mulmod(c.a1, x, l) + c.a3, l);
    i64 disc = mod_reduce(mulmod(b, b, l) + 4 * f, l);
    return 1 + chi(disc, l);
}

}  // namespace

i64 count_points_serial(const WeierstrassCurve& c) {
    i64 total = 1;  // infinity
    for (i64 x = 0; x < c.ell; ++x) total += solutions_at_x(c, x);
    return total;
}

i64 count_points(const WeierstrassCurve& c) {
    i64 total = 1;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : total) schedule(static) if (c.ell > 512)
#endif
    for (i64 x = 0; x < c.ell; ++x) total += solutions_at_x(c, x);
    return total;
}

i64 point_order(const WeierstrassCurve& c, const CurvePoint& p) {
    if (!on_curve(c, p)) throw std::invalid_argument("point_order: point not on curve");
    if (p.infinity) return 1;
    i64 order = count_points(c);
    for (i64 q : factorize(order)) {
        if (order % q == 0 && scalar_mul(c, order / q, p).infinity) order /= q;
    }
    // factorize lists primes with multiplicity, so each division retries the
    // same prime as long as it keeps the point at infinity
    return order;
}

CurvePoint reduce_point(const std::array<dec_int, 3>& coords, i64 ell,
                        const WeierstrassCurve& curve) {
    i64 X = coords[0].mod(ell), Y = coords[1].mod(ell), Z = coords[2].mod(ell);
    if (X == 0 && Y == 0 && Z == 0) {
        throw std::invalid_argument("reduce_point: unreduced projective input (all entries divisible)");
    }
    if (Z == 0) {
        if (X != 0) throw validation_error("reduce_point: point at infinity off-curve");
        return CurvePoint::inf();
    }
    i64 zi = invmod(Z, ell);
    CurvePoint p = CurvePoint::affine(mulmod(X, zi, ell), mulmod(Y, zi, ell));
    if (!on_curve(curve, p)) {
        throw validation_error("reduce_point: reduction off-curve at l=" + std::to_string(ell));
    }
    return p;
}

}  // namespace mwsieve
