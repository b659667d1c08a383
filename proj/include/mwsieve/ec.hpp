#pragma once

#include <array>

#include "mwsieve/arith.hpp"
#include "mwsieve/common.hpp"

namespace mwsieve {

// y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6 over F_l, nonsingular.
struct WeierstrassCurve {
    i64 ell;
    i64 a1, a2, a3, a4, a6;

    // Reduces integer coefficients mod l and checks nonsingularity.
    // Throws validation_error on zero discriminant, std::invalid_argument
    // unless l is an odd prime.
    static WeierstrassCurve make(i64 ell, const std::array<i64, 5>& coeffs);

    i64 discriminant() const;  // mod ell
};

struct CurvePoint {
    bool infinity = true;
    i64 x = 0, y = 0;

    static CurvePoint inf() { return {}; }
    static CurvePoint affine(i64 x, i64 y) { return {false, x, y}; }
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Dense integer key for table lookups: -1 for infinity, x*l + y otherwise.
i64 point_key(const WeierstrassCurve& c, const CurvePoint& p);

bool on_curve(const WeierstrassCurve& c, const CurvePoint& p);

CurvePoint ec_negate(const WeierstrassCurve& c, const CurvePoint& p);

// Chord-and-tangent addition; throws std::invalid_argument for points off the curve.
CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p, const CurvePoint& q);

// k*P by double-and-add; negative k allowed.
CurvePoint scalar_mul(const WeierstrassCurve& c, i64 k, const CurvePoint& p);

// #E(F_l) including infinity, by the x-scan over quadratics in y. O(l).
i64 count_points(const WeierstrassCurve& c);
i64 count_points_serial(const WeierstrassCurve& c);

// Exact order of P: factor #E(F_l), strip primes while the power stays at infinity.
i64 point_order(const WeierstrassCurve& c, const CurvePoint& p);

// Reduce a projective integer triple (X : Y : Z) mod l onto the curve.
// Throws std::invalid_argument when all entries vanish mod l, validation_error
// when the reduction lands off the curve.
CurvePoint reduce_point(const std::array<dec_int, 3>& coords, i64 ell,
                        const WeierstrassCurve& curve);

}  // namespace mwsieve
