#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mwsieve/ec.hpp"
#include "mwsieve/poly.hpp"

namespace mwsieve {

// Point of P^{g-2}(F_l), normalized so the first nonzero coordinate is 1.
struct ProjectivePoint {
    std::vector<i64> coords;

    // Returns nullopt when all coordinates vanish mod ell.
    static std::optional<ProjectivePoint> normalize(std::vector<i64> raw, i64 ell);
    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

using QuadricTriple = std::array<SparsePolynomial, 3>;

struct CurveModelData {
    i64 N = 0;
    int genus = 0;
    std::vector<std::string> variables;       // x2 .. xg
    SparsePolynomial q_poly;                  // x1^2 = q_poly(x2..xg)
    std::vector<SparsePolynomial> c_equations;
    QuadricTriple psi;                        // C -> E
    std::array<i64, 5> e_coeffs{};            // a1, a2, a3, a4, a6
    std::array<dec_int, 3> generator;         // R, projective on E
    std::optional<std::array<dec_int, 3>> torsion;  // Q, 2-torsion (N = 65)
    std::vector<QuadricTriple> inverse_maps;  // E -> C representatives, tried in order
    std::optional<std::vector<i64>> expected_D;
    std::string content_hash;                 // fnv1a-64 hex of the source bytes

    int ncoords() const { return static_cast<int>(variables.size()); }
};

// FNV-1a 64-bit hash, lowercase hex.
std::string fnv1a64_hex(std::string_view bytes);

// Parse only (structural checks and the exact-over-Q generator/torsion
// checks; no per-prime validation).
CurveModelData parse_model_file(const std::filesystem::path& path);
CurveModelData parse_model_string(std::string_view json_text);

// Parse + validate a model file. Validation runs validate_model over
// {3,5,7,11,13} minus divisors of 2N and throws validation_error on failures.
CurveModelData load_model(const std::filesystem::path& path);
CurveModelData load_model_from_string(std::string_view json_text);

// Canonical serialization; parse(serialize(parse(x))) == parse(x).
std::string serialize_model(const CurveModelData& model);

// Reductions of the curve data mod ell.
WeierstrassCurve reduce_curve(const CurveModelData& model, i64 ell);
CurvePoint reduce_generator(const CurveModelData& model, i64 ell);
CurvePoint reduce_torsion(const CurveModelData& model, i64 ell);

// Evaluate psi (or an inverse-map representative) at a point, mod ell.
std::array<i64, 3> eval_triple(const QuadricTriple& t, std::span<const i64> point, i64 ell);

// All points of P^{g-2}(F_l) satisfying every c_equation, over the standard
// affine patches (leading coordinate 1), each exactly once. Requires l coprime
// to 2N.
std::vector<ProjectivePoint> enumerate_C_points(const CurveModelData& model, i64 ell);
std::vector<ProjectivePoint> enumerate_C_points_serial(const CurveModelData& model, i64 ell);

struct ValidationIssue {
    std::string check;   // short machine-readable tag
    i64 ell;             // 0 when prime-independent
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> failures;
    std::vector<i64> unusable_primes;  // informational (see psi_vanishing)
    // Per prime, enumerated C-points where all three psi components vanish.
    std::vector<std::pair<i64, std::vector<ProjectivePoint>>> psi_vanishing;
    bool ok() const { return failures.empty(); }
};

/// Per prime: enumerate C, push through psi, check the image lies on the
// reduced curve; check the reduced generator (and 2-torsion when present);
// record psi-vanishing points, marking the prime unusable only when the model
// carries no inverse map to patch with. Report-carrying, never throws.
ValidationReport validate_model(const CurveModelData& model, const std::vector<i64>& primes);

}  // namespace mwsieve
