#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "mwsieve/cache.hpp"
#include "mwsieve/model.hpp"
#include "mwsieve/sieve.hpp"

using namespace mwsieve;

namespace {

const char* kModel53 = MWSIEVE_SOURCE_DIR "/data/x0_53.json";
const char* kFixture65 = MWSIEVE_SOURCE_DIR "/tests/data/synthetic_65.json";

// Term-by-term evaluator independent of the library's compiled fast path.
i64 oracle_eval(const SparsePolynomial& p, const std::vector<i64>& pt, i64 ell) {
    i64 total = 0;
    for (const Term& t : p.terms()) {
        i64 v = t.coeff.mod(ell);
        for (size_t i = 0; i < t.exps.size(); ++i) {
            v = mulmod(v, powmod(mod_reduce(pt[i], ell), t.exps[i], ell), ell);
        }
        total = (total + v) % ell;
    }
    return total;
}

std::vector<std::vector<i64>> plane_scan(const CurveModelData& m, i64 ell) {
    std::vector<std::vector<i64>> reps;
    for (i64 b = 0; b < ell; ++b) {
        for (i64 c = 0; c < ell; ++c) reps.push_back({1, b, c});
    }
    for (i64 c = 0; c < ell; ++c) reps.push_back({0, 1, c});
    reps.push_back({0, 0, 1});
    std::vector<std::vector<i64>> out;
    for (auto& r : reps) {
        bool on = true;
        for (const auto& eq : m.c_equations) {
            if (oracle_eval(eq, r, ell) != 0) on = false;
        }
        if (on) out.push_back(std::move(r));
    }
    return out;
}

FiberCase oracle_class(i64 q, i64 ell) {
    if (q == 0) return FiberCase::Single;
    return legendre_symbol(q, ell) == 1 ? FiberCase::PairOverBase : FiberCase::ConjugatePair;
}

// Direct-solve construction of the local table: brute-force discrete log of
// every scanned C-point, direct square class, conflicts to Unknown, then the
// pointwise inverse-map patch for unreached indices.
std::vector<FiberCase> oracle_cases(const CurveModelData& m, i64 ell, Coset coset) {
    WeierstrassCurve curve = WeierstrassCurve::make(ell, m.e_coeffs);
    CurvePoint R = reduce_point(m.generator, ell, curve);
    std::vector<CurvePoint> orbit{CurvePoint::inf()};
    for (CurvePoint p = R; !(p == CurvePoint::inf()); p = add(curve, p, R)) orbit.push_back(p);
    i64 G = static_cast<i64>(orbit.size());

    std::vector<CurvePoint> targets = orbit;
    if (coset == Coset::Torsion) {
        CurvePoint Q = reduce_point(*m.torsion, ell, curve);
        for (i64 k = 0; k < G; ++k) targets[static_cast<size_t>(k)] = add(curve, Q, orbit[static_cast<size_t>(k)]);
    }
    auto dlog = [&](const CurvePoint& p) -> i64 {
        for (i64 k = 0; k < G; ++k) {
            if (targets[static_cast<size_t>(k)] == p) return k;
        }
        return -1;
    };

    std::vector<bool> reached(static_cast<size_t>(G), false);
    std::vector<bool> conflict(static_cast<size_t>(G), false);
    std::vector<FiberCase> cases(static_cast<size_t>(G), FiberCase::Unknown);
    for (const auto& pt : plane_scan(m, ell)) {
        std::vector<i64> im{oracle_eval(m.psi[0], pt, ell), oracle_eval(m.psi[1], pt, ell),
                            oracle_eval(m.psi[2], pt, ell)};
        if (im[0] == 0 && im[1] == 0 && im[2] == 0) continue;
        CurvePoint p = im[2] == 0 ? CurvePoint::inf()
                                  : CurvePoint::affine(mulmod(im[0], invmod(im[2], ell), ell),
                                                       mulmod(im[1], invmod(im[2], ell), ell));
        i64 k = dlog(p);
        if (k < 0) continue;  // image in the other coset
        FiberCase cls = oracle_class(oracle_eval(m.q_poly, pt, ell), ell);
        size_t ki = static_cast<size_t>(k);
        if (!reached[ki]) {
            reached[ki] = true;
            cases[ki] = cls;
        } else if (cases[ki] != cls) {
            conflict[ki] = true;
        }
    }
    for (i64 k = 0; k < G; ++k) {
        size_t ki = static_cast<size_t>(k);
        if (conflict[ki]) {
            cases[ki] = FiberCase::Unknown;
            continue;
        }
        if (reached[ki]) continue;
        const CurvePoint& T = targets[ki];
        std::vector<i64> proj = T.infinity ? std::vector<i64>{0, 1, 0}
                                           : std::vector<i64>{T.x, T.y, 1};
        for (const auto& rep : m.inverse_maps) {
            std::vector<i64> v{oracle_eval(rep[0], proj, ell), oracle_eval(rep[1], proj, ell),
                               oracle_eval(rep[2], proj, ell)};
            if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
            bool on = true;
            for (const auto& eq : m.c_equations) {
                if (oracle_eval(eq, v, ell) != 0) on = false;
            }
            if (!on) continue;
            // the patch point must sit back over T wherever psi is defined
            std::vector<i64> back{oracle_eval(m.psi[0], v, ell), oracle_eval(m.psi[1], v, ell),
                                  oracle_eval(m.psi[2], v, ell)};
            if (!(back[0] == 0 && back[1] == 0 && back[2] == 0)) {
                CurvePoint bp = back[2] == 0
                                    ? CurvePoint::inf()
                                    : CurvePoint::affine(mulmod(back[0], invmod(back[2], ell), ell),
                                                         mulmod(back[1], invmod(back[2], ell), ell));
                REQUIRE(bp == T);
            }
            cases[ki] = oracle_class(oracle_eval(m.q_poly, v, ell), ell);
            break;
        }
    }
    return cases;
}

ResidueSet brute_intersect(const ResidueSet& a, const ResidueSet& b) {
    i64 m = std::lcm(a.modulus, b.modulus);
    std::set<i64> sa(a.residues.begin(), a.residues.end());
    std::set<i64> sb(b.residues.begin(), b.residues.end());
    ResidueSet out;
    out.modulus = m;
    out.residues.clear();
    for (i64 r = 0; r < m; ++r) {
        if (sa.contains(r % a.modulus) && sb.contains(r % b.modulus)) out.residues.push_back(r);
    }
    return out;
}

bool trace_steps_equal(const TraceStep& a, const TraceStep& b) {
    return a.ell == b.ell && a.splitting == b.splitting && a.G == b.G && a.allowed == b.allowed &&
           a.allowed_torsion == b.allowed_torsion && a.modulus_after == b.modulus_after &&
           a.count_after == b.count_after && a.combined == b.combined &&
           a.count_torsion_after == b.count_torsion_after &&
           a.combined_torsion == b.combined_torsion;
}

}  // namespace

TEST_CASE("classify_fiber follows the square class") {
    CHECK(classify_fiber(0, 7) == FiberCase::Single);
    CHECK(classify_fiber(4, 7) == FiberCase::PairOverBase);
    CHECK(classify_fiber(2, 7) == FiberCase::PairOverBase);  // 2 = 3^2 mod 7
    CHECK(classify_fiber(3, 7) == FiberCase::ConjugatePair);
    CHECK(classify_fiber(14, 7) == FiberCase::Single);
    CHECK(classify_fiber(-1, 5) == FiberCase::PairOverBase);  // 4 = 2^2
}

TEST_CASE("fiber case letters round-trip") {
    for (FiberCase c : {FiberCase::PairOverBase, FiberCase::ConjugatePair, FiberCase::Single,
                        FiberCase::Unknown}) {
        auto back = fiber_case_from_letter(fiber_case_letter(c));
        REQUIRE(back);
        CHECK(*back == c);
    }
    CHECK(!fiber_case_from_letter('X'));
}

TEST_CASE("local data equals the direct-solve oracle at the validation primes") {
    CurveModelData m = load_model(kModel53);
    for (i64 ell : {3, 5, 7, 11, 13}) {
        CAPTURE(ell);
        auto expect = oracle_cases(m, ell, Coset::Base);
        LocalData ld = compute_local_data(m, ell);
        CHECK(ld.N == 53);
        CHECK(ld.ell == ell);
        CHECK(ld.G == static_cast<i64>(expect.size()));
        CHECK(ld.cases == expect);
        CHECK(!ld.cases_torsion);
        CHECK(compute_local_data_serial(m, ell) == ld);
        CHECK(compute_local_data_pointwise(m, ell) == ld);
    }
}

TEST_CASE("pointwise and enumerated local data agree at every good prime below 200") {
    CurveModelData m = load_model(kModel53);
    for (i64 ell : primes_below(200)) {
        if (ell == 2 || (2 * m.N) % ell == 0) continue;
        CAPTURE(ell);
        LocalData a = compute_local_data(m, ell);
        CHECK(a == compute_local_data_serial(m, ell));
        CHECK(a == compute_local_data_pointwise(m, ell));
        // no Unknowns: the inverse map patches every base point
        CHECK(std::count(a.cases.begin(), a.cases.end(), FiberCase::Unknown) == 0);
    }
}

TEST_CASE("local tables reproduce the published congruence conditions") {
    CurveModelData m = load_model(kModel53);
    LocalData l5 = compute_local_data(m, 5);
    CHECK(l5.G == 6);
    CHECK(allowed_residues(l5, SplittingType::Inert) == std::vector<i64>{3, 5});
    LocalData l7 = compute_local_data(m, 7);
    CHECK(l7.G == 12);
    CHECK(allowed_residues(l7, SplittingType::Split) == std::vector<i64>{0, 3, 4, 7, 11});
    LocalData l11 = compute_local_data(m, 11);
    CHECK(l11.G == 12);
    CHECK(allowed_residues(l11, SplittingType::Inert) == std::vector<i64>{1, 2, 5, 7, 10});
}

TEST_CASE("allowed_residues filters by splitting type") {
    LocalData ld;
    ld.N = 53;
    ld.ell = 99991;
    ld.G = 4;
    ld.cases = {FiberCase::PairOverBase, FiberCase::ConjugatePair, FiberCase::Single,
                FiberCase::Unknown};
    CHECK(allowed_residues(ld, SplittingType::Split) == std::vector<i64>{0, 2, 3});
    CHECK(allowed_residues(ld, SplittingType::Inert) == std::vector<i64>{1, 2, 3});
    CHECK(allowed_residues(ld, SplittingType::Ramified) == std::vector<i64>{2, 3});
    CHECK_THROWS_AS(allowed_residues(ld, SplittingType::Split, Coset::Torsion),
                    std::invalid_argument);
    ld.cases_torsion = std::vector<FiberCase>{FiberCase::Single, FiberCase::Single,
                                              FiberCase::PairOverBase, FiberCase::ConjugatePair};
    CHECK(allowed_residues(ld, SplittingType::Ramified, Coset::Torsion) ==
          std::vector<i64>{0, 1});
    CHECK(allowed_residues(ld, SplittingType::Split, Coset::Torsion) ==
          std::vector<i64>{0, 1, 2});
}

TEST_CASE("intersect reproduces the worked mod-6 / mod-12 example") {
    Guards g;
    ResidueSet acc;  // {0} mod 1
    ResidueSet c5{6, {3, 5}};
    ResidueSet c7{12, {0, 3, 4, 7, 11}};
    ResidueSet c11{12, {1, 2, 5, 7, 10}};
    acc = intersect(acc, c5, g);
    CHECK(acc == ResidueSet{6, {3, 5}});
    acc = intersect(acc, c7, g);
    CHECK(acc == ResidueSet{12, {3, 11}});
    acc = intersect(acc, c11, g);
    CHECK(acc.modulus == 12);
    CHECK(acc.residues.empty());
}

TEST_CASE("intersect with the neutral set is the identity") {
    Guards g;
    ResidueSet neutral;
    ResidueSet s{12, {3, 11}};
    CHECK(intersect(neutral, s, g) == s);
    CHECK(intersect(s, neutral, g) == s);
}

TEST_CASE("intersect matches a brute-force CRT scan on random inputs") {
    std::mt19937_64 rng(2024);
    Guards g;
    std::vector<i64> moduli{2, 3, 4, 5, 6, 8, 9, 10, 12, 15};
    for (int trial = 0; trial < 500; ++trial) {
        i64 ma = moduli[rng() % moduli.size()];
        i64 mb = moduli[rng() % moduli.size()];
        ResidueSet a{ma, {}}, b{mb, {}};
        for (i64 r = 0; r < ma; ++r) {
            if (rng() % 2) a.residues.push_back(r);
        }
        for (i64 r = 0; r < mb; ++r) {
            if (rng() % 2) b.residues.push_back(r);
        }
        ResidueSet got = intersect(a, b, g);
        ResidueSet want = brute_intersect(a, b);
        CHECK(got == want);
        CHECK(std::is_sorted(got.residues.begin(), got.residues.end()));
        CHECK(std::adjacent_find(got.residues.begin(), got.residues.end()) ==
              got.residues.end());
        for (i64 r : got.residues) {
            CHECK(r >= 0);
            CHECK(r < got.modulus);
        }
    }
}

TEST_CASE("intersect chains are order-independent") {
    std::mt19937_64 rng(99);
    Guards g;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ResidueSet> cons;
        for (int i = 0; i < 4; ++i) {
            i64 m = 2 + static_cast<i64>(rng() % 14);
            ResidueSet s{m, {}};
            for (i64 r = 0; r < m; ++r) {
                if (rng() % 3) s.residues.push_back(r);
            }
            cons.push_back(std::move(s));
        }
        std::vector<size_t> perm{0, 1, 2, 3};
        ResidueSet first;
        bool set = false;
        do {
            ResidueSet acc;
            for (size_t i : perm) acc = intersect(acc, cons[i], g);
            if (!set) {
                first = acc;
                set = true;
            } else {
                CHECK(acc == first);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("intersect guards trip on explosive inputs") {
    Guards tight;
    tight.max_modulus = 10;
    ResidueSet a{6, {1, 5}};
    ResidueSet b{4, {1, 3}};
    CHECK_THROWS_AS(intersect(a, b, tight), explosion_error);

    Guards small;
    small.max_residue_count = 3;
    ResidueSet c{4, {0, 1, 2, 3}};
    ResidueSet d{6, {0, 1, 2, 3, 4, 5}};
    CHECK_THROWS_AS(intersect(c, d, small), explosion_error);

    Guards work;
    work.max_residue_count = 1000;  // projected work 6e7 >> 20 * 1000
    ResidueSet big_a{1024, {}}, big_b{59049, {}};
    big_a.residues.resize(1024);
    std::iota(big_a.residues.begin(), big_a.residues.end(), 0);
    big_b.residues.resize(59049);
    std::iota(big_b.residues.begin(), big_b.residues.end(), 0);
    CHECK_THROWS_AS(intersect(big_a, big_b, work), explosion_error);
}

TEST_CASE("choose_primes puts ramified primes first, then the smooth tail") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    auto p47 = choose_primes(cache, -47);
    REQUIRE(!p47.empty());
    CHECK(p47.front() == 47);
    auto p3 = choose_primes(cache, 3);
    REQUIRE(!p3.empty());
    CHECK(p3.front() == 3);
    CHECK(std::count(p3.begin() + 1, p3.end(), 3) == 0);

    std::vector<i64> expected{11,  3,   5,   7,   17,  19,  31,  41,  47,  61,
                              67,  79,  103, 137, 139, 157, 167, 193, 197, 199,
                              239, 307, 313, 317, 347, 373, 389, 419, 433, 457,
                              521, 571, 587, 599, 607, 613, 631, 659, 733, 947};
    CHECK(choose_primes(cache, -11) == expected);

    i64 lcm_G = 1;
    for (i64 ell : expected) lcm_G = std::lcm(lcm_G, cache.generator_order(ell));
    CHECK(lcm_G == 63504000);

    for (i64 ell : choose_primes(cache, -11)) {
        CHECK(ell % 2 == 1);
        CHECK(ell != 53);
        if (ell != 11) CHECK(is_smooth(cache.generator_order(ell), 7));
    }
    CHECK_THROWS_AS(choose_primes(cache, 0), std::invalid_argument);
    CHECK_THROWS_AS(choose_primes(cache, 1), std::invalid_argument);
    CHECK_THROWS_AS(choose_primes(cache, 12), std::invalid_argument);
}

TEST_CASE("run_sieve reproduces the worked d=-47 contradiction") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    SieveConfig cfg;
    cfg.prime_override = std::vector<i64>{5, 7, 11};
    Verdict v = run_sieve(cache, -47, cfg);
    CHECK(v.contradiction);
    REQUIRE(v.trace.size() == 3);

    CHECK(v.trace[0].ell == 5);
    CHECK(v.trace[0].splitting == SplittingType::Inert);
    CHECK(v.trace[0].G == 6);
    CHECK(v.trace[0].allowed == std::vector<i64>{3, 5});
    CHECK(v.trace[0].modulus_after == 6);
    CHECK(v.trace[0].combined == std::vector<i64>{3, 5});

    CHECK(v.trace[1].ell == 7);
    CHECK(v.trace[1].splitting == SplittingType::Split);
    CHECK(v.trace[1].G == 12);
    CHECK(v.trace[1].allowed == std::vector<i64>{0, 3, 4, 7, 11});
    CHECK(v.trace[1].modulus_after == 12);
    CHECK(v.trace[1].combined == std::vector<i64>{3, 11});

    CHECK(v.trace[2].ell == 11);
    CHECK(v.trace[2].splitting == SplittingType::Inert);
    CHECK(v.trace[2].allowed == std::vector<i64>{1, 2, 5, 7, 10});
    CHECK(v.trace[2].count_after == 0);
    CHECK(v.trace[2].combined.empty());
}

TEST_CASE("d=3 dies at the ramified prime 3 alone") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    Verdict v = run_sieve(cache, 3);
    CHECK(v.contradiction);
    REQUIRE(v.trace.size() == 1);
    CHECK(v.trace[0].ell == 3);
    CHECK(v.trace[0].splitting == SplittingType::Ramified);
    CHECK(v.trace[0].count_after == 0);
}

TEST_CASE("d=-11 survivor structure") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    Verdict v = run_sieve(cache, -11);
    CHECK(!v.contradiction);
    CHECK(v.survivors.modulus == 63504000);
    CHECK(v.survivors.residues.size() == 60);
    REQUIRE(v.survivors.residues.size() >= 2);
    CHECK(v.survivors.residues[0] == 1);
    CHECK(v.survivors.residues[1] == 1905121);  // nothing survives in [2, 1905120]
}

TEST_CASE("run_sieve normalizes d through its squarefree part") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    Verdict a = run_sieve(cache, -11);
    Verdict b = run_sieve(cache, -44);  // -44 = -11 * 2^2
    CHECK(a.survivors == b.survivors);
    CHECK(a.trace.size() == b.trace.size());
    CHECK_THROWS_AS(run_sieve(cache, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_sieve(cache, 9), std::invalid_argument);
    CHECK_THROWS_AS(run_sieve(cache, 1), std::invalid_argument);
}

TEST_CASE("sieve soundness: the known fields of definition survive") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    for (i64 d : {-43, -11, -7, -1}) {
        CAPTURE(d);
        Verdict v = run_sieve(cache, d);
        CHECK(!v.contradiction);
        CHECK(!v.survivors.residues.empty());
    }
}

TEST_CASE("run_sieve is deterministic") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache1(m);
    LocalDataCache cache2(m);
    for (i64 d : {-47, -11, 2, 59}) {
        Verdict a = run_sieve(cache1, d);
        Verdict b = run_sieve(cache2, d);
        CHECK(a.contradiction == b.contradiction);
        CHECK(a.survivors == b.survivors);
        REQUIRE(a.trace.size() == b.trace.size());
        for (size_t i = 0; i < a.trace.size(); ++i) {
            CHECK(trace_steps_equal(a.trace[i], b.trace[i]));
        }
    }
}

TEST_CASE("modulus guard propagates out of run_sieve") {
    CurveModelData m = load_model(kModel53);
    LocalDataCache cache(m);
    SieveConfig cfg;
    cfg.max_modulus = 10;
    CHECK_THROWS_AS(run_sieve(cache, -11, cfg), explosion_error);
}

TEST_CASE("torsion-model local data equals the two-coset oracle") {
    CurveModelData m = load_model(kFixture65);
    REQUIRE(m.torsion);
    for (i64 ell : {3, 7, 11, 17, 19}) {
        CAPTURE(ell);
        LocalData ld = compute_local_data(m, ell);
        CHECK(ld.cases == oracle_cases(m, ell, Coset::Base));
        REQUIRE(ld.cases_torsion);
        CHECK(*ld.cases_torsion == oracle_cases(m, ell, Coset::Torsion));
        CHECK(compute_local_data_serial(m, ell) == ld);
    }
}

TEST_CASE("two-coset sieve matches a naive reimplementation") {
    CurveModelData m = load_model(kFixture65);
    LocalDataCache cache(m);
    std::vector<i64> primes{3, 7, 11, 17, 19};
    SieveConfig cfg;
    cfg.prime_override = primes;
    for (i64 d : {-1, 3, -7, 6, -11}) {
        CAPTURE(d);
        Verdict v = run_sieve(cache, d, cfg);
        REQUIRE(v.survivors_torsion);

        ResidueSet base, torsion;
        bool base_alive = true, torsion_alive = true;
        for (i64 ell : primes) {
            LocalData ld = compute_local_data(m, ell);
            SplittingType s = splitting_type(d, ell);
            if (base_alive) {
                base = brute_intersect(base, ResidueSet{ld.G, allowed_residues(ld, s)});
                base_alive = !base.residues.empty();
            }
            if (torsion_alive) {
                torsion = brute_intersect(
                    torsion, ResidueSet{ld.G, allowed_residues(ld, s, Coset::Torsion)});
                torsion_alive = !torsion.residues.empty();
            }
            if (!base_alive && !torsion_alive) break;
        }
        CHECK(v.contradiction == (!base_alive && !torsion_alive));
        if (base_alive) CHECK(v.survivors == base);
        if (torsion_alive) CHECK(*v.survivors_torsion == torsion);
    }
}

TEST_CASE("run_sieve delegates to the two-coset variant for torsion models") {
    CurveModelData m = load_model(kFixture65);
    LocalDataCache cache(m);
    SieveConfig cfg;
    cfg.prime_override = std::vector<i64>{3, 7, 11};
    Verdict v = run_sieve(cache, -1, cfg);
    CHECK(v.survivors_torsion.has_value());
    REQUIRE(!v.trace.empty());
    CHECK(v.trace[0].allowed_torsion.has_value());
    CHECK(v.trace[0].count_torsion_after >= 0);

    CurveModelData m53 = load_model(kModel53);
    LocalDataCache cache53(m53);
    CHECK_THROWS_AS(run_sieve_with_torsion(cache53, -1, {}), std::invalid_argument);
}
