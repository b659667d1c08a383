#pragma once

#include <optional>
#include <vector>

#include "mwsieve/config.hpp"
#include "mwsieve/model.hpp"

namespace mwsieve {

// Square-class cases of the fiber x1^2 = qtilde over an index m1:
// nonzero square -> PairOverBase (i), nonsquare -> ConjugatePair (ii),
// zero -> Single (iii), no computable fiber point -> Unknown.
enum class FiberCase : std::uint8_t { PairOverBase, ConjugatePair, Single, Unknown };

char fiber_case_letter(FiberCase c);                  // P, C, S, U
std::optional<FiberCase> fiber_case_from_letter(char ch);

FiberCase classify_fiber(i64 q, i64 ell);

enum class Coset { Base, Torsion };

struct LocalData {
    i64 N = 0;
    i64 ell = 0;
    i64 G = 0;  // order of the reduced generator
    std::vector<FiberCase> cases;                        // indexed by m1 in [0, G)
    std::optional<std::vector<FiberCase>> cases_torsion;  // fibers over m1*R + Q

    friend bool operator==(const LocalData&, const LocalData&) = default;
};

// Build the local table at ell (ell coprime to 2N, nonsingular reduction):
// enumerate C(F_l), bucket psi-images by index in <R~> (and in the Q~ coset
// when torsion is present), classify by the square class of q_poly; indices
// conflicting across points stay Unknown; indices no enumerated point reached
// are patched pointwise through the inverse map when the model carries one.
LocalData compute_local_data(const CurveModelData& model, i64 ell);
LocalData compute_local_data_serial(const CurveModelData& model, i64 ell);

// Pointwise-only variant (requires inverse maps): classify each index from
// rho(m*R~) directly, no enumeration. Used wholesale for large-genus models.
LocalData compute_local_data_pointwise(const CurveModelData& model, i64 ell);

// Split keeps {PairOverBase, Single, Unknown}; Inert keeps {ConjugatePair,
// Single, Unknown}; Ramified keeps {Single, Unknown}.
std::vector<i64> allowed_residues(const LocalData& local, SplittingType s,
                                  Coset coset = Coset::Base);

// Sorted duplicate-free residues in [0, modulus).
struct ResidueSet {
    i64 modulus = 1;
    std::vector<i64> residues{0};

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;
};

struct Guards {
    i64 max_residue_count = 10'000'000;
    i64 max_modulus = 1'000'000'000'000;
};

// CRT intersection: modulus becomes lcm(M, G); keeps r with r mod M in acc and
// r mod G in constraint. Lifts the smaller set and filters against the other.
// Throws explosion_error when a guard trips.
ResidueSet intersect(const ResidueSet& acc, const ResidueSet& constraint, const Guards& g);

class LocalDataCache;  // cache.hpp

// Prime selection: odd primes l | d with l coprime to 2N (ascending), then odd
// primes l < bound, l coprime to 2N and to d, with smoothness-smooth G_l
// (ascending). d must be squarefree, not 0 or 1.
std::vector<i64> choose_primes(LocalDataCache& cache, i64 d, i64 bound = 1000,
                               i64 smoothness = 7);

// Residues kept verbatim in a trace step; larger accumulators record counts
// only (combined_complete = false).
inline constexpr i64 kTraceResidueCap = 50;

struct TraceStep {
    i64 ell = 0;
    SplittingType splitting = SplittingType::Split;
    i64 G = 0;
    std::vector<i64> allowed;
    std::optional<std::vector<i64>> allowed_torsion;
    i64 modulus_after = 1;
    i64 count_after = 0;
    std::vector<i64> combined;  // accumulator after this step, capped
    bool combined_complete = true;
    i64 count_torsion_after = -1;  // -1 when no torsion coset
    std::vector<i64> combined_torsion;
    bool combined_torsion_complete = true;
};

struct Verdict {
    bool contradiction = false;
    std::vector<TraceStep> trace;
    ResidueSet survivors;  // meaningful when !contradiction
    std::optional<ResidueSet> survivors_torsion;
};

// The sieve: d is normalized through squarefree_part (perfect squares and 0
// are invalid); primes come from choose_primes unless config.prime_override is
// set; accumulation stops at the first empty set, otherwise the list is
// exhausted. Delegates to the two-coset variant when the model has torsion.
Verdict run_sieve(LocalDataCache& cache, i64 d, const SieveConfig& config = {});

// Two independent accumulations (base and torsion coset); Contradiction iff
// both become empty.
Verdict run_sieve_with_torsion(LocalDataCache& cache, i64 d, const SieveConfig& config = {});

}  // namespace mwsieve
