#pragma once

#include <vector>

#include "mwsieve/cache.hpp"
#include "mwsieve/sieve.hpp"

namespace mwsieve {

enum class SquareClass { Square, Nonsquare, Zero, Unknown };

const char* to_string(SquareClass c);

// Square class of q_poly at the C(F_l)-point over t*R~ (plus Q~ for the
// torsion coset); Unknown when no fiber point is computable. Requires a
// usable prime (l coprime to 2N, good reduction).
SquareClass fiber_square_class(LocalDataCache& cache, i64 ell, i64 t,
                               Coset coset = Coset::Base);

struct Observation {
    i64 ell;
    SquareClass cls;
};

struct FieldFingerprint {
    i64 t = 0;
    Coset coset = Coset::Base;
    std::vector<Observation> observations;
};

// Observations over the first prime_budget usable primes coprime to 2N.
FieldFingerprint gather_fingerprint(LocalDataCache& cache, i64 t, Coset coset,
                                    int prime_budget);

// Candidate d survives iff legendre(d, l) matches the observed class at all
// but at most tolerance of the non-Zero, non-Unknown observations. Fewer than
// 10 usable non-Zero observations -> insufficient_data_error. Candidates must
// be squarefree and not 0 or 1.
std::vector<i64> identify_field(LocalDataCache& cache, i64 t, const std::vector<i64>& candidates,
                                int prime_budget = 40, int tolerance = 2,
                                Coset coset = Coset::Base);

// All squarefree d with |d| < bound, d not in {0, 1}, ascending.
std::vector<i64> squarefree_range(i64 bound);

struct TableRow {
    i64 d = 0;
    bool contradiction = false;
    i64 primes_used = 0;
    i64 final_modulus = 1;
    i64 survivor_count = 0;
};

struct PerTIdentification {
    i64 t = 0;
    Coset coset = Coset::Base;
    std::vector<i64> fields;
};

struct TableResult {
    std::vector<i64> D;  // ascending
    std::vector<PerTIdentification> per_t;
    std::vector<TableRow> rows;  // ascending d
};

// Classification engine: identify fields for 0 < |t| <= tBound (both cosets
// when torsion is present), restrict to squarefree |d| < dBound, then run the
// sieve for every squarefree |d| < dBound and check the bidirectional
// consistency (Contradiction exactly off D). Inconsistency raises
// inconsistency_error. Per-d work fans out to config.workers.
TableResult compute_table(LocalDataCache& cache, i64 dBound, i64 tBound,
                          const SieveConfig& config);

// The D_N set alone.
std::vector<i64> compute_DN(LocalDataCache& cache, i64 dBound = 100, i64 tBound = 5,
                            const SieveConfig& config = {});

}  // namespace mwsieve
