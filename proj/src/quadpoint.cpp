#include "mwsieve/quadpoint.hpp"

#include <algorithm>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mwsieve {

const char* to_string(SquareClass c) {
    switch (c) {
        case SquareClass::Square: return "square";
        case SquareClass::Nonsquare: return "nonsquare";
        case SquareClass::Zero: return "zero";
        case SquareClass::Unknown: return "unknown";
    }
    return "?";
}

SquareClass fiber_square_class(LocalDataCache& cache, i64 ell, i64 t, Coset coset) {
    const LocalData& local = cache.get(ell);
    const std::vector<FiberCase>* cases = &local.cases;
    if (coset == Coset::Torsion) {
        if (!local.cases_torsion) {
            throw std::invalid_argument("fiber_square_class: no torsion coset in local data");
        }
        cases = &*local.cases_torsion;
    }
    switch ((*cases)[static_cast<size_t>(mod_reduce(t, local.G))]) {
        case FiberCase::PairOverBase: return SquareClass::Square;
        case FiberCase::ConjugatePair: return SquareClass::Nonsquare;
        case FiberCase::Single: return SquareClass::Zero;
        case FiberCase::Unknown: return SquareClass::Unknown;
    }
    return SquareClass::Unknown;
}

FieldFingerprint gather_fingerprint(LocalDataCache& cache, i64 t, Coset coset,
                                    int prime_budget) {
    FieldFingerprint fp;
    fp.t = t;
    fp.coset = coset;
    int used = 0;
    // Scan bound generous enough that prime_budget usable primes always fit.
    for (i64 ell : primes_below(400 + 60 * static_cast<i64>(prime_budget))) {
        if (used >= prime_budget) break;
        if (ell == 2 || (2 * cache.model().N) % ell == 0) continue;
        if (!cache.usable(ell)) continue;
        fp.observations.push_back({ell, fiber_square_class(cache, ell, t, coset)});
        ++used;
    }
    return fp;
}

std::vector<i64> identify_field(LocalDataCache& cache, i64 t, const std::vector<i64>& candidates,
                                int prime_budget, int tolerance, Coset coset) {
    for (i64 d : candidates) {
        if (d == 0 || d == 1 || !is_squarefree(d)) {
            throw std::invalid_argument("identify_field: candidate " + std::to_string(d) +
                                        " is not a valid discriminant core");
        }
    }
    FieldFingerprint fp = gather_fingerprint(cache, t, coset, prime_budget);
    i64 informative = 0;
    for (const Observation& obs : fp.observations) {
        if (obs.cls != SquareClass::Zero && obs.cls != SquareClass::Unknown) ++informative;
    }
    if (informative < 10) {
        throw insufficient_data_error("identify_field: only " + std::to_string(informative) +
                                      " informative observations for t=" + std::to_string(t));
    }
    std::vector<i64> out;
    for (i64 d : candidates) {
        int mismatches = 0;
        for (const Observation& obs : fp.observations) {
            if (obs.cls == SquareClass::Zero || obs.cls == SquareClass::Unknown) continue;
            int s = legendre_symbol(d, obs.ell);
            bool match = (s == 1 && obs.cls == SquareClass::Square) ||
                         (s == -1 && obs.cls == SquareClass::Nonsquare);
            if (!match) ++mismatches;  // l | d observations count as mismatches
        }
        if (mismatches <= tolerance) out.push_back(d);
    }
    return out;
}

std::vector<i64> squarefree_range(i64 bound) {
    std::vector<i64> out;
    for (i64 d = -(bound - 1); d < bound; ++d) {
        if (d == 0 || d == 1) continue;
        if (is_squarefree(d)) out.push_back(d);
    }
    return out;
}

namespace {

std::vector<i64> t_values(i64 tBound) {
    std::vector<i64> out;
    for (i64 t = 1; t <= tBound; ++t) {
        out.push_back(t);
        out.push_back(-t);
    }
    return out;
}

}  // namespace

TableResult compute_table(LocalDataCache& cache, i64 dBound, i64 tBound,
                          const SieveConfig& config) {
    config.check();
    TableResult result;
    std::vector<i64> candidates = squarefree_range(dBound);
    bool has_torsion = cache.model().torsion.has_value();

    std::vector<i64> D;
    for (i64 t : t_values(tBound)) {
        for (Coset coset : {Coset::Base, Coset::Torsion}) {
            if (coset == Coset::Torsion && !has_torsion) continue;
            PerTIdentification ident;
            ident.t = t;
            ident.coset = coset;
            ident.fields = identify_field(cache, t, candidates, config.prime_budget,
                                          config.mismatch_tolerance, coset);
            D.insert(D.end(), ident.fields.begin(), ident.fields.end());
            result.per_t.push_back(std::move(ident));
        }
    }
    std::sort(D.begin(), D.end());
    D.erase(std::unique(D.begin(), D.end()), D.end());

    // Warm the per-prime cache serially before fanning out rows: run_sieve for
    // distinct d mostly shares local tables, so this keeps the parallel section
    // read-only on the cache's hot path.
    for (i64 ell : primes_below(config.prime_bound)) {
        if (ell == 2 || (2 * cache.model().N) % ell == 0) continue;
        if (cache.usable(ell)) cache.get(ell);
    }

    result.rows.resize(candidates.size());
    std::exception_ptr failure;
    int nthreads = static_cast<int>(config.workers);
#ifdef _OPENMP
    if (nthreads <= 0) nthreads = omp_get_max_threads();
#else
    nthreads = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (size_t i = 0; i < candidates.size(); ++i) {
        try {
            i64 d = candidates[i];
            Verdict v = run_sieve(cache, d, config);
            TableRow row;
            row.d = d;
            row.contradiction = v.contradiction;
            row.primes_used = static_cast<i64>(v.trace.size());
            row.final_modulus = v.survivors.modulus;
            row.survivor_count = static_cast<i64>(v.survivors.residues.size());
            if (v.survivors_torsion) {
                row.survivor_count += static_cast<i64>(v.survivors_torsion->residues.size());
            }
            result.rows[i] = row;
        } catch (...) {
#pragma omp critical(mwsieve_table_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    for (const TableRow& row : result.rows) {
        bool in_D = std::binary_search(D.begin(), D.end(), row.d);
        if (in_D && row.contradiction) {
            throw inconsistency_error("d=" + std::to_string(row.d) +
                                      ": sieve contradiction for an identified field of definition");
        }
        if (!in_D && !row.contradiction) {
            throw inconsistency_error("d=" + std::to_string(row.d) +
                                      ": sieve found survivors but no fiber identifies the field");
        }
    }
    result.D = std::move(D);
    return result;
}

std::vector<i64> compute_DN(LocalDataCache& cache, i64 dBound, i64 tBound,
                            const SieveConfig& config) {
    return compute_table(cache, dBound, tBound, config).D;
}

}  // namespace mwsieve
