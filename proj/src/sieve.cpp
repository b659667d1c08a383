#include "mwsieve/sieve.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "mwsieve/cache.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mwsieve {

char fiber_case_letter(FiberCase c) {
    switch (c) {
        case FiberCase::PairOverBase: return 'P';
        case FiberCase::ConjugatePair: return 'C';
        case FiberCase::Single: return 'S';
        case FiberCase::Unknown: return 'U';
    }
    return '?';
}

std::optional<FiberCase> fiber_case_from_letter(char ch) {
    switch (ch) {
        case 'P': return FiberCase::PairOverBase;
        case 'C': return FiberCase::ConjugatePair;
        case 'S': return FiberCase::Single;
        case 'U': return FiberCase::Unknown;
    }
    return std::nullopt;
}

FiberCase classify_fiber(i64 q, i64 ell) {
    int s = legendre_symbol(q, ell);
    if (s == 0) return FiberCase::Single;
    return s == 1 ? FiberCase::PairOverBase : FiberCase::ConjugatePair;
}

namespace {

// Merge cell: Empty until a point lands, then a class, Conflict on disagreement.
enum class CellState : std::uint8_t { Empty, Classified, Conflict };

struct Cell {
    CellState state = CellState::Empty;
    FiberCase cls = FiberCase::Unknown;
};

void merge_cell(Cell& cell, FiberCase cls) {
    switch (cell.state) {
        case CellState::Empty:
            cell.state = CellState::Classified;
            cell.cls = cls;
            break;
        case CellState::Classified:
            if (cell.cls != cls) cell.state = CellState::Conflict;
            break;
        case CellState::Conflict:
            break;
    }
}

void merge_cells(std::vector<Cell>& into, const std::vector<Cell>& from) {
    for (size_t i = 0; i < into.size(); ++i) {
        switch (from[i].state) {
            case CellState::Empty: break;
            case CellState::Classified: merge_cell(into[i], from[i].cls); break;
            case CellState::Conflict: into[i].state = CellState::Conflict; break;
        }
    }
}

struct IndexTables {
    WeierstrassCurve curve;
    CurvePoint gen;
    i64 G;
    std::vector<CurvePoint> orbit;                 // k -> k*R
    std::unordered_map<i64, i64> base;             // key(k*R) -> k
    std::unordered_map<i64, i64> torsion;          // key(Q + k*R) -> k
};

IndexTables build_tables(const CurveModelData& model, i64 ell) {
    IndexTables t{reduce_curve(model, ell), {}, 0, {}, {}, {}};
    t.gen = reduce_point(model.generator, ell, t.curve);
    t.G = point_order(t.curve, t.gen);
    t.orbit.reserve(static_cast<size_t>(t.G));
    CurvePoint p = CurvePoint::inf();
    for (i64 k = 0; k < t.G; ++k) {
        t.orbit.push_back(p);
        t.base.emplace(point_key(t.curve, p), k);
        p = add(t.curve, p, t.gen);
    }
    if (model.torsion) {
        CurvePoint q = reduce_point(*model.torsion, ell, t.curve);
        for (i64 k = 0; k < t.G; ++k) {
            t.torsion.emplace(point_key(t.curve, add(t.curve, q, t.orbit[static_cast<size_t>(k)])), k);
        }
    }
    return t;
}

// Map a psi image (projective, not all zero) onto the reduced curve.
CurvePoint psi_image_point(const std::array<i64, 3>& im, const WeierstrassCurve& curve) {
    if (im[2] == 0) {
        if (im[0] != 0) {
            throw validation_error("compute_local_data: psi image off-curve at infinity");
        }
        return CurvePoint::inf();
    }
    i64 zi = invmod(im[2], curve.ell);
    CurvePoint p = CurvePoint::affine(mulmod(im[0], zi, curve.ell), mulmod(im[1], zi, curve.ell));
    if (!on_curve(curve, p)) {
        throw validation_error("compute_local_data: psi image off-curve");
    }
    return p;
}

// Classify the C-point ascribed to an index; records into base/torsion cells.
void classify_point(const CurveModelData& model, i64 ell, const IndexTables& tables,
                    const std::vector<i64>& coords, std::vector<Cell>& base_cells,
                    std::vector<Cell>& torsion_cells) {
    auto im = eval_triple(model.psi, coords, ell);
    if (im[0] == 0 && im[1] == 0 && im[2] == 0) return;  // psi base point
    CurvePoint p = psi_image_point(im, tables.curve);
    i64 key = point_key(tables.curve, p);
    FiberCase cls = classify_fiber(evaluate_poly(model.q_poly, coords, ell), ell);
    if (auto it = tables.base.find(key); it != tables.base.end()) {
        merge_cell(base_cells[static_cast<size_t>(it->second)], cls);
    }
    if (auto it = tables.torsion.find(key); it != tables.torsion.end()) {
        merge_cell(torsion_cells[static_cast<size_t>(it->second)], cls);
    }
}

// rho(T) through the representative list; first defined value that lies on C.
std::optional<ProjectivePoint> apply_inverse(const CurveModelData& model, i64 ell,
                                             const CurvePoint& T) {
    std::array<i64, 3> proj = T.infinity ? std::array<i64, 3>{0, 1, 0}
                                         : std::array<i64, 3>{T.x, T.y, 1};
    for (const auto& rep : model.inverse_maps) {
        auto v = eval_triple(rep, proj, ell);
        auto cp = ProjectivePoint::normalize({v[0], v[1], v[2]}, ell);
        if (!cp) continue;
        bool on_c = true;
        for (const auto& eq : model.c_equations) {
            if (evaluate_poly(eq, cp->coords, ell) != 0) on_c = false;
        }
        if (on_c) return cp;
    }
    return std::nullopt;
}

// Fill indices no enumerated point reached (Empty only; Conflict stays).
void patch_cells(const CurveModelData& model, i64 ell, const IndexTables& tables,
                 std::vector<Cell>& cells, const CurvePoint& offset, bool use_offset) {
    if (model.inverse_maps.empty()) return;
    for (i64 k = 0; k < tables.G; ++k) {
        Cell& cell = cells[static_cast<size_t>(k)];
        if (cell.state != CellState::Empty) continue;
        CurvePoint T = tables.orbit[static_cast<size_t>(k)];
        if (use_offset) T = add(tables.curve, T, offset);
        if (auto cp = apply_inverse(model, ell, T)) {
            cell.state = CellState::Classified;
            cell.cls = classify_fiber(evaluate_poly(model.q_poly, cp->coords, ell), ell);
        }
    }
}

std::vector<FiberCase> finalize_cells(const std::vector<Cell>& cells) {
    std::vector<FiberCase> out;
    out.reserve(cells.size());
    for (const Cell& c : cells) {
        out.push_back(c.state == CellState::Classified ? c.cls : FiberCase::Unknown);
    }
    return out;
}

LocalData assemble(const CurveModelData& model, i64 ell, const IndexTables& tables,
                   std::vector<Cell> base_cells, std::vector<Cell> torsion_cells) {
    CurvePoint q = model.torsion ? reduce_point(*model.torsion, ell, tables.curve)
                                 : CurvePoint::inf();
    patch_cells(model, ell, tables, base_cells, q, false);
    if (model.torsion) patch_cells(model, ell, tables, torsion_cells, q, true);
    LocalData data;
    data.N = model.N;
    data.ell = ell;
    data.G = tables.G;
    data.cases = finalize_cells(base_cells);
    if (model.torsion) data.cases_torsion = finalize_cells(torsion_cells);
    return data;
}

LocalData local_data_enumerated(const CurveModelData& model, i64 ell, bool parallel) {
    IndexTables tables = build_tables(model, ell);
    size_t g = static_cast<size_t>(tables.G);
    std::vector<Cell> base_cells(g), torsion_cells(model.torsion ? g : 0);
    if (model.torsion && torsion_cells.empty()) torsion_cells.resize(g);

    auto points = parallel ? enumerate_C_points(model, ell) : enumerate_C_points_serial(model, ell);
#ifdef _OPENMP
    if (parallel && points.size() > 256) {
        int nt = omp_get_max_threads();
        std::vector<std::vector<Cell>> tl_base(static_cast<size_t>(nt), base_cells);
        std::vector<std::vector<Cell>> tl_tor(static_cast<size_t>(nt), torsion_cells);
#pragma omp parallel for schedule(static)
        for (size_t i = 0; i < points.size(); ++i) {
            int tid = omp_get_thread_num();
            classify_point(model, ell, tables, points[i].coords, tl_base[static_cast<size_t>(tid)],
                           tl_tor[static_cast<size_t>(tid)]);
        }
        for (int t = 0; t < nt; ++t) {
            merge_cells(base_cells, tl_base[static_cast<size_t>(t)]);
            merge_cells(torsion_cells, tl_tor[static_cast<size_t>(t)]);
        }
        return assemble(model, ell, tables, std::move(base_cells), std::move(torsion_cells));
    }
#endif
    for (const auto& pt : points) {
        classify_point(model, ell, tables, pt.coords, base_cells, torsion_cells);
    }
    return assemble(model, ell, tables, std::move(base_cells), std::move(torsion_cells));
}

}  // namespace

LocalData compute_local_data_pointwise(const CurveModelData& model, i64 ell) {
    if (model.inverse_maps.empty()) {
        throw std::invalid_argument("compute_local_data_pointwise: model carries no inverse map");
    }
    IndexTables tables = build_tables(model, ell);
    size_t g = static_cast<size_t>(tables.G);
    std::vector<Cell> base_cells(g), torsion_cells(model.torsion ? g : 0);
    return assemble(model, ell, tables, std::move(base_cells), std::move(torsion_cells));
}

LocalData compute_local_data(const CurveModelData& model, i64 ell) {
    if (model.genus > 5) return compute_local_data_pointwise(model, ell);
    return local_data_enumerated(model, ell, true);
}

LocalData compute_local_data_serial(const CurveModelData& model, i64 ell) {
    if (model.genus > 5) return compute_local_data_pointwise(model, ell);
    return local_data_enumerated(model, ell, false);
}

std::vector<i64> allowed_residues(const LocalData& local, SplittingType s, Coset coset) {
    const std::vector<FiberCase>* cases = &local.cases;
    if (coset == Coset::Torsion) {
        if (!local.cases_torsion) {
            throw std::invalid_argument("allowed_residues: no torsion coset in local data");
        }
        cases = &*local.cases_torsion;
    }
    auto keep = [&](FiberCase c) {
        if (c == FiberCase::Unknown || c == FiberCase::Single) return true;  // always kept
        switch (s) {
            case SplittingType::Split: return c == FiberCase::PairOverBase;
            case SplittingType::Inert: return c == FiberCase::ConjugatePair;
            case SplittingType::Ramified: return false;
        }
        return false;
    };
    std::vector<i64> out;
    for (i64 k = 0; k < local.G; ++k) {
        if (keep((*cases)[static_cast<size_t>(k)])) out.push_back(k);
    }
    return out;
}

ResidueSet intersect(const ResidueSet& acc, const ResidueSet& constraint, const Guards& g) {
    i64 m = checked_lcm(acc.modulus, constraint.modulus, g.max_modulus);
    const ResidueSet* lift = &acc;
    const ResidueSet* filt = &constraint;
    i128 cand_a = static_cast<i128>(acc.residues.size()) * (m / acc.modulus);
    i128 cand_b = static_cast<i128>(constraint.residues.size()) * (m / constraint.modulus);
    if (cand_b < cand_a) std::swap(lift, filt);
    i128 work = std::min(cand_a, cand_b);
    if (work > static_cast<i128>(g.max_residue_count) * 20) {
        throw explosion_error("combinatorial explosion: projected residue work exceeds limit");
    }

    // membership structure for the filtering side
    i64 fm = filt->modulus;
    std::vector<bool> bitmap;
    std::unordered_set<i64> set;
    if (fm <= (1 << 25)) {
        bitmap.assign(static_cast<size_t>(fm), false);
        for (i64 r : filt->residues) bitmap[static_cast<size_t>(r)] = true;
    } else {
        set.insert(filt->residues.begin(), filt->residues.end());
    }
    auto member = [&](i64 r) {
        return bitmap.empty() ? set.contains(r) : bitmap[static_cast<size_t>(r)];
    };

    ResidueSet out;
    out.modulus = m;
    out.residues.clear();
    i64 steps = m / lift->modulus;
    for (i64 r0 : lift->residues) {
        for (i64 j = 0; j < steps; ++j) {
            i64 r = r0 + j * lift->modulus;
            if (!member(r % fm)) continue;
            out.residues.push_back(r);
            if (static_cast<i64>(out.residues.size()) > g.max_residue_count) {
                throw explosion_error("combinatorial explosion: residue count exceeds limit");
            }
        }
    }
    std::sort(out.residues.begin(), out.residues.end());
    return out;
}

std::vector<i64> choose_primes(LocalDataCache& cache, i64 d, i64 bound, i64 smoothness) {
    if (d == 0 || d == 1 || !is_squarefree(d)) {
        throw std::invalid_argument("choose_primes: d must be squarefree and not 0 or 1");
    }
    i64 N = cache.model().N;
    std::vector<i64> ramified;
    for (i64 p : factorize(d)) {
        if (p == 2 || (2 * N) % p == 0) continue;
        if (ramified.empty() || ramified.back() != p) ramified.push_back(p);
    }
    std::erase_if(ramified, [&](i64 p) { return !cache.usable(p); });

    std::vector<i64> tail;
    for (i64 p : primes_below(bound)) {
        if (p == 2 || (2 * N) % p == 0 || d % p == 0) continue;
        if (!cache.usable(p)) continue;
        if (!is_smooth(cache.generator_order(p), smoothness)) continue;
        tail.push_back(p);
    }
    ramified.insert(ramified.end(), tail.begin(), tail.end());
    return ramified;
}

namespace {

struct Accumulator {
    ResidueSet set;
    bool alive = true;
};

void record_combined(const ResidueSet& set, std::vector<i64>& sample, bool& complete) {
    if (static_cast<i64>(set.residues.size()) <= kTraceResidueCap) {
        sample = set.residues;
        complete = true;
    } else {
        sample.assign(set.residues.begin(), set.residues.begin() + kTraceResidueCap);
        complete = false;
    }
}

Verdict run_sieve_impl(LocalDataCache& cache, i64 d, const SieveConfig& config, bool with_torsion) {
    config.check();
    if (d == 0) throw std::invalid_argument("run_sieve: d must be nonzero");
    i64 ds = squarefree_part(d);
    if (ds == 1) {
        throw std::invalid_argument("run_sieve: d is a perfect square, Q(sqrt d) = Q");
    }
    std::vector<i64> primes = config.prime_override
                                  ? *config.prime_override
                                  : choose_primes(cache, ds, config.prime_bound, config.smoothness);
    Guards guards{config.max_residue_count, config.max_modulus};

    Verdict v;
    Accumulator base, torsion;
    torsion.alive = with_torsion;
    for (i64 ell : primes) {
        const LocalData& local = cache.get(ell);
        SplittingType s = splitting_type(ds, ell);
        TraceStep step;
        step.ell = ell;
        step.splitting = s;
        step.G = local.G;
        step.allowed = allowed_residues(local, s, Coset::Base);
        if (base.alive) {
            base.set = intersect(base.set, ResidueSet{local.G, step.allowed}, guards);
            if (base.set.residues.empty()) base.alive = false;
        }
        step.modulus_after = base.set.modulus;
        step.count_after = static_cast<i64>(base.set.residues.size());
        record_combined(base.set, step.combined, step.combined_complete);
        if (with_torsion) {
            step.allowed_torsion = allowed_residues(local, s, Coset::Torsion);
            if (torsion.alive) {
                torsion.set =
                    intersect(torsion.set, ResidueSet{local.G, *step.allowed_torsion}, guards);
                if (torsion.set.residues.empty()) torsion.alive = false;
            }
            step.count_torsion_after = static_cast<i64>(torsion.set.residues.size());
            record_combined(torsion.set, step.combined_torsion, step.combined_torsion_complete);
        }
        v.trace.push_back(std::move(step));
        if (!base.alive && !torsion.alive) break;
    }
    v.contradiction = !base.alive && !torsion.alive;
    v.survivors = base.set;
    if (with_torsion) v.survivors_torsion = torsion.set;
    return v;
}

}  // namespace

Verdict run_sieve(LocalDataCache& cache, i64 d, const SieveConfig& config) {
    if (cache.model().torsion) return run_sieve_with_torsion(cache, d, config);
    return run_sieve_impl(cache, d, config, false);
}

Verdict run_sieve_with_torsion(LocalDataCache& cache, i64 d, const SieveConfig& config) {
    if (!cache.model().torsion) {
        throw std::invalid_argument("run_sieve_with_torsion: model has no torsion point");
    }
    return run_sieve_impl(cache, d, config, true);
}

}  // namespace mwsieve
