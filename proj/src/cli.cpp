#include "mwsieve/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwsieve/cache.hpp"
#include "mwsieve/model.hpp"
#include "mwsieve/quadpoint.hpp"
#include "mwsieve/sieve.hpp"

#include "builtin_model_53.hpp"

namespace mwsieve {

std::string_view builtin_model_53() { return detail::kBuiltinModel53; }

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kReportSchema = "mwsieve-report/1";

struct CommonOpts {
    i64 level = 53;
    std::string model_path;
    std::string format = "text";
    std::string cache_dir;
    SieveConfig config;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--level", o.level, "Level N of X0(N)")->capture_default_str();
    cmd->add_option("--model", o.model_path, "Model JSON file (overrides --level lookup)");
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--cache-dir", o.cache_dir,
                    "Local-data cache directory (default: $MWSIEVE_CACHE_DIR)");
    cmd->add_option("--prime-bound", o.config.prime_bound, "Sieve prime bound")
        ->capture_default_str();
    cmd->add_option("--smoothness", o.config.smoothness, "Smoothness bound on G_l")
        ->capture_default_str();
    cmd->add_option("--max-residues", o.config.max_residue_count, "Residue-set size guard")
        ->capture_default_str();
    cmd->add_option("--max-modulus", o.config.max_modulus, "Combined-modulus guard")
        ->capture_default_str();
    cmd->add_option("--workers", o.config.workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
}

void finish_config(CommonOpts& o) {
    if (!o.cache_dir.empty()) {
        o.config.cache_dir = o.cache_dir;
    } else if (const char* env = std::getenv("MWSIEVE_CACHE_DIR"); env && *env) {
        o.config.cache_dir = std::string(env);
    }
    o.config.format = o.format == "json" ? OutputFormat::Json : OutputFormat::Text;
    o.config.check();
}

// Resolution order: --model, $MWSIEVE_DATA_DIR/x0_<N>.json, ./data/x0_<N>.json,
// built-in copy (N = 53 only). parse_only skips per-prime validation (the
// validate subcommand reports instead of throwing).
CurveModelData resolve_model(const CommonOpts& o, bool parse_only = false) {
    auto from_file = [&](const std::filesystem::path& p) {
        return parse_only ? parse_model_file(p) : load_model(p);
    };
    if (!o.model_path.empty()) return from_file(o.model_path);
    std::string name = "x0_" + std::to_string(o.level) + ".json";
    if (const char* env = std::getenv("MWSIEVE_DATA_DIR"); env && *env) {
        std::filesystem::path p = std::filesystem::path(env) / name;
        if (std::filesystem::exists(p)) return from_file(p);
    }
    std::filesystem::path local = std::filesystem::path("data") / name;
    if (std::filesystem::exists(local)) return from_file(local);
    if (o.level == 53) {
        return parse_only ? parse_model_string(builtin_model_53())
                          : load_model_from_string(builtin_model_53());
    }
    throw io_error("no model file for level " + std::to_string(o.level) + " (looked for " +
                   name + "; pass --model or set MWSIEVE_DATA_DIR)");
}

std::string join_i64(const std::vector<i64>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// "m ≡ 3,11 (mod 12)", or "none" for the empty set.
std::string residue_clause(const std::vector<i64>& v, i64 modulus) {
    if (v.empty()) return "none";
    return "m ≡ " + join_i64(v) + " (mod " + std::to_string(modulus) + ")";
}

std::string fields_str(const std::vector<i64>& fields) {
    return fields.empty() ? std::string("none") : join_i64(fields);
}

std::string point_str(const ProjectivePoint& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.coords.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(p.coords[i]);
    }
    return s + ")";
}

std::string cases_string(const std::vector<FiberCase>& cases) {
    std::string s;
    s.reserve(cases.size());
    for (FiberCase c : cases) s.push_back(fiber_case_letter(c));
    return s;
}

ordered_json residue_set_json(const ResidueSet& rs) {
    constexpr size_t kCap = 1000;
    ordered_json j;
    j["modulus"] = rs.modulus;
    j["count"] = rs.residues.size();
    if (rs.residues.size() <= kCap) {
        j["residues"] = rs.residues;
        j["truncated"] = false;
    } else {
        j["residues"] = std::vector<i64>(rs.residues.begin(),
                                         rs.residues.begin() + static_cast<long>(kCap));
        j["truncated"] = true;
    }
    return j;
}

ordered_json trace_json(const std::vector<TraceStep>& trace) {
    ordered_json arr = ordered_json::array();
    for (const TraceStep& s : trace) {
        ordered_json j;
        j["ell"] = s.ell;
        j["splitting"] = to_string(s.splitting);
        j["G"] = s.G;
        j["allowed"] = s.allowed;
        j["allowed_torsion"] =
            s.allowed_torsion ? ordered_json(*s.allowed_torsion) : ordered_json(nullptr);
        j["modulus"] = s.modulus_after;
        j["count"] = s.count_after;
        j["combined"] = s.combined;
        j["combined_complete"] = s.combined_complete;
        j["count_torsion"] = s.count_torsion_after >= 0 ? ordered_json(s.count_torsion_after)
                                                        : ordered_json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr;
}

// Only the mathematically relevant knobs: reports stay byte-identical across
// worker counts, cache states, and output paths.
ordered_json config_json(const SieveConfig& c) {
    ordered_json j;
    j["prime_bound"] = c.prime_bound;
    j["smoothness"] = c.smoothness;
    j["max_residue_count"] = c.max_residue_count;
    j["max_modulus"] = c.max_modulus;
    j["prime_budget"] = c.prime_budget;
    j["mismatch_tolerance"] = c.mismatch_tolerance;
    return j;
}

void emit_report(std::ostream& out, const CurveModelData& model, std::string_view command,
                 const SieveConfig& config, ordered_json result) {
    ordered_json j;
    j["schema"] = std::string(kReportSchema);
    j["command"] = std::string(command);
    j["N"] = model.N;
    j["model_hash"] = model.content_hash;
    j["config"] = config_json(config);
    j["result"] = std::move(result);
    out << j.dump(2) << '\n';
}

const char* coset_name(Coset c) { return c == Coset::Torsion ? "torsion" : "base"; }

// ---------------------------------------------------------------- sieve ----

void trace_line(std::ostream& out, const TraceStep& s, const char* tag,
                const std::vector<i64>& allowed, const std::vector<i64>& combined,
                bool complete, i64 count) {
    out << "ℓ=" << s.ell << ' ' << to_string(s.splitting) << tag << ": "
        << residue_clause(allowed, s.G) << "; combined: ";
    if (count == 0) {
        out << "none";
    } else if (complete) {
        out << residue_clause(combined, s.modulus_after);
    } else {
        out << count << " residues (mod " << s.modulus_after << ")";
    }
    out << '\n';
}

void print_survivor_set(std::ostream& out, const char* label, const ResidueSet& rs) {
    out << label << " (mod " << rs.modulus << "): " << rs.residues.size() << " residue"
        << (rs.residues.size() == 1 ? "" : "s");
    if (rs.residues.empty()) {
        out << '\n';
        return;
    }
    out << ": ";
    constexpr size_t kShow = 50;
    for (size_t i = 0; i < rs.residues.size() && i < kShow; ++i) {
        if (i) out << ',';
        out << rs.residues[i];
    }
    if (rs.residues.size() > kShow) out << ",...";
    out << '\n';
}

int cmd_sieve(std::ostream& out, CommonOpts& o, i64 d, const std::vector<i64>& primes_flag,
              const std::string& expect) {
    CurveModelData model = resolve_model(o);
    finish_config(o);
    if (!primes_flag.empty()) o.config.prime_override = primes_flag;
    LocalDataCache cache(model, o.config.cache_dir);

    if (d == 0) throw std::invalid_argument("--d must be nonzero");
    i64 ds = squarefree_part(d);
    if (ds == 1) throw std::invalid_argument("--d is a perfect square: Q(sqrt d) = Q");
    std::vector<i64> primes = o.config.prime_override
                                  ? *o.config.prime_override
                                  : choose_primes(cache, ds, o.config.prime_bound,
                                                  o.config.smoothness);
    Verdict v = run_sieve(cache, d, o.config);

    if (o.config.format == OutputFormat::Json) {
        ordered_json r;
        r["d"] = d;
        r["d_squarefree"] = ds;
        r["primes"] = primes;
        r["trace"] = trace_json(v.trace);
        r["verdict"] = v.contradiction ? "CONTRADICTION" : "SURVIVORS";
        r["survivors"] = v.contradiction ? ordered_json(nullptr) : residue_set_json(v.survivors);
        r["survivors_torsion"] = (!v.contradiction && v.survivors_torsion)
                                     ? residue_set_json(*v.survivors_torsion)
                                     : ordered_json(nullptr);
        emit_report(out, model, "sieve", o.config, std::move(r));
    } else {
        out << "X0(" << model.N << "): d=" << d;
        if (ds != d) out << " (squarefree part " << ds << ")";
        out << '\n';
        out << "primes: " << join_i64(primes) << '\n';
        for (const TraceStep& s : v.trace) {
            trace_line(out, s, "", s.allowed, s.combined, s.combined_complete, s.count_after);
            if (s.allowed_torsion) {
                trace_line(out, s, " (coset +Q)", *s.allowed_torsion, s.combined_torsion,
                           s.combined_torsion_complete, s.count_torsion_after);
            }
        }
        out << "verdict: " << (v.contradiction ? "CONTRADICTION" : "SURVIVORS") << '\n';
        if (!v.contradiction) {
            print_survivor_set(out, "survivors", v.survivors);
            if (v.survivors_torsion) {
                print_survivor_set(out, "survivors (coset +Q)", *v.survivors_torsion);
            }
        }
    }

    if (expect == "contradiction" && !v.contradiction) return 1;
    if (expect == "survivors" && v.contradiction) return 1;
    return 0;
}

// ---------------------------------------------------------------- table ----

int cmd_table(std::ostream& out, std::ostream& err, CommonOpts& o, i64 dmax, i64 tmax) {
    CurveModelData model = resolve_model(o);
    finish_config(o);
    LocalDataCache cache(model, o.config.cache_dir);
    TableResult tr;
    try {
        tr = compute_table(cache, dmax, tmax, o.config);
    } catch (const inconsistency_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (o.config.format == OutputFormat::Json) {
        ordered_json r;
        r["dmax"] = dmax;
        r["tmax"] = tmax;
        r["D"] = tr.D;
        ordered_json per_t = ordered_json::array();
        for (const PerTIdentification& p : tr.per_t) {
            per_t.push_back({{"t", p.t}, {"coset", coset_name(p.coset)}, {"fields", p.fields}});
        }
        r["per_t"] = std::move(per_t);
        ordered_json rows = ordered_json::array();
        for (const TableRow& row : tr.rows) {
            rows.push_back({{"d", row.d},
                            {"verdict", row.contradiction ? "CONTRADICTION" : "SURVIVORS"},
                            {"primes_used", row.primes_used},
                            {"final_modulus", row.final_modulus},
                            {"survivor_count", row.survivor_count}});
        }
        r["rows"] = std::move(rows);
        emit_report(out, model, "table", o.config, std::move(r));
    } else {
        out << "X0(" << model.N << "), squarefree |d| < " << dmax << ", |t| <= " << tmax << '\n';
        out << "D = {" << join_i64(tr.D) << "}\n";
        out << "fields by fiber index:\n";
        for (const PerTIdentification& p : tr.per_t) {
            out << "  t=" << p.t;
            if (p.coset == Coset::Torsion) out << " (coset +Q)";
            out << ": " << fields_str(p.fields) << '\n';
        }
        out << "rows:\n";
        for (const TableRow& row : tr.rows) {
            out << "  d=" << row.d << ": ";
            if (row.contradiction) {
                out << "CONTRADICTION (" << row.primes_used << " prime"
                    << (row.primes_used == 1 ? "" : "s") << ")\n";
            } else {
                out << "SURVIVORS — modulus " << row.final_modulus << ", "
                    << row.survivor_count << " residue" << (row.survivor_count == 1 ? "" : "s")
                    << '\n';
            }
        }
    }
    return 0;
}

// ------------------------------------------------------------- localdata ----

int cmd_localdata(std::ostream& out, CommonOpts& o, i64 ell) {
    CurveModelData model = resolve_model(o);
    finish_config(o);
    LocalDataCache cache(model, o.config.cache_dir);
    const LocalData& ld = cache.get(ell);

    auto allowed = [&](SplittingType s, Coset c) { return allowed_residues(ld, s, c); };
    if (o.config.format == OutputFormat::Json) {
        ordered_json r;
        r["ell"] = ld.ell;
        r["G"] = ld.G;
        r["cases"] = cases_string(ld.cases);
        r["cases_torsion"] = ld.cases_torsion ? ordered_json(cases_string(*ld.cases_torsion))
                                              : ordered_json(nullptr);
        ordered_json a;
        a["split"] = allowed(SplittingType::Split, Coset::Base);
        a["inert"] = allowed(SplittingType::Inert, Coset::Base);
        a["ramified"] = allowed(SplittingType::Ramified, Coset::Base);
        r["allowed"] = std::move(a);
        if (ld.cases_torsion) {
            ordered_json at;
            at["split"] = allowed(SplittingType::Split, Coset::Torsion);
            at["inert"] = allowed(SplittingType::Inert, Coset::Torsion);
            at["ramified"] = allowed(SplittingType::Ramified, Coset::Torsion);
            r["allowed_torsion"] = std::move(at);
        } else {
            r["allowed_torsion"] = nullptr;
        }
        emit_report(out, model, "localdata", o.config, std::move(r));
    } else {
        out << "X0(" << model.N << ") local data at ℓ=" << ld.ell << '\n';
        out << "G = " << ld.G << '\n';
        out << "cases: " << cases_string(ld.cases) << '\n';
        if (ld.cases_torsion) out << "cases (coset +Q): " << cases_string(*ld.cases_torsion) << '\n';
        out << "split: " << residue_clause(allowed(SplittingType::Split, Coset::Base), ld.G)
            << '\n';
        out << "inert: " << residue_clause(allowed(SplittingType::Inert, Coset::Base), ld.G)
            << '\n';
        out << "ramified: "
            << residue_clause(allowed(SplittingType::Ramified, Coset::Base), ld.G) << '\n';
        if (ld.cases_torsion) {
            out << "split (coset +Q): "
                << residue_clause(allowed(SplittingType::Split, Coset::Torsion), ld.G) << '\n';
            out << "inert (coset +Q): "
                << residue_clause(allowed(SplittingType::Inert, Coset::Torsion), ld.G) << '\n';
            out << "ramified (coset +Q): "
                << residue_clause(allowed(SplittingType::Ramified, Coset::Torsion), ld.G) << '\n';
        }
    }
    return 0;
}

// ------------------------------------------------------------ find-points ----

int cmd_find_points(std::ostream& out, CommonOpts& o, std::optional<i64> t, i64 tmax, i64 dmax,
                    const std::string& coset_flag) {
    CurveModelData model = resolve_model(o);
    finish_config(o);
    LocalDataCache cache(model, o.config.cache_dir);
    Coset coset = coset_flag == "torsion" ? Coset::Torsion : Coset::Base;
    if (coset == Coset::Torsion && !model.torsion) {
        throw std::invalid_argument("--coset torsion: model has no torsion point");
    }
    std::vector<i64> candidates = squarefree_range(dmax);

    auto identify = [&](i64 ti) {
        return identify_field(cache, ti, candidates, o.config.prime_budget,
                              o.config.mismatch_tolerance, coset);
    };

    if (t) {
        std::vector<i64> fields = identify(*t);
        if (o.config.format == OutputFormat::Json) {
            ordered_json r;
            r["t"] = *t;
            r["coset"] = coset_name(coset);
            r["dmax"] = dmax;
            r["fields"] = fields;
            emit_report(out, model, "find-points", o.config, std::move(r));
        } else {
            out << "t=" << *t;
            if (coset == Coset::Torsion) out << " (coset +Q)";
            out << ": " << fields_str(fields) << '\n';
        }
        return 0;
    }

    std::vector<i64> all;
    std::vector<std::pair<i64, std::vector<i64>>> per_t;
    for (i64 k = 1; k <= tmax; ++k) {
        for (i64 ti : {k, -k}) {
            per_t.emplace_back(ti, identify(ti));
            const auto& f = per_t.back().second;
            all.insert(all.end(), f.begin(), f.end());
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    if (o.config.format == OutputFormat::Json) {
        ordered_json r;
        r["tmax"] = tmax;
        r["coset"] = coset_name(coset);
        r["dmax"] = dmax;
        ordered_json pt = ordered_json::array();
        for (const auto& [ti, fields] : per_t) {
            pt.push_back({{"t", ti}, {"fields", fields}});
        }
        r["per_t"] = std::move(pt);
        r["union"] = all;
        emit_report(out, model, "find-points", o.config, std::move(r));
    } else {
        for (const auto& [ti, fields] : per_t) {
            out << "t=" << ti;
            if (coset == Coset::Torsion) out << " (coset +Q)";
            out << ": " << fields_str(fields) << '\n';
        }
        out << "union: " << fields_str(all) << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- validate ----

int cmd_validate(std::ostream& out, CommonOpts& o, const std::vector<i64>& primes_flag) {
    CurveModelData model = resolve_model(o, /*parse_only=*/true);
    finish_config(o);
    std::vector<i64> primes = primes_flag;
    if (primes.empty()) {
        for (i64 p : {3, 5, 7, 11, 13}) {
            if ((2 * model.N) % p != 0) primes.push_back(p);
        }
    }
    ValidationReport report = validate_model(model, primes);

    if (o.config.format == OutputFormat::Json) {
        ordered_json r;
        r["primes"] = primes;
        r["ok"] = report.ok();
        ordered_json fails = ordered_json::array();
        for (const ValidationIssue& f : report.failures) {
            fails.push_back({{"check", f.check}, {"ell", f.ell}, {"detail", f.detail}});
        }
        r["failures"] = std::move(fails);
        r["unusable_primes"] = report.unusable_primes;
        ordered_json pv = ordered_json::array();
        for (const auto& [ell, pts] : report.psi_vanishing) {
            ordered_json entry;
            entry["ell"] = ell;
            std::vector<std::string> strs;
            strs.reserve(pts.size());
            for (const ProjectivePoint& p : pts) strs.push_back(point_str(p));
            entry["points"] = strs;
            pv.push_back(std::move(entry));
        }
        r["psi_vanishing"] = std::move(pv);
        emit_report(out, model, "validate", o.config, std::move(r));
    } else {
        out << "model: N=" << model.N << " genus=" << model.genus << " hash="
            << model.content_hash << '\n';
        out << "primes: " << join_i64(primes) << '\n';
        if (report.failures.empty()) {
            out << "failures: none\n";
        } else {
            out << "failures:\n";
            for (const ValidationIssue& f : report.failures) {
                out << "  [" << f.check << "]";
                if (f.ell != 0) out << " ℓ=" << f.ell;
                out << ": " << f.detail << '\n';
            }
        }
        out << "unusable primes: "
            << (report.unusable_primes.empty() ? "none" : join_i64(report.unusable_primes))
            << '\n';
        for (const auto& [ell, pts] : report.psi_vanishing) {
            out << "psi vanishing at ℓ=" << ell << ":";
            for (const ProjectivePoint& p : pts) out << ' ' << point_str(p);
            out << '\n';
        }
        out << "result: " << (report.ok() ? "OK" : "FAILED") << '\n';
    }
    return report.ok() ? 0 : 2;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mordell-Weil sieve over quadratic fields for bielliptic X0(N) models"};
    app.name("mwsieve");
    app.require_subcommand(1);

    CommonOpts so;
    i64 sieve_d = 0;
    std::vector<i64> sieve_primes;
    std::string sieve_expect;
    CLI::App* sieve_cmd = app.add_subcommand("sieve", "Sieve one quadratic field Q(sqrt d)");
    add_common_flags(sieve_cmd, so);
    sieve_cmd->add_option("--d", sieve_d, "Field discriminant core d")->required();
    sieve_cmd->add_option("--primes", sieve_primes, "Exact prime list (bypasses selection)")
        ->delimiter(',');
    sieve_cmd->add_option("--expect", sieve_expect, "Fail (exit 1) unless this verdict")
        ->check(CLI::IsMember({"contradiction", "survivors"}));

    CommonOpts to;
    i64 table_dmax = 100, table_tmax = 5;
    CLI::App* table_cmd =
        app.add_subcommand("table", "Sieve all squarefree |d| < dmax and identify D");
    add_common_flags(table_cmd, to);
    table_cmd->add_option("--dmax", table_dmax, "Bound on |d|")->capture_default_str();
    table_cmd->add_option("--tmax", table_tmax, "Bound on fiber index |t|")
        ->capture_default_str();
    table_cmd->add_option("--prime-budget", to.config.prime_budget, "Identification primes")
        ->capture_default_str();
    table_cmd->add_option("--tolerance", to.config.mismatch_tolerance,
                          "Identification mismatch tolerance")
        ->capture_default_str();

    CommonOpts lo;
    i64 localdata_ell = 0;
    CLI::App* local_cmd = app.add_subcommand("localdata", "Inspect local data at one prime");
    add_common_flags(local_cmd, lo);
    local_cmd->add_option("--ell", localdata_ell, "Prime l")->required();

    CommonOpts fo;
    std::optional<i64> fp_t;
    i64 fp_tmax = 5, fp_dmax = 100;
    std::string fp_coset = "base";
    CLI::App* find_cmd =
        app.add_subcommand("find-points", "Identify the quadratic field over fiber indices");
    add_common_flags(find_cmd, fo);
    find_cmd->add_option("--t", fp_t, "Single fiber index t");
    find_cmd->add_option("--tmax", fp_tmax, "Sweep 0 < |t| <= tmax when --t is absent")
        ->capture_default_str();
    find_cmd->add_option("--dmax", fp_dmax, "Candidate bound |d| < dmax")->capture_default_str();
    find_cmd->add_option("--prime-budget", fo.config.prime_budget, "Observation primes")
        ->capture_default_str();
    find_cmd->add_option("--tolerance", fo.config.mismatch_tolerance, "Mismatch tolerance")
        ->capture_default_str();
    find_cmd->add_option("--coset", fp_coset, "Fiber coset")
        ->check(CLI::IsMember({"base", "torsion"}))
        ->capture_default_str();

    CommonOpts vo;
    std::vector<i64> validate_primes;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a model file");
    add_common_flags(validate_cmd, vo);
    validate_cmd->add_option("--primes", validate_primes, "Primes to validate at")
        ->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's fine-grained codes onto the documented contract
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sieve_cmd)) {
            return cmd_sieve(out, so, sieve_d, sieve_primes, sieve_expect);
        }
        if (app.got_subcommand(table_cmd)) return cmd_table(out, err, to, table_dmax, table_tmax);
        if (app.got_subcommand(local_cmd)) return cmd_localdata(out, lo, localdata_ell);
        if (app.got_subcommand(find_cmd)) {
            return cmd_find_points(out, fo, fp_t, fp_tmax, fp_dmax, fp_coset);
        }
        if (app.got_subcommand(validate_cmd)) return cmd_validate(out, vo, validate_primes);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace mwsieve
