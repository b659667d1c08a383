#include "mwsieve/cache.hpp"

#include <fstream>
#include <mutex>
#include <string>

#include <json.hpp>

#include "mwsieve/ec.hpp"

namespace mwsieve {

namespace {

constexpr std::string_view kCacheSchema = "mwsieve-cache/1";

std::string cases_to_string(const std::vector<FiberCase>& cases) {
    std::string s;
    s.reserve(cases.size());
    for (FiberCase c : cases) s.push_back(fiber_case_letter(c));
    return s;
}

std::optional<std::vector<FiberCase>> cases_from_string(const std::string& s) {
    std::vector<FiberCase> out;
    out.reserve(s.size());
    for (char ch : s) {
        auto c = fiber_case_from_letter(ch);
        if (!c) return std::nullopt;
        out.push_back(*c);
    }
    return out;
}

}  // namespace

std::filesystem::path cache_file_path(const std::filesystem::path& dir, i64 N, i64 ell,
                                      std::string_view model_hash) {
    return dir / ("x0_" + std::to_string(N) + "_l" + std::to_string(ell) + "_" +
                  std::string(model_hash) + ".json");
}

void store_local_data(const LocalData& data, const std::filesystem::path& dir,
                      std::string_view model_hash) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create cache directory " + dir.string());

    nlohmann::ordered_json j;
    j["schema"] = kCacheSchema;
    j["model_hash"] = std::string(model_hash);
    j["N"] = data.N;
    j["ell"] = data.ell;
    j["G"] = data.G;
    j["cases"] = cases_to_string(data.cases);
    j["cases_torsion"] =
        data.cases_torsion ? nlohmann::ordered_json(cases_to_string(*data.cases_torsion))
                           : nlohmann::ordered_json(nullptr);

    auto path = cache_file_path(dir, data.N, data.ell, model_hash);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write cache file " + tmp.string());
        out << j.dump(2) << '\n';
        if (!out) throw io_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("cannot move cache file into place: " + path.string());
}

std::optional<LocalData> load_local_data(const std::filesystem::path& dir, i64 N, i64 ell,
                                         std::string_view model_hash) {
    auto path = cache_file_path(dir, N, ell, model_hash);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    try {
        if (j.at("schema").get<std::string>() != kCacheSchema) return std::nullopt;
        if (j.at("model_hash").get<std::string>() != model_hash) return std::nullopt;
        LocalData data;
        data.N = j.at("N").get<i64>();
        data.ell = j.at("ell").get<i64>();
        data.G = j.at("G").get<i64>();
        if (data.N != N || data.ell != ell || data.G <= 0) return std::nullopt;
        auto cases = cases_from_string(j.at("cases").get<std::string>());
        if (!cases || static_cast<i64>(cases->size()) != data.G) return std::nullopt;
        data.cases = std::move(*cases);
        const auto& ct = j.at("cases_torsion");
        if (!ct.is_null()) {
            auto tor = cases_from_string(ct.get<std::string>());
            if (!tor || static_cast<i64>(tor->size()) != data.G) return std::nullopt;
            data.cases_torsion = std::move(*tor);
        }
        return data;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
}

LocalDataCache::LocalDataCache(const CurveModelData& model,
                               std::optional<std::filesystem::path> dir)
    : model_(model), dir_(std::move(dir)) {}

const LocalData& LocalDataCache::get(i64 ell) {
    {
        std::shared_lock lock(mu_);
        if (auto it = data_.find(ell); it != data_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    if (auto it = data_.find(ell); it != data_.end()) return it->second;

    if (dir_) {
        if (auto loaded = load_local_data(*dir_, model_.N, ell, model_.content_hash)) {
            return data_.try_emplace(ell, std::move(*loaded)).first->second;
        }
    }
    LocalData computed = compute_local_data(model_, ell);
    if (dir_) {
        try {
            store_local_data(computed, *dir_, model_.content_hash);
        } catch (const io_error&) {
            // persistence is best-effort; the in-memory copy is authoritative
        }
    }
    return data_.try_emplace(ell, std::move(computed)).first->second;
}

i64 LocalDataCache::generator_order(i64 ell) {
    {
        std::shared_lock lock(mu_);
        if (auto it = orders_.find(ell); it != orders_.end()) return it->second;
        if (auto it = data_.find(ell); it != data_.end()) return it->second.G;
    }
    std::unique_lock lock(mu_);
    if (auto it = orders_.find(ell); it != orders_.end()) return it->second;
    WeierstrassCurve curve = reduce_curve(model_, ell);
    CurvePoint gen = reduce_point(model_.generator, ell, curve);
    i64 g = point_order(curve, gen);
    orders_.emplace(ell, g);
    return g;
}

bool LocalDataCache::usable(i64 ell) {
    try {
        generator_order(ell);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace mwsieve
