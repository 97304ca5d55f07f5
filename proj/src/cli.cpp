#include "curvlab/cli.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace curvlab::cli {

namespace {

const std::vector<std::string> kSuites = {"symfun", "cones", "spaceform",
                                          "walter", "rigidity", "all"};

std::string kv_echo(const hypersurface::FamilyParams& params) {
    std::string out;
    char buf[64];
    for (const auto& [k, v] : params) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += (out.empty() ? "" : ",") + k + "=" + buf;
    }
    return out;
}

std::string grid_echo(const std::vector<int>& grid) {
    std::string out;
    for (int g : grid) out += (out.empty() ? "" : ",") + std::to_string(g);
    return out;
}

} // namespace

std::map<std::string, std::string> RunConfig::meta_echo() const {
    char buf[64];
    std::map<std::string, std::string> meta;
    meta["version"] = "1.0.0";
    meta["suite"] = suite;
    meta["family"] = family;
    meta["params"] = kv_echo(params);
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    meta["c"] = buf;
    meta["r"] = std::to_string(r);
    meta["grid"] = grid_echo(grid);
    meta["seed"] = std::to_string(seed);
    meta["format"] = format;
    std::string overrides;
    for (const auto& [k, v] : tol_overrides) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        overrides += (overrides.empty() ? "" : ",") + k + "=" + buf;
    }
    meta["tol_overrides"] = overrides;
    return meta;
}

void validate_fields(const RunConfig& cfg) {
    if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
        std::string known;
        for (const auto& s : kSuites) known += (known.empty() ? "" : ", ") + s;
        throw std::invalid_argument("unknown suite '" + cfg.suite + "'; known suites: " + known);
    }
    const auto families = hypersurface::family_names();
    if (std::find(families.begin(), families.end(), cfg.family) == families.end()) {
        std::string known;
        for (const auto& f : families) known += (known.empty() ? "" : ", ") + f;
        throw std::invalid_argument("unknown family '" + cfg.family +
                                    "'; known families: " + known);
    }
    if (cfg.grid.empty()) throw std::invalid_argument("grid must have at least one resolution");
    for (int g : cfg.grid)
        if (g <= 0) throw std::invalid_argument("grid resolutions must be positive");
    if (cfg.r < 0) throw std::invalid_argument("r must be nonnegative");
    if (cfg.format != "json" && cfg.format != "json+csv")
        throw std::invalid_argument("format must be 'json' or 'json+csv'");
}

RunConfig validate_config(const std::string& json_text) {
    RunConfig cfg;
    std::string trimmed = json_text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) {
        validate_fields(cfg);
        return cfg;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

    const std::vector<std::string> known = {"suite", "family", "params", "c",  "r",
                                            "grid",  "seed",   "tol",    "out", "format"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            std::string list;
            for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
            throw std::invalid_argument("unknown config key '" + key + "'; known keys: " + list);
        }
    }
    if (doc.contains("suite")) cfg.suite = doc["suite"].get<std::string>();
    if (doc.contains("family")) cfg.family = doc["family"].get<std::string>();
    if (doc.contains("params")) {
        if (!doc["params"].is_object())
            throw std::invalid_argument("config 'params' must be an object of numbers");
        for (const auto& [key, value] : doc["params"].items()) {
            if (!value.is_number())
                throw std::invalid_argument("family parameter '" + key + "' must be a number");
            cfg.params[key] = value.get<double>();
        }
    }
    if (doc.contains("c")) cfg.c = doc["c"].get<double>();
    if (doc.contains("r")) cfg.r = doc["r"].get<int>();
    if (doc.contains("grid")) {
        cfg.grid.clear();
        if (doc["grid"].is_number_integer()) {
            cfg.grid.push_back(doc["grid"].get<int>());
        } else if (doc["grid"].is_array()) {
            for (const auto& g : doc["grid"]) {
                if (!g.is_number_integer())
                    throw std::invalid_argument("grid resolutions must be integers");
                cfg.grid.push_back(g.get<int>());
            }
        } else {
            throw std::invalid_argument("config 'grid' must be an integer or integer array");
        }
    }
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("tol")) {
        if (!doc["tol"].is_object())
            throw std::invalid_argument("config 'tol' must be an object of numbers");
        for (const auto& [key, value] : doc["tol"].items()) {
            if (!value.is_number())
                throw std::invalid_argument("tolerance '" + key + "' must be a number");
            cfg.tol.set(key, value.get<double>()); // throws on unknown names
            cfg.tol_overrides.emplace_back(key, value.get<double>());
        }
    }
    if (doc.contains("out")) cfg.out_path = doc["out"].get<std::string>();
    if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
    validate_fields(cfg);
    return cfg;
}

int run(const RunConfig& cfg) {
    try {
        validate_fields(cfg);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::vector<report::VerificationRecord> records;
    try {
        records = run_suite(cfg);
    } catch (const std::invalid_argument& e) {
        // bad argument combinations (family/r mismatch, grid shape) are
        // configuration errors, not numerical failures
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        records.push_back(report::VerificationRecord::checked(
            "runtime.exception", cfg.suite, 0.0, 0.0,
            std::numeric_limits<double>::quiet_NaN(), 0.0, e.what()));
    }

    const auto summary = report::summarize(records);

    if (!cfg.out_path.empty()) {
        auto meta = cfg.meta_echo();
        const auto now = std::chrono::system_clock::now();
        const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
        char iso[32];
        std::strftime(iso, sizeof(iso), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&stamp));
        meta["timestamp"] = iso;

        std::ofstream json_out(cfg.out_path);
        if (!json_out) {
            std::cerr << "cannot open output path: " << cfg.out_path << "\n";
            return 2;
        }
        json_out << report::report_to_json(records, meta, cfg.tol.as_map());
        if (!json_out.good()) {
            std::cerr << "failed writing report: " << cfg.out_path << "\n";
            return 2;
        }
        if (cfg.format == "json+csv") {
            const std::string csv_path = cfg.out_path + ".csv";
            std::ofstream csv_out(csv_path);
            if (!csv_out) {
                std::cerr << "cannot open output path: " << csv_path << "\n";
                return 2;
            }
            csv_out << report::records_to_csv(records);
        }
    }

    std::cout << "suite=" << cfg.suite << " pass=" << summary.pass << " fail=" << summary.fail
              << " skipped=" << summary.skipped << "\n";
    for (const auto& rec : records) {
        if (rec.verdict == report::Verdict::Fail)
            std::cout << "FAIL " << rec.check_id << " @ " << rec.location << " residual="
                      << report::json_number(rec.residual) << " note=" << rec.note << "\n";
    }
    return summary.fail == 0 ? 0 : 1;
}

} // namespace curvlab::cli
