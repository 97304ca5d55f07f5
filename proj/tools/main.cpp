// curvlab: batch verification runs over symmetric-function calculus,
// Garding cones, space-form geometry and hypersurface curvature identities.

#include "curvlab/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<std::pair<std::string, double>> parse_kv_list(const std::string& text) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("expected key=value, got '" + item + "'");
        size_t used = 0;
        const double value = std::stod(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1)
            throw std::invalid_argument("malformed number in '" + item + "'");
        out.emplace_back(item.substr(0, eq), value);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        size_t used = 0;
        const int value = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("malformed integer '" + item + "'");
        out.push_back(value);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvlab verification runner"};

    std::string suite, family, params_text, tol_text, grid_text, out_path, format, config_path;
    double c = 0.0;
    int r = -1;
    uint64_t seed = 0;
    bool seed_given = false;

    app.add_option("--suite", suite, "symfun|cones|spaceform|walter|rigidity|all");
    app.add_option("--family", family, "chart family name");
    app.add_option("--params", params_text, "family parameters k=v,...");
    auto* c_opt = app.add_option("--c", c, "ambient sectional curvature");
    auto* r_opt = app.add_option("--r", r, "mean-curvature order");
    app.add_option("--grid", grid_text, "per-axis grid resolutions, comma separated");
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    app.add_option("--tol", tol_text, "tolerance overrides k=v,...");
    app.add_option("--out", out_path, "report output path (JSON)");
    app.add_option("--format", format, "json|json+csv");
    app.add_option("--config", config_path, "JSON config file (same keys as the flags)");

    try {
        app.parse(argc, argv);
        seed_given = seed_opt->count() > 0;

        curvlab::cli::RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot read config file: " + config_path);
            std::stringstream buffer;
            buffer << in.rdbuf();
            cfg = curvlab::cli::validate_config(buffer.str());
        }
        if (!suite.empty()) cfg.suite = suite;
        if (!family.empty()) cfg.family = family;
        for (const auto& [k, v] : parse_kv_list(params_text)) cfg.params[k] = v;
        if (c_opt->count() > 0) cfg.c = c;
        if (r_opt->count() > 0) cfg.r = r;
        if (!grid_text.empty()) cfg.grid = parse_int_list(grid_text);
        if (seed_given) cfg.seed = seed;
        for (const auto& [k, v] : parse_kv_list(tol_text)) {
            cfg.tol.set(k, v);
            cfg.tol_overrides.emplace_back(k, v);
        }
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!format.empty()) cfg.format = format;

        curvlab::cli::validate_fields(cfg);
        return curvlab::cli::run(cfg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
