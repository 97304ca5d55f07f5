#include "curvlab/cli.hpp"

#include "curvlab/report.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace curvlab;
using cli::RunConfig;
using cli::validate_config;
using report::VerificationRecord;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CURVLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate_config defaults and strictness") {
    auto cfg = validate_config("");
    CHECK(cfg.suite == "all");
    CHECK(cfg.family == "sphere");
    CHECK(cfg.c == 0.0);
    CHECK(cfg.r == 2);
    CHECK(cfg.seed == 1);

    CHECK_THROWS_WITH_AS((void)validate_config("{\"suit\": \"cones\"}"),
                         doctest::Contains("unknown config key"), std::invalid_argument);
    CHECK_THROWS_WITH_AS((void)validate_config("{\"family\": \"wente\"}"),
                         doctest::Contains("known families"), std::invalid_argument);
    CHECK_THROWS_AS((void)validate_config("{\"grid\": [16, -4]}"), std::invalid_argument);
    CHECK_THROWS_AS((void)validate_config("{\"tol\": {\"nope\": 1e-9}}"), std::invalid_argument);
    CHECK_THROWS_AS((void)validate_config("{\"suite\": \"everything\"}"), std::invalid_argument);
    CHECK_THROWS_AS((void)validate_config("not json"), std::invalid_argument);

    auto strict = validate_config(
        "{\"suite\":\"walter\",\"family\":\"ellipsoid\",\"params\":{\"a\":1,\"b\":1.1,\"c\":1.25},"
        "\"r\":2,\"grid\":[16,16],\"seed\":7,\"tol\":{\"walter_rel\":2e-5}}");
    CHECK(strict.suite == "walter");
    CHECK(strict.params.at("b") == 1.1);
    CHECK(strict.grid == std::vector<int>{16, 16});
    CHECK(strict.tol.walter_rel == 2e-5);
    REQUIRE(strict.tol_overrides.size() == 1);
    CHECK(strict.tol_overrides[0].first == "walter_rel");
}

TEST_CASE("report serialization") {
    std::vector<VerificationRecord> records;
    // zero records: still a valid report
    auto empty = report::report_to_json(records, {{"version", "1.0.0"}}, {{"algebraic", 1e-12}});
    auto parsed = nlohmann::json::parse(empty);
    CHECK(parsed["records"].is_array());
    CHECK(parsed["records"].empty());
    CHECK(parsed["summary"]["pass"] == 0);

    records.push_back(VerificationRecord::checked("a.check", "here", 1.0 / 3.0, 0.25,
                                                  1.0 / 3.0 - 0.25, 1.0));
    records.push_back(VerificationRecord::checked("b.check", "there", 2.0, 0.0, 5.0, 1e-9));
    records.push_back(VerificationRecord::skipped("c.check", "elsewhere", "degenerate"));
    auto text = report::report_to_json(records, {{"version", "1.0.0"}}, {});
    auto doc = nlohmann::json::parse(text);
    CHECK(doc["summary"]["pass"] == 1);
    CHECK(doc["summary"]["fail"] == 1);
    CHECK(doc["summary"]["skipped"] == 1);
    // 17 significant digits round-trip
    CHECK(doc["records"][0]["lhs"].get<double>() == 1.0 / 3.0);
    CHECK(doc["records"][2]["verdict"] == "SKIPPED");

    // non-finite values are serialized as strings, never as JSON literals
    records.clear();
    records.push_back(VerificationRecord::checked("nan.check", "x",
                                                  std::nan(""), 0.0, std::nan(""), 1.0));
    auto nan_text = report::records_to_json(records);
    CHECK(nan_text.find("\"nan\"") != std::string::npos);
    auto nan_doc = nlohmann::json::parse(nan_text);
    CHECK(nan_doc[0]["verdict"] == "FAIL");

    // CSV export carries the same rows
    auto csv = report::records_to_csv(records);
    CHECK(csv.find("check_id,location,lhs,rhs,residual,tolerance,verdict") == 0);
    CHECK(csv.find("nan.check") != std::string::npos);
}

TEST_CASE("suite record sets are deterministic for a fixed seed") {
    RunConfig cfg;
    cfg.suite = "symfun";
    cfg.seed = 42;
    auto first = report::records_to_json(cli::run_suite(cfg));
    auto second = report::records_to_json(cli::run_suite(cfg));
    CHECK(first == second);

    cfg.seed = 43;
    auto third = report::records_to_json(cli::run_suite(cfg));
    CHECK(first != third);
}

TEST_CASE("cli binary: symfun suite passes and reports identity checks") {
    const std::string out = "/tmp/curvlab_test_symfun.json";
    REQUIRE(run_cli("--suite symfun --seed 1 --out " + out) == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["summary"]["fail"] == 0);
    int identity_checks = 0;
    for (const auto& rec : doc["records"]) {
        if (rec["check_id"].get<std::string>().rfind("symfun.", 0) == 0) {
            ++identity_checks;
            CHECK(rec["verdict"] == "PASS");
        }
    }
    CHECK(identity_checks >= 5);
    std::remove(out.c_str());
}

TEST_CASE("cli binary: walter suite on the ellipsoid records small residuals") {
    const std::string out = "/tmp/curvlab_test_walter.json";
    REQUIRE(run_cli("--suite walter --family ellipsoid --params a=1,b=1.1,c=1.25 --r 2 "
                    "--grid 16,16 --seed 1 --out " +
                    out) == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["summary"]["fail"] == 0);
    // the worst recorded relative residual of the Delta H_r identity
    const double worst = doc["summary"]["max_abs_residual_per_check"]["walter.residual"]
                             .get<double>();
    CHECK(worst <= 1e-5);
    int walter_records = 0;
    for (const auto& rec : doc["records"])
        if (rec["check_id"] == "walter.residual" && rec["verdict"] == "PASS") ++walter_records;
    CHECK(walter_records >= 200); // 16x16 grid, r = 1..2, minus degenerate skips
    std::remove(out.c_str());
}

TEST_CASE("cli binary: rigidity sphere control reports RIGID") {
    const std::string out = "/tmp/curvlab_test_rigidity.json";
    REQUIRE(run_cli("--suite rigidity --family sphere --c -1 --r 2 --grid 8,8 --seed 1 --out " +
                    out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("RIGID") != std::string::npos);
    auto doc = nlohmann::json::parse(text);
    CHECK(doc["summary"]["fail"] == 0);
    bool found_verdict = false;
    for (const auto& rec : doc["records"]) {
        if (rec["check_id"] == "rigidity.umbilicity.deficit") {
            found_verdict = rec["note"].get<std::string>().find("RIGID") != std::string::npos;
        }
    }
    CHECK(found_verdict);
    std::remove(out.c_str());
}

TEST_CASE("cli binary: exit codes") {
    // invalid configs exit 2
    CHECK(run_cli("--suite nonsense") == 2);
    CHECK(run_cli("--family wente") == 2);
    CHECK(run_cli("--tol nope=1") == 2);
    CHECK(run_cli("--suite rigidity --grid 0,8") == 2);
    CHECK(run_cli("--suite rigidity --family sphere --r 5 --grid 8,8") == 2);

    // an impossible tolerance forces FAIL records and exit 1
    CHECK(run_cli("--suite spaceform --seed 1 --tol sphere_match=1e-30") == 1);

    // unwritable output path exits 2
    CHECK(run_cli("--suite spaceform --seed 1 --out /nonexistent_dir_xyz/report.json") == 2);
}

TEST_CASE("cli binary: config file path and flag overrides") {
    const std::string cfg_path = "/tmp/curvlab_test_config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << "{\"suite\": \"spaceform\", \"seed\": 9}";
    }
    const std::string out = "/tmp/curvlab_test_cfgrun.json";
    REQUIRE(run_cli("--config " + cfg_path + " --out " + out) == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["meta"]["suite"] == "spaceform");
    CHECK(doc["meta"]["seed"] == "9");
    CHECK(doc["meta"]["tolerances"]["sphere_match"].get<double>() == 1e-6);

    // malformed config exits 2
    {
        std::ofstream cfg(cfg_path);
        cfg << "{\"grid\": [-1]}";
    }
    CHECK(run_cli("--config " + cfg_path) == 2);
    std::remove(cfg_path.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli binary: identical seeds give identical record arrays, csv escort") {
    const std::string out_a = "/tmp/curvlab_det_a.json";
    const std::string out_b = "/tmp/curvlab_det_b.json";
    const std::string args = "--suite spaceform --seed 5 --format json+csv --out ";
    REQUIRE(run_cli(args + out_a) == 0);
    REQUIRE(run_cli(args + out_b) == 0);
    auto doc_a = nlohmann::json::parse(slurp(out_a));
    auto doc_b = nlohmann::json::parse(slurp(out_b));
    CHECK(doc_a["records"].dump() == doc_b["records"].dump());
    CHECK(doc_a["summary"].dump() == doc_b["summary"].dump());
    // csv escort exists and has the header plus one line per record
    const std::string csv = slurp(out_a + ".csv");
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == doc_a["records"].size() + 1);
    for (const std::string f : {out_a, out_b, out_a + ".csv", out_b + ".csv"})
        std::remove(f.c_str());
}

TEST_SUITE_END();
