#pragma once

#include "curvlab/families.hpp"
#include "curvlab/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace curvlab::cli {

/// Effective run configuration. The sampling budgets are fixed inside the
/// suites; everything else is CLI/config-file addressable.
struct RunConfig {
    std::string suite = "all"; // symfun | cones | spaceform | walter | rigidity | all
    std::string family = "sphere";
    hypersurface::FamilyParams params;
    double c = 0.0;
    int r = 2;
    std::vector<int> grid = {12, 12};
    uint64_t seed = 1;
    report::Tolerances tol;
    std::vector<std::pair<std::string, double>> tol_overrides; // echoed verbatim
    std::string out_path;        // empty: stdout summary only
    std::string format = "json"; // json | json+csv

    std::map<std::string, std::string> meta_echo() const;
};

/// Parses a JSON config document (strict: unknown keys fatal). An empty
/// document yields the defaults.
RunConfig validate_config(const std::string& json_text);

/// Validates field values shared by the file and flag paths
/// (suite/family names, grid positivity, format).
void validate_fields(const RunConfig& cfg);

/// Runs the selected suite(s) and returns all records (deterministic for a
/// fixed config and seed).
std::vector<report::VerificationRecord> run_suite(const RunConfig& cfg);

/// Full CLI entry: run, write report files, return the exit code
/// (0 no FAIL, 1 at least one FAIL, 2 config/IO error).
int run(const RunConfig& cfg);

// individual suites (composed by run_suite)
std::vector<report::VerificationRecord> run_symfun_suite(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_cones_suite(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_spaceform_suite(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_walter_suite(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_rigidity_suite(const RunConfig& cfg);

// granular cones drivers (the cones suite composes these; exposed so the
// acceptance harness can time them individually)
std::vector<report::VerificationRecord> run_cones_rootedness(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_cones_garding(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_cones_concavity(const RunConfig& cfg);
std::vector<report::VerificationRecord> run_cones_nesting(const RunConfig& cfg);

} // namespace curvlab::cli
