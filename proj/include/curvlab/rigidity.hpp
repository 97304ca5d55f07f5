#pragma once

#include "curvlab/families.hpp"
#include "curvlab/hypersurface.hpp"
#include "curvlab/report.hpp"

#include <memory>
#include <string>
#include <vector>

namespace curvlab::rigidity {

struct ScanConfig {
    std::shared_ptr<const hypersurface::ImmersionChart> chart;
    std::vector<int> grid; // per-axis resolution (>= 8), broadcast when short
    int r = 2;
    uint64_t seed = 0;
    report::Tolerances tol;
};

struct PointRecord {
    Eigen::VectorXd u;
    Eigen::VectorXd lambda;
    std::vector<double> H_list;
    bool in_cone = false;
    bool near_boundary = false;
    bool eigen_gap_ok = false;
    double deficit = 0.0; // lambda_n - lambda_1
};

/// Aggregates over a grid scan; all of them recomputable from `points`.
struct RigidityReport {
    std::string family;
    double c = 0.0;
    int r = 2;
    std::vector<PointRecord> points;

    double min_lambda_min = 0.0;
    double best_margin = 0.0; // max over grid of min_i lambda_i - alpha_c
    Eigen::VectorXd best_point;
    bool elliptic_point_found = false;
    bool bounded_ok = true;
    double max_distance = 0.0; // from the chart's suggested center

    int cone_members = 0;
    int cone_failures = 0;
    int skipped_degenerate = 0;

    double range_H = 0.0;
    double range_Hr = 0.0;
    double stddev_H = 0.0;
    double stddev_Hr = 0.0;
    double max_deficit = 0.0;

    std::string verdict; // "RIGID" or "NOT_RIGID"
    std::vector<report::VerificationRecord> records;
};

/// Uniform grid over the chart domain (endpoints included).
std::vector<Eigen::VectorXd> grid_points(const hypersurface::ImmersionChart& chart,
                                         const std::vector<int>& grid);

/// Searches the grid for a point with min_i lambda_i > alpha_c. For c > 0
/// the scan also reports whether the image stays inside the
/// quarter-turn ball (radius pi / (2 sqrt c)).
RigidityReport elliptic_point_scan(const ScanConfig& cfg);

/// Classifies every grid point's principal-curvature vector by Garding-cone
/// membership for degree r.
RigidityReport cone_membership_scan(const ScanConfig& cfg);

/// The concavity-driven inequality at every grid point and every direction
/// k, with the gradient-identity cross-check. Cone-failing points are
/// skipped and counted.
std::vector<report::VerificationRecord> proof_chain_check(const ScanConfig& cfg);

/// Umbilicity deficit scan and the RIGID / NOT_RIGID verdict, with the
/// theorem-consistency record (constant H and H_r on a bounded family must
/// be umbilical).
RigidityReport umbilicity_certificate(const ScanConfig& cfg);

/// Deficit, range(H) and range(H_r) of the bump family across epsilon
/// values, plus the fitted log-log slopes.
struct BumpScaling {
    std::vector<double> eps;
    std::vector<double> deficit;
    std::vector<double> range_H;
    std::vector<double> range_Hr;
    double slope_deficit = 0.0;
    double slope_range_H = 0.0;
    double slope_range_Hr = 0.0;
};

BumpScaling bump_scaling(double c, double t, int n, const std::vector<double>& eps_values,
                         const std::vector<int>& grid, int r);

} // namespace curvlab::rigidity
