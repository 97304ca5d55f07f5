#pragma once

#include "curvlab/report.hpp"
#include "curvlab/symfun.hpp"

#include <complex>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace curvlab::cones {

using symfun::LambdaVec;

/// Membership query result for the Garding cone of sigma_r with direction
/// a = (1,...,1). Roots are kept (complex) so hyperbolicity failures stay
/// visible instead of being rounded away.
struct ConeReport {
    int r = 0;
    Eigen::VectorXd point;
    std::vector<std::complex<double>> roots;
    bool in_cone = false;
    bool near_boundary = false; // some root within tolerance_root of zero
    double max_imag = 0.0;
    double tolerance_root = 0.0;
};

struct ConcavityProbe {
    int r = 0;
    Eigen::VectorXd point;
    Eigen::MatrixXd hessian; // of W_r = sigma_r^{1/r}
    double max_eigenvalue = 0.0;
};

/// Coefficients of s -> sigma_r(s a + x) in descending powers of s,
/// c[j] = C(n-j, r-j) sigma_j(x). Exposed so tests can pin the expansion
/// against direct evaluation.
std::vector<double> shifted_sigma_coeffs(int r, const LambdaVec& x);

/// All r roots of s -> sigma_r(s a + x), by companion-matrix eigenvalues.
std::vector<std::complex<double>> roots_along(int r, const LambdaVec& x);

/// Root-sign membership test: in the cone iff every root has real part
/// strictly below -tolerance_root, tolerance_root = boundary_scale*(1+max|x_i|).
ConeReport in_garding_cone(int r, const LambdaVec& x, double boundary_scale = 1e-10);

/// Cross-check characterization (never the definition): sigma_1..sigma_r > 0.
bool sigma_positive_characterization(int r, const LambdaVec& x);

/// LHS - RHS of Garding's inequality with P = sigma_r, m = r:
/// (1/r) sum_k y_k dsigma_r/dx_k(x) - sigma_r(y)^{1/r} sigma_r(x)^{1-1/r}.
/// Both points must lie in the open cone.
double garding_gap(int r, const LambdaVec& x, const LambdaVec& y);

/// Closed-form Hessian of W_r = sigma_r^{1/r} at a cone point, plus its
/// largest eigenvalue (concavity probe).
ConcavityProbe wr_hessian(int r, const LambdaVec& x);

/// (lhs, rhs) of sigma_r(x) y^T D2sigma_r(x) y <= ((r-1)/r)(y . Dsigma_r(x))^2.
std::pair<double, double> quadratic_form_bound(int r, const LambdaVec& x,
                                               const LambdaVec& y);

/// Random cone sampling: half the budget from the positive orthant
/// (guaranteed interior), half from Gaussians filtered by the membership
/// test, to exercise the cone beyond the orthant.
std::optional<LambdaVec> sample_cone_point(int n, int r, std::mt19937_64& rng,
                                           int max_tries = 4000);

/// Nesting audit: membership in Gamma_{r+1} must imply membership in
/// Gamma_r at every sampled point. Emits one summary record per r plus one
/// record per violation.
std::vector<report::VerificationRecord> cone_nesting_check(int samples, int n,
                                                           uint64_t seed);

} // namespace curvlab::cones
