#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvlab::report {

/// Central tolerance block. Every check reads its threshold from here so a
/// single override (CLI --tol key=value) reaches all call sites and can be
/// echoed verbatim into reports.
struct Tolerances {
    double algebraic = 1e-12;          // generating identity, homogeneity, similarity
    double basis_invariance = 1e-11;   // char-poly table under orthogonal conjugation
    double fd_gradient = 1e-8;         // sigma gradient vs central differences
    double fd_hessian = 1e-7;          // sigma hessian vs differentiated gradient
    double fd_wr_hessian = 1e-6;       // closed-form W_r hessian vs central differences
    double root_boundary = 1e-10;      // cone membership margin, scaled by 1 + max|x_i|
    double max_imag = 1e-8;            // hyperbolicity: imaginary residue of roots
    double garding_slack = 1e-10;      // allowed negative slack in the Garding gap
    double concavity_eig = 1e-9;       // max eigenvalue of the W_r hessian, scaled
    double quadratic_slack = 1e-10;    // sigma_r quadratic-form bound slack
    double manifold = 1e-10;           // model-membership residue of chart images
    double tangency = 1e-10;           // model-tangency residue
    double triangle = 1e-9;            // distance symmetry / triangle inequality
    double fd_distance_hessian = 1e-6; // distance hessian vs geodesic second difference
    double sphere_match = 1e-6;        // geodesic-sphere principal curvatures vs mu_c(t)
    double curvature_relation = 1e-9;  // n^2 H^2 = |A|^2 + n(n-1)(R-c), scaled
    double gauss_consistency = 1e-7;   // intrinsic vs Gauss-equation Riemann tensor
    double sectional = 1e-8;           // K_ij = c + lambda_i lambda_j
    double codazzi = 1e-7;             // total symmetry of nabla h
    double commutation = 1e-6;         // second-derivative commutation residual
    double char_poly_match = 1e-10;    // sigma table of A vs sigma table of lambda
    double laplace_fd = 1e-5;          // Laplace-Beltrami vs grid finite differences
    double walter_rel = 1e-5;          // relative residual of the Delta H_r identity
    double gradient_identity = 1e-6;   // sum_j h_jjk dsigma_r/dx_j = C(n,r) e_k(H_r)
    double trace_identity = 1e-6;      // n Hess H(e_j,e_j) = sum_k h_kkjj
    double eigen_gap = 1e-5;           // principal-curvature gap for frame reliability
    double proof_chain_slack = 1e-9;   // quadratic bound along the scan
    double tol_umb = 1e-8;             // umbilicity deficit threshold for RIGID
    double range_h = 1e-9;             // range(H), range(H_r) threshold for controls

    /// Named access used by --tol overrides and by the report echo.
    std::map<std::string, double*> index();
    std::map<std::string, double> as_map() const;
    void set(const std::string& key, double value);
};

enum class Verdict { Pass, Fail, Skipped };

std::string to_string(Verdict v);

/// One residual/inequality check. `location` is free-form (chart point,
/// sample index, parameter tuple) so records stay greppable in CSV exports.
struct VerificationRecord {
    std::string check_id;
    std::string location;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Pass;
    std::string note;

    static VerificationRecord checked(std::string check_id, std::string location,
                                      double lhs, double rhs, double residual,
                                      double tolerance, std::string note = {});
    static VerificationRecord skipped(std::string check_id, std::string location,
                                      std::string note);
};

struct Summary {
    int pass = 0;
    int fail = 0;
    int skipped = 0;
    std::map<std::string, double> max_abs_residual_per_check;
};

Summary summarize(const std::vector<VerificationRecord>& records);

/// Serializes a double with 17 significant digits (round-trip exact).
/// Non-finite values come back as quoted strings, never as JSON literals.
std::string json_number(double v);

/// Renders the records array alone; used for determinism comparisons
/// (the meta block carries a timestamp and is excluded on purpose).
std::string records_to_json(const std::vector<VerificationRecord>& records);

std::string report_to_json(const std::vector<VerificationRecord>& records,
                           const std::map<std::string, std::string>& meta,
                           const std::map<std::string, double>& tolerance_echo);

std::string records_to_csv(const std::vector<VerificationRecord>& records);

} // namespace curvlab::report
