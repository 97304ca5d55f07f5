#include "curvlab/cones.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace curvlab::cones {

using symfun::binomial;
using symfun::elementary_all;
using symfun::sigma_grad;
using symfun::sigma_hess;

std::vector<double> shifted_sigma_coeffs(int r, const LambdaVec& x) {
    const int n = x.n();
    if (r < 1 || r > n) throw std::invalid_argument("shifted_sigma_coeffs: r must be in 1..n");
    auto table = elementary_all(x);
    std::vector<double> coeffs(static_cast<size_t>(r) + 1);
    for (int j = 0; j <= r; ++j)
        coeffs[static_cast<size_t>(j)] = binomial(n - j, r - j) * table.sigma(j);
    return coeffs;
}

namespace {

// The whole root pipeline runs in extended precision: double-rounded
// coefficients split near-multiple roots of an exactly real-rooted
// polynomial by ~sqrt(eps), which is the same magnitude as the imaginary
// residue the membership tolerances have to resolve.
using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch style balancing; powers of two only, so no rounding.
void balance(LongMatrix& m) {
    const int d = static_cast<int>(m.rows());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < d; ++i) {
            long double row_norm = m.row(i).cwiseAbs().sum();
            long double col_norm = m.col(i).cwiseAbs().sum();
            if (row_norm == 0.0L || col_norm == 0.0L) continue;
            int exponent = 0;
            std::frexp(static_cast<double>(row_norm / col_norm), &exponent);
            exponent /= 2;
            if (exponent != 0) {
                const long double col_scale = std::ldexp(1.0L, exponent);
                const long double scaled_col = col_norm * col_scale;
                const long double scaled_row = row_norm / col_scale;
                if (scaled_col + scaled_row < 0.9L * (col_norm + row_norm)) {
                    changed = true;
                    m.row(i) /= col_scale;
                    m.col(i) *= col_scale;
                }
            }
        }
    }
}

std::vector<std::complex<double>> companion_roots(const std::vector<long double>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (coeffs[0] == 0.0L) throw std::invalid_argument("companion_roots: leading coefficient zero");
    if (deg == 0) return {};
    if (deg == 1)
        return {std::complex<double>(static_cast<double>(-coeffs[1] / coeffs[0]), 0.0)};
    LongMatrix c = LongMatrix::Zero(deg, deg);
    c.diagonal(-1).setOnes();
    for (int i = 0; i < deg; ++i)
        c(i, deg - 1) = -coeffs[static_cast<size_t>(deg - i)] / coeffs[0];
    balance(c);
    Eigen::EigenSolver<LongMatrix> solver(c, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("companion_roots: eigensolver failed");
    std::vector<std::complex<double>> roots(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i)
        roots[static_cast<size_t>(i)] = std::complex<double>(
            static_cast<double>(solver.eigenvalues()[i].real()),
            static_cast<double>(solver.eigenvalues()[i].imag()));
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

std::vector<long double> shifted_sigma_coeffs_ext(int r, const LambdaVec& x) {
    const int n = x.n();
    if (r < 1 || r > n) throw std::invalid_argument("shifted_sigma_coeffs: r must be in 1..n");
    std::vector<long double> entries(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) entries[static_cast<size_t>(i)] = static_cast<long double>(x[i]);
    const auto table = symfun::elementary_recurrence(std::span<const long double>(entries));
    std::vector<long double> coeffs(static_cast<size_t>(r) + 1);
    for (int j = 0; j <= r; ++j)
        coeffs[static_cast<size_t>(j)] =
            static_cast<long double>(binomial(n - j, r - j)) * table[static_cast<size_t>(j)];
    return coeffs;
}

} // namespace

std::vector<std::complex<double>> roots_along(int r, const LambdaVec& x) {
    return companion_roots(shifted_sigma_coeffs_ext(r, x));
}

ConeReport in_garding_cone(int r, const LambdaVec& x, double boundary_scale) {
    ConeReport rep;
    rep.r = r;
    rep.point = x.entries();
    rep.roots = roots_along(r, x);
    rep.tolerance_root = boundary_scale * (1.0 + x.entries().cwiseAbs().maxCoeff());
    rep.max_imag = 0.0;
    bool all_negative = true;
    bool near = false;
    for (const auto& root : rep.roots) {
        rep.max_imag = std::max(rep.max_imag, std::abs(root.imag()));
        if (!(root.real() < -rep.tolerance_root)) all_negative = false;
        if (std::abs(root.real()) <= rep.tolerance_root) near = true;
    }
    rep.near_boundary = near;
    // the root-sign test is the membership definition; max_imag stays
    // visible in the report but cannot gate membership, because an exact
    // r-fold root splits into a cluster of width ~eps^{1/r} under any
    // eigensolver and would disqualify obvious interior points like (1,...,1)
    rep.in_cone = all_negative;
    return rep;
}

bool sigma_positive_characterization(int r, const LambdaVec& x) {
    auto table = elementary_all(x);
    for (int k = 1; k <= r; ++k)
        if (!(table.sigma(k) > 0.0)) return false;
    return true;
}

double garding_gap(int r, const LambdaVec& x, const LambdaVec& y) {
    if (x.n() != y.n()) throw std::invalid_argument("garding_gap: dimension mismatch");
    if (!in_garding_cone(r, x).in_cone)
        throw std::domain_error("garding_gap: x outside the Garding cone");
    if (!in_garding_cone(r, y).in_cone)
        throw std::domain_error("garding_gap: y outside the Garding cone");
    const auto grad = sigma_grad(r, x);
    double lhs = 0.0;
    for (int k = 0; k < x.n(); ++k) lhs += y[k] * grad[k];
    lhs /= static_cast<double>(r);
    const double px = elementary_all(x).sigma(r);
    const double py = elementary_all(y).sigma(r);
    const double m = static_cast<double>(r);
    const double rhs = std::pow(py, 1.0 / m) * std::pow(px, 1.0 - 1.0 / m);
    return lhs - rhs;
}

ConcavityProbe wr_hessian(int r, const LambdaVec& x) {
    if (!in_garding_cone(r, x).in_cone)
        throw std::domain_error("wr_hessian: point outside the Garding cone");
    const int n = x.n();
    ConcavityProbe probe;
    probe.r = r;
    probe.point = x.entries();
    if (r == 1) {
        probe.hessian = Eigen::MatrixXd::Zero(n, n);
        probe.max_eigenvalue = 0.0;
        return probe;
    }
    const double sr = elementary_all(x).sigma(r);
    const auto grad = sigma_grad(r, x);
    const Eigen::MatrixXd hess_sigma = sigma_hess(r, x);
    const double m = static_cast<double>(r);
    const double prefactor = (1.0 / m) * std::pow(sr, 1.0 / m - 2.0);
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(i, j) = prefactor * (((1.0 - m) / m) * grad[i] * grad[j] + sr * hess_sigma(i, j));
    probe.hessian = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(probe.hessian, Eigen::EigenvaluesOnly);
    probe.max_eigenvalue = es.eigenvalues().maxCoeff();
    return probe;
}

std::pair<double, double> quadratic_form_bound(int r, const LambdaVec& x, const LambdaVec& y) {
    if (x.n() != y.n()) throw std::invalid_argument("quadratic_form_bound: dimension mismatch");
    if (!in_garding_cone(r, x).in_cone)
        throw std::domain_error("quadratic_form_bound: x outside the Garding cone");
    const double m = static_cast<double>(r);
    const auto grad = sigma_grad(r, x);
    double dot = 0.0;
    for (int k = 0; k < x.n(); ++k) dot += y[k] * grad[k];
    const double rhs = ((m - 1.0) / m) * dot * dot;
    double lhs = 0.0;
    if (r >= 2) {
        const Eigen::MatrixXd hess = sigma_hess(r, x);
        lhs = elementary_all(x).sigma(r) * y.entries().dot(hess * y.entries());
    }
    return {lhs, rhs};
}

std::optional<LambdaVec> sample_cone_point(int n, int r, std::mt19937_64& rng, int max_tries) {
    std::uniform_real_distribution<double> positive(0.1, 2.1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const bool orthant_half = (rng() & 1u) == 0u;
    if (orthant_half) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = positive(rng);
        return LambdaVec(std::move(x));
    }
    for (int tries = 0; tries < max_tries; ++tries) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = gauss(rng);
        LambdaVec candidate(std::move(x));
        // cheap sign prefilter, then the authoritative root test
        if (!sigma_positive_characterization(r, candidate)) continue;
        auto rep = in_garding_cone(r, candidate);
        if (rep.in_cone && !rep.near_boundary) return candidate;
    }
    return std::nullopt;
}

std::vector<report::VerificationRecord> cone_nesting_check(int samples, int n, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("cone_nesting_check: samples >= 1 required");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> positive(0.05, 2.0);
    std::vector<report::VerificationRecord> records;
    std::vector<int> checked(static_cast<size_t>(n) + 1, 0);
    std::vector<int> violations(static_cast<size_t>(n) + 1, 0);
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(n);
        const bool orthant = (s % 2) == 0;
        for (int i = 0; i < n; ++i) x[i] = orthant ? positive(rng) : gauss(rng);
        LambdaVec point(std::move(x));
        std::vector<bool> member(static_cast<size_t>(n) + 1, false);
        std::vector<bool> boundary(static_cast<size_t>(n) + 1, false);
        for (int r = 1; r <= n; ++r) {
            auto rep = in_garding_cone(r, point);
            member[static_cast<size_t>(r)] = rep.in_cone;
            boundary[static_cast<size_t>(r)] = rep.near_boundary;
        }
        for (int r = 1; r < n; ++r) {
            if (boundary[static_cast<size_t>(r)] || boundary[static_cast<size_t>(r + 1)]) continue;
            if (!member[static_cast<size_t>(r + 1)]) continue;
            ++checked[static_cast<size_t>(r)];
            if (!member[static_cast<size_t>(r)]) {
                ++violations[static_cast<size_t>(r)];
                records.push_back(report::VerificationRecord::checked(
                    "cones.nesting.violation", "sample " + std::to_string(s), 1.0, 0.0, 1.0, 0.0,
                    "point in Gamma_" + std::to_string(r + 1) + " but not Gamma_" +
                        std::to_string(r)));
            }
        }
    }
    for (int r = 1; r < n; ++r) {
        records.push_back(report::VerificationRecord::checked(
            "cones.nesting.r" + std::to_string(r),
            "n=" + std::to_string(n) + " samples=" + std::to_string(samples),
            static_cast<double>(violations[static_cast<size_t>(r)]), 0.0,
            static_cast<double>(violations[static_cast<size_t>(r)]), 0.0,
            std::to_string(checked[static_cast<size_t>(r)]) + " implications checked"));
    }
    return records;
}

} // namespace curvlab::cones
