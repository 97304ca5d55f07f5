#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace curvlab::symfun {

/// Binomial coefficient C(n,r) as an exact double (n small).
double binomial(int n, int r);

/// Point of R^n acting as a symmetric-function argument or a principal
/// curvature vector. Dimension >= 2, entries finite.
class LambdaVec {
public:
    explicit LambdaVec(Eigen::VectorXd entries);
    LambdaVec(std::initializer_list<double> entries);

    int n() const { return static_cast<int>(entries_.size()); }
    double operator[](int i) const { return entries_[i]; }
    const Eigen::VectorXd& entries() const { return entries_; }

private:
    Eigen::VectorXd entries_;
};

/// Values sigma_0..sigma_n of the elementary symmetric functions at a point.
/// sigma(r) follows the usual conventions outside 1..n: sigma_0 = 1 and
/// sigma_r = 0 for r > n; negative r is rejected.
class SigmaTable {
public:
    explicit SigmaTable(std::vector<double> values);

    int n() const { return static_cast<int>(values_.size()) - 1; }
    double sigma(int r) const;
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Coefficient build-up of prod_s (t + x_s), one factor at a time.
/// Works for any scalar with ring operations (double, Jet).
template <class T>
std::vector<T> elementary_recurrence(std::span<const T> xs) {
    std::vector<T> sig(xs.size() + 1, T(0.0));
    sig[0] = T(1.0);
    for (size_t k = 0; k < xs.size(); ++k) {
        for (size_t r = k + 1; r >= 1; --r) {
            sig[r] = sig[r] + xs[k] * sig[r - 1];
        }
    }
    return sig;
}

/// Newton's identities: elementary symmetric functions from the power sums
/// p_k = tr(A^k). Polynomial in the traces, hence smooth in A's entries.
template <class T>
std::vector<T> elementary_from_power_sums(std::span<const T> power_sums) {
    const size_t n = power_sums.size();
    std::vector<T> sig(n + 1, T(0.0));
    sig[0] = T(1.0);
    for (size_t k = 1; k <= n; ++k) {
        T acc = T(0.0);
        double s = 1.0;
        for (size_t i = 1; i <= k; ++i) {
            acc = acc + T(s) * sig[k - i] * power_sums[i - 1];
            s = -s;
        }
        sig[k] = T(1.0 / static_cast<double>(k)) * acc;
    }
    return sig;
}

/// All sigma_0..sigma_n of x via the product recurrence.
SigmaTable elementary_all(const LambdaVec& x);

/// Sigma table of x with entry i removed (product rebuilt over the rest).
SigmaTable sigma_deleted(const LambdaVec& x, int i);

/// Sigma table of x with entries i and j removed, i != j.
SigmaTable sigma_deleted2(const LambdaVec& x, int i, int j);

/// Gradient of sigma_r: component j is sigma_{r-1} of x-hat-j.
LambdaVec sigma_grad(int r, const LambdaVec& x);

/// Hessian of sigma_r: off-diagonal (i,j) is sigma_{r-2} with entries i and j
/// deleted; diagonal exactly zero. Valid for r in 2..n.
Eigen::MatrixXd sigma_hess(int r, const LambdaVec& x);

/// H_r = sigma_r(lambda) / C(n,r); H_0 = 1, H_r = 0 for r > n.
double mean_curvature_ratio(int r, const LambdaVec& lambda);

/// Sigma table of the eigenvalues of a self-adjoint operator matrix, computed
/// from power traces (no eigendecomposition, smooth in the entries).
SigmaTable char_poly_sigma(const Eigen::MatrixXd& A);

} // namespace curvlab::symfun
