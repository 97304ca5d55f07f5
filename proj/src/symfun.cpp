#include "curvlab/symfun.hpp"

namespace curvlab::symfun {

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    r = std::min(r, n - r);
    double acc = 1.0;
    for (int i = 1; i <= r; ++i) acc = acc * static_cast<double>(n - r + i) / static_cast<double>(i);
    return std::round(acc);
}

LambdaVec::LambdaVec(Eigen::VectorXd entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw std::invalid_argument("LambdaVec requires n >= 2");
    if (!entries_.allFinite()) throw std::invalid_argument("LambdaVec entries must be finite");
}

LambdaVec::LambdaVec(std::initializer_list<double> entries)
    : LambdaVec(Eigen::Map<const Eigen::VectorXd>(entries.begin(),
                                                  static_cast<Eigen::Index>(entries.size()))) {}

SigmaTable::SigmaTable(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty() || values_[0] != 1.0)
        throw std::invalid_argument("SigmaTable must start with sigma_0 = 1");
}

double SigmaTable::sigma(int r) const {
    if (r < 0) throw std::invalid_argument("sigma_r undefined for negative r");
    if (r > n()) return 0.0;
    return values_[static_cast<size_t>(r)];
}

SigmaTable elementary_all(const LambdaVec& x) {
    std::span<const double> xs(x.entries().data(), static_cast<size_t>(x.n()));
    return SigmaTable(elementary_recurrence(xs));
}

namespace {

std::vector<double> remaining_entries(const LambdaVec& x, int skip_a, int skip_b) {
    std::vector<double> rest;
    rest.reserve(static_cast<size_t>(x.n()));
    for (int k = 0; k < x.n(); ++k) {
        if (k == skip_a || k == skip_b) continue;
        rest.push_back(x[k]);
    }
    return rest;
}

} // namespace

SigmaTable sigma_deleted(const LambdaVec& x, int i) {
    if (i < 0 || i >= x.n()) throw std::invalid_argument("sigma_deleted: index out of range");
    auto rest = remaining_entries(x, i, -1);
    return SigmaTable(elementary_recurrence(std::span<const double>(rest)));
}

SigmaTable sigma_deleted2(const LambdaVec& x, int i, int j) {
    if (i == j) throw std::invalid_argument("sigma_deleted2: indices must differ");
    if (i < 0 || i >= x.n() || j < 0 || j >= x.n())
        throw std::invalid_argument("sigma_deleted2: index out of range");
    auto rest = remaining_entries(x, i, j);
    return SigmaTable(elementary_recurrence(std::span<const double>(rest)));
}

LambdaVec sigma_grad(int r, const LambdaVec& x) {
    if (r < 1 || r > x.n()) throw std::invalid_argument("sigma_grad: r must be in 1..n");
    Eigen::VectorXd g(x.n());
    for (int j = 0; j < x.n(); ++j) g[j] = sigma_deleted(x, j).sigma(r - 1);
    return LambdaVec(std::move(g));
}

Eigen::MatrixXd sigma_hess(int r, const LambdaVec& x) {
    if (r < 2 || r > x.n()) throw std::invalid_argument("sigma_hess: r must be in 2..n");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(x.n(), x.n());
    for (int i = 0; i < x.n(); ++i) {
        for (int j = i + 1; j < x.n(); ++j) {
            const double v = sigma_deleted2(x, i, j).sigma(r - 2);
            h(i, j) = v;
            h(j, i) = v;
        }
    }
    return h;
}

double mean_curvature_ratio(int r, const LambdaVec& lambda) {
    if (r < 0) throw std::invalid_argument("mean_curvature_ratio: r must be >= 0");
    if (r == 0) return 1.0;
    if (r > lambda.n()) return 0.0;
    return elementary_all(lambda).sigma(r) / binomial(lambda.n(), r);
}

SigmaTable char_poly_sigma(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("char_poly_sigma: matrix must be square");
    const int n = static_cast<int>(A.rows());
    if (n < 2) throw std::invalid_argument("char_poly_sigma: n >= 2 required");
    std::vector<double> power_sums(static_cast<size_t>(n));
    Eigen::MatrixXd P = A;
    power_sums[0] = P.trace();
    for (int k = 2; k <= n; ++k) {
        P = P * A;
        power_sums[static_cast<size_t>(k - 1)] = P.trace();
    }
    return SigmaTable(elementary_from_power_sums(std::span<const double>(power_sums)));
}

} // namespace curvlab::symfun
