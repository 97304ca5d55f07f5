#include "curvlab/cli.hpp"

#include "curvlab/cones.hpp"
#include "curvlab/hypersurface.hpp"
#include "curvlab/rigidity.hpp"
#include "curvlab/spaceform.hpp"
#include "curvlab/symfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

// Suite drivers shared by the CLI and the acceptance harness. Sampling
// budgets are pinned here; all randomness is seeded from the config so a
// fixed (config, seed) pair reproduces the record set bit for bit.

namespace curvlab::cli {

using cones::in_garding_cone;
using cones::sample_cone_point;
using hypersurface::ImmersionChart;
using hypersurface::PointGeometry;
using report::VerificationRecord;
using symfun::binomial;
using symfun::elementary_all;
using symfun::LambdaVec;

namespace {

constexpr int kSymfunInstances = 10000;  // per identity
constexpr int kRootednessPoints = 100000;
constexpr int kGapPairs = 10000;         // per (n, r)
constexpr int kEqualityPoints = 200;     // per (n, r)
constexpr int kConcavityPoints = 10000;  // per (n, r)
constexpr int kConcavityFdPoints = 20;   // per (n, r)
constexpr int kNestingPointsPerN = 2000; // n = 2..6
constexpr int kMidpointPairs = 10000;
constexpr int kEquivalencePoints = 100000;
constexpr int kQuadraticTrials = 10000;
constexpr int kWalterTargetPoints = 60;

uint64_t substream(uint64_t seed, uint64_t salt) {
    // splitmix64 step keeps the per-check streams independent
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Eigen::VectorXd random_entries(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = dist(rng);
    return x;
}

struct Worst {
    double residual = 0.0;
    std::string where;
    int violations = 0;
    int checked = 0;

    void update(double res, double tol, const std::string& loc) {
        ++checked;
        if (std::abs(res) > std::abs(residual)) {
            residual = res;
            where = loc;
        }
        if (std::abs(res) > tol) ++violations;
    }
};

VerificationRecord summary_record(const std::string& id, const std::string& location,
                                  const Worst& w, double tol) {
    char note[160];
    std::snprintf(note, sizeof(note), "%d checked, %d violations, worst at %s", w.checked,
                  w.violations, w.where.empty() ? "-" : w.where.c_str());
    VerificationRecord rec = VerificationRecord::checked(id, location, 0.0, 0.0, w.residual, tol, note);
    if (w.violations > 0) rec.verdict = report::Verdict::Fail;
    return rec;
}

} // namespace

// ---------------------------------------------------------------------------
// symfun
// ---------------------------------------------------------------------------

std::vector<VerificationRecord> run_symfun_suite(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    const double tol_alg = cfg.tol.algebraic;

    { // generating identity
        std::mt19937_64 rng(substream(cfg.seed, 101));
        std::uniform_real_distribution<double> tdist(-3.0, 3.0);
        Worst w;
        for (int inst = 0; inst < kSymfunInstances; ++inst) {
            const int n = 2 + static_cast<int>(rng() % 7);
            Eigen::VectorXd x = random_entries(rng, n, -2.0, 2.0);
            auto table = elementary_all(LambdaVec(x));
            auto abs_table = elementary_all(LambdaVec(Eigen::VectorXd(x.cwiseAbs())));
            for (int k = 0; k < 20; ++k) {
                const double t = tdist(rng);
                double prod = 1.0;
                for (int i = 0; i < n; ++i) prod *= x[i] + t;
                double expansion = 0.0;
                double magnitude = 1.0; // relative to what the sum adds up
                for (int r = 0; r <= n; ++r) {
                    expansion += table.sigma(r) * std::pow(t, n - r);
                    magnitude += abs_table.sigma(r) * std::pow(std::abs(t), n - r);
                }
                w.update((prod - expansion) / magnitude, tol_alg,
                         "instance " + std::to_string(inst));
            }
        }
        out.push_back(summary_record("symfun.generating", "n=2..8", w, tol_alg));
    }

    { // gradient identity: exact deleted-entry agreement and finite differences
        std::mt19937_64 rng(substream(cfg.seed, 102));
        Worst w_exact, w_fd;
        for (int inst = 0; inst < kSymfunInstances; ++inst) {
            const int n = 2 + static_cast<int>(rng() % 7);
            const int r = 1 + static_cast<int>(rng() % n);
            const int j = static_cast<int>(rng() % n);
            Eigen::VectorXd x = random_entries(rng, n, -2.0, 2.0);
            LambdaVec lx(x);
            const double grad_j = symfun::sigma_grad(r, lx)[j];
            const double deleted = symfun::sigma_deleted(lx, j).sigma(r - 1);
            w_exact.update(grad_j - deleted, 0.0, "instance " + std::to_string(inst));

            const double h = 1e-2;
            auto sig = [&](double step) {
                Eigen::VectorXd y = x;
                y[j] += step;
                return elementary_all(LambdaVec(y)).sigma(r);
            };
            const double fd = (-sig(2 * h) + 8 * sig(h) - 8 * sig(-h) + sig(-2 * h)) / (12 * h);
            const double scale = std::max(1.0, std::abs(grad_j));
            w_fd.update((grad_j - fd) / scale, cfg.tol.fd_gradient, "instance " + std::to_string(inst));
        }
        out.push_back(summary_record("symfun.gradient_exact", "n=2..8", w_exact, 0.0));
        out.push_back(summary_record("symfun.gradient_fd", "n=2..8", w_fd, cfg.tol.fd_gradient));
    }

    { // hessian identity vs differentiated gradient
        std::mt19937_64 rng(substream(cfg.seed, 103));
        Worst w;
        for (int inst = 0; inst < kSymfunInstances; ++inst) {
            const int n = 2 + static_cast<int>(rng() % 7);
            const int r = 2 + static_cast<int>(rng() % (n - 1));
            const int i = static_cast<int>(rng() % n);
            const int j = static_cast<int>(rng() % n);
            Eigen::VectorXd x = random_entries(rng, n, -2.0, 2.0);
            const double entry = symfun::sigma_hess(r, LambdaVec(x))(i, j);
            const double h = 1e-2;
            auto grad_i = [&](double step) {
                Eigen::VectorXd y = x;
                y[j] += step;
                return symfun::sigma_grad(r, LambdaVec(y))[i];
            };
            const double fd =
                (-grad_i(2 * h) + 8 * grad_i(h) - 8 * grad_i(-h) + grad_i(-2 * h)) / (12 * h);
            const double scale = std::max(1.0, std::abs(entry));
            w.update((entry - fd) / scale, cfg.tol.fd_hessian, "instance " + std::to_string(inst));
        }
        out.push_back(summary_record("symfun.hessian_fd", "n=2..8", w, cfg.tol.fd_hessian));
    }

    { // homogeneity
        std::mt19937_64 rng(substream(cfg.seed, 104));
        Worst w;
        for (int inst = 0; inst < kSymfunInstances; ++inst) {
            const int n = 2 + static_cast<int>(rng() % 7);
            Eigen::VectorXd x = random_entries(rng, n, -2.0, 2.0);
            auto base = elementary_all(LambdaVec(x));
            auto abs_table = elementary_all(LambdaVec(Eigen::VectorXd(x.cwiseAbs())));
            for (double s : {-2.0, 0.5, 3.0}) {
                auto scaled = elementary_all(LambdaVec(Eigen::VectorXd(s * x)));
                for (int r = 0; r <= n; ++r) {
                    const double want = std::pow(s, r) * base.sigma(r);
                    const double scale =
                        std::max(1.0, std::pow(std::abs(s), r) * abs_table.sigma(r));
                    w.update((scaled.sigma(r) - want) / scale, tol_alg,
                             "instance " + std::to_string(inst));
                }
            }
        }
        out.push_back(summary_record("symfun.homogeneity", "s in {-2, 0.5, 3}", w, tol_alg));
    }

    { // basis invariance of the char-poly sigma table
        std::mt19937_64 rng(substream(cfg.seed, 105));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Worst w;
        for (int inst = 0; inst < kSymfunInstances; ++inst) {
            const int n = 2 + static_cast<int>(rng() % 7);
            Eigen::VectorXd lam = random_entries(rng, n, -2.0, 2.0);
            Eigen::MatrixXd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
            Eigen::MatrixXd q = qr.householderQ();
            auto table = symfun::char_poly_sigma(q * lam.asDiagonal() * q.transpose());
            auto want = elementary_all(LambdaVec(lam));
            double scale = 1.0;
            for (int r = 0; r <= n; ++r) scale = std::max(scale, std::abs(want.sigma(r)));
            for (int r = 0; r <= n; ++r)
                w.update((table.sigma(r) - want.sigma(r)) / scale, cfg.tol.basis_invariance,
                         "instance " + std::to_string(inst));
        }
        out.push_back(
            summary_record("symfun.basis_invariance", "n=2..8", w, cfg.tol.basis_invariance));
    }

    return out;
}

// ---------------------------------------------------------------------------
// cones
// ---------------------------------------------------------------------------

std::vector<VerificationRecord> run_cones_rootedness(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    std::mt19937_64 rng(substream(cfg.seed, 201));
    Worst w;
    for (int inst = 0; inst < kRootednessPoints; ++inst) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Eigen::VectorXd x = random_entries(rng, n, -3.0, 3.0);
        LambdaVec lx(x);
        const double scale = 1.0 + x.cwiseAbs().maxCoeff();
        for (int r = 1; r <= n; ++r) {
            double max_imag = 0.0;
            for (const auto& root : cones::roots_along(r, lx))
                max_imag = std::max(max_imag, std::abs(root.imag()));
            w.update(max_imag / scale, cfg.tol.max_imag,
                     "point " + std::to_string(inst) + " r=" + std::to_string(r));
        }
    }
    out.push_back(summary_record("cones.real_rootedness", "n=2..8, all r", w, cfg.tol.max_imag));
    return out;
}

std::vector<VerificationRecord> run_cones_garding(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    for (int n = 2; n <= 6; ++n) {
        for (int r = 1; r <= n; ++r) {
            std::mt19937_64 rng(substream(cfg.seed, 210 + static_cast<uint64_t>(n * 16 + r)));
            Worst w_gap, w_eq;
            for (int trial = 0; trial < kGapPairs; ++trial) {
                auto x = sample_cone_point(n, r, rng);
                auto y = sample_cone_point(n, r, rng);
                if (!x || !y) continue;
                const double gap = cones::garding_gap(r, *x, *y);
                const double rhs = std::pow(elementary_all(*y).sigma(r), 1.0 / r) *
                                   std::pow(elementary_all(*x).sigma(r), 1.0 - 1.0 / r);
                const double scale = std::max(1.0, std::abs(rhs));
                // only negative slack is a violation
                const double slack = std::min(0.0, gap / scale);
                w_gap.update(slack, cfg.tol.garding_slack, "pair " + std::to_string(trial));
            }
            for (int trial = 0; trial < kEqualityPoints; ++trial) {
                auto x = sample_cone_point(n, r, rng);
                if (!x) continue;
                const double gap = cones::garding_gap(r, *x, *x);
                const double scale = std::max(1.0, elementary_all(*x).sigma(r));
                w_eq.update(gap / scale, cfg.tol.algebraic, "point " + std::to_string(trial));
            }
            const std::string loc = "n=" + std::to_string(n) + " r=" + std::to_string(r);
            out.push_back(summary_record("cones.garding_gap", loc, w_gap, cfg.tol.garding_slack));
            out.push_back(summary_record("cones.garding_equality", loc, w_eq, cfg.tol.algebraic));
        }
    }
    return out;
}

std::vector<VerificationRecord> run_cones_concavity(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    for (int n = 2; n <= 6; ++n) {
        for (int r = 1; r <= n; ++r) {
            std::mt19937_64 rng(substream(cfg.seed, 240 + static_cast<uint64_t>(n * 16 + r)));
            Worst w_eig, w_fd;
            for (int trial = 0; trial < kConcavityPoints; ++trial) {
                auto x = sample_cone_point(n, r, rng);
                if (!x) continue;
                auto probe = cones::wr_hessian(r, *x);
                const double scale = std::max(1.0, probe.hessian.norm());
                // only a positive maximal eigenvalue violates concavity
                w_eig.update(std::max(0.0, probe.max_eigenvalue / scale), cfg.tol.concavity_eig,
                             "point " + std::to_string(trial));
            }
            std::uniform_real_distribution<double> positive(0.5, 2.0);
            for (int trial = 0; trial < kConcavityFdPoints; ++trial) {
                Eigen::VectorXd x(n);
                for (int i = 0; i < n; ++i) x[i] = positive(rng);
                if (trial == 0) x.setOnes();
                auto probe = cones::wr_hessian(r, LambdaVec(x));
                const double scale = std::max(1.0, probe.hessian.cwiseAbs().maxCoeff());
                auto wr = [&](const Eigen::VectorXd& y) {
                    return std::pow(elementary_all(LambdaVec(y)).sigma(r), 1.0 / r);
                };
                const double h = 1e-4;
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        double fd;
                        if (i == j) {
                            Eigen::VectorXd up = x, dn = x;
                            up[i] += h;
                            dn[i] -= h;
                            fd = (wr(up) - 2 * wr(x) + wr(dn)) / (h * h);
                        } else {
                            Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
                            pp[i] += h;
                            pp[j] += h;
                            pm[i] += h;
                            pm[j] -= h;
                            mp[i] -= h;
                            mp[j] += h;
                            mm[i] -= h;
                            mm[j] -= h;
                            fd = (wr(pp) - wr(pm) - wr(mp) + wr(mm)) / (4 * h * h);
                        }
                        w_fd.update((probe.hessian(i, j) - fd) / scale, cfg.tol.fd_wr_hessian,
                                    "point " + std::to_string(trial));
                    }
                }
            }
            const std::string loc = "n=" + std::to_string(n) + " r=" + std::to_string(r);
            out.push_back(summary_record("cones.wr_concavity", loc, w_eig, cfg.tol.concavity_eig));
            out.push_back(summary_record("cones.wr_hessian_fd", loc, w_fd, cfg.tol.fd_wr_hessian));
        }
    }
    return out;
}

std::vector<VerificationRecord> run_cones_nesting(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    for (int n = 2; n <= 6; ++n) {
        auto recs = cones::cone_nesting_check(kNestingPointsPerN, n,
                                              substream(cfg.seed, 270 + static_cast<uint64_t>(n)));
        out.insert(out.end(), recs.begin(), recs.end());
    }

    { // midpoint convexity probe
        std::mt19937_64 rng(substream(cfg.seed, 280));
        Worst w;
        for (int trial = 0; trial < kMidpointPairs; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 5);
            const int r = 1 + static_cast<int>(rng() % n);
            auto a = sample_cone_point(n, r, rng);
            auto b = sample_cone_point(n, r, rng);
            if (!a || !b) continue;
            Eigen::VectorXd mid = 0.5 * (a->entries() + b->entries());
            auto rep = in_garding_cone(r, LambdaVec(mid), cfg.tol.root_boundary);
            w.update((rep.in_cone || rep.near_boundary) ? 0.0 : 1.0, 0.5,
                     "pair " + std::to_string(trial));
        }
        out.push_back(summary_record("cones.midpoint_convexity", "n=2..6", w, 0.5));
    }

    { // membership equivalence (cross-check only, discrepancies reported)
        std::mt19937_64 rng(substream(cfg.seed, 281));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Worst w;
        int boundary_skips = 0;
        for (int trial = 0; trial < kEquivalencePoints; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 5);
            Eigen::VectorXd x(n);
            for (int i = 0; i < n; ++i) x[i] = gauss(rng);
            LambdaVec lx(x);
            for (int r = 1; r <= n; ++r) {
                auto rep = in_garding_cone(r, lx, cfg.tol.root_boundary);
                if (rep.near_boundary) {
                    ++boundary_skips;
                    continue;
                }
                const bool sig = cones::sigma_positive_characterization(r, lx);
                w.update(rep.in_cone == sig ? 0.0 : 1.0, 0.5,
                         "point " + std::to_string(trial) + " r=" + std::to_string(r));
            }
        }
        auto rec = summary_record("cones.membership_equivalence", "n=2..6", w, 0.5);
        rec.note += ", " + std::to_string(boundary_skips) + " boundary points excluded";
        out.push_back(rec);
    }

    { // quadratic-form bound
        std::mt19937_64 rng(substream(cfg.seed, 282));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Worst w;
        for (int trial = 0; trial < kQuadraticTrials; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 5);
            const int r = 1 + static_cast<int>(rng() % n);
            auto x = sample_cone_point(n, r, rng);
            if (!x) continue;
            Eigen::VectorXd y(n);
            for (int i = 0; i < n; ++i) y[i] = gauss(rng);
            auto [lhs, rhs] = cones::quadratic_form_bound(r, *x, LambdaVec(y));
            const double scale = std::max(1.0, std::abs(rhs));
            w.update(std::max(0.0, (lhs - rhs) / scale), cfg.tol.quadratic_slack,
                     "trial " + std::to_string(trial));
        }
        out.push_back(summary_record("cones.quadratic_bound", "n=2..6", w, cfg.tol.quadratic_slack));
    }
    return out;
}

std::vector<VerificationRecord> run_cones_suite(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    for (auto&& part : {run_cones_rootedness(cfg), run_cones_garding(cfg),
                        run_cones_concavity(cfg), run_cones_nesting(cfg)})
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

// ---------------------------------------------------------------------------
// spaceform
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd random_model_point(double c, int coords, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd x(coords);
    for (int i = 0; i < coords; ++i) x[i] = gauss(rng);
    if (c == 0.0) return x;
    if (c > 0.0) return x / (x.norm() * std::sqrt(c));
    Eigen::VectorXd p(coords);
    double spatial = 0.0;
    for (int i = 1; i < coords; ++i) {
        p[i] = 0.7 * x[i];
        spatial += p[i] * p[i];
    }
    p[0] = std::sqrt(spatial + 1.0 / (-c));
    return p;
}

Eigen::VectorXd random_unit_tangent(double c, const Eigen::VectorXd& p, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd w(p.size());
    for (int i = 0; i < p.size(); ++i) w[i] = gauss(rng);
    Eigen::VectorXd t = spaceform::tangent_project(c, p, w);
    return t / std::sqrt(spaceform::model_inner(c, t, t));
}

} // namespace

std::vector<VerificationRecord> run_spaceform_suite(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;

    const std::array<double, 3> curvatures = {0.0, 1.0, -1.0};
    for (size_t ci = 0; ci < curvatures.size(); ++ci) {
        const double c = curvatures[ci];
        std::mt19937_64 rng(substream(cfg.seed, 301 + ci));
        const int coords = spaceform::model_coords(c, 3);
        Worst w_mem, w_metric, w_hess;
        for (int trial = 0; trial < 400; ++trial) {
            auto a = random_model_point(c, coords, rng);
            auto b = random_model_point(c, coords, rng);
            auto d = random_model_point(c, coords, rng);
            w_mem.update(spaceform::manifold_residual(c, a), cfg.tol.manifold, "");
            const double ab = spaceform::distance(c, a, b);
            const double sym = std::abs(ab - spaceform::distance(c, b, a)) / (1.0 + ab);
            const double tri = spaceform::distance(c, a, d) - ab - spaceform::distance(c, b, d);
            w_metric.update(sym, cfg.tol.triangle, "sym " + std::to_string(trial));
            w_metric.update(std::max(0.0, tri / (1.0 + ab)), cfg.tol.triangle,
                            "tri " + std::to_string(trial));
        }
        for (int trial = 0; trial < 60; ++trial) {
            auto q0 = random_model_point(c, coords, rng);
            auto p = random_model_point(c, coords, rng);
            const double d0 = spaceform::distance(c, q0, p);
            if (d0 < 0.3 || (c > 0.0 && d0 > 2.6)) continue;
            auto v = random_unit_tangent(c, p, rng);
            const double want = spaceform::distance_hessian(c, q0, p, v);
            const double h = 1e-4;
            auto at = [&](double s) {
                return spaceform::distance(c, q0, spaceform::geodesic(c, p, v, s));
            };
            const double fd = (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
            w_hess.update((want - fd) / (1.0 + std::abs(want)), cfg.tol.fd_distance_hessian,
                          "trial " + std::to_string(trial));
        }
        const std::string loc = "c=" + std::to_string(c);
        out.push_back(summary_record("spaceform.model_membership", loc, w_mem, cfg.tol.manifold));
        out.push_back(summary_record("spaceform.distance_metric", loc, w_metric, cfg.tol.triangle));
        out.push_back(
            summary_record("spaceform.distance_hessian_fd", loc, w_hess, cfg.tol.fd_distance_hessian));
    }

    { // monotonicity and c -> 0 limit of mu_c
        std::mt19937_64 rng(substream(cfg.seed, 320));
        std::uniform_real_distribution<double> tdist(0.05, 1.4);
        Worst w_mono, w_limit;
        for (double c : {0.0, 1.0, 2.0, -1.0, -3.0}) {
            for (int trial = 0; trial < 1000; ++trial) {
                double t1 = tdist(rng), t2 = tdist(rng);
                if (t1 == t2) continue;
                if (t1 > t2) std::swap(t1, t2);
                const bool decreasing =
                    spaceform::sphere_curvature(c, t1) > spaceform::sphere_curvature(c, t2);
                w_mono.update(decreasing ? 0.0 : 1.0, 0.5, "c=" + std::to_string(c));
            }
        }
        for (int k = 0; k <= 30; ++k) {
            const double t = 0.5 + 1.5 * k / 30.0;
            w_limit.update(spaceform::sphere_curvature(1e-6, t) - 1.0 / t, 1e-5, "t+");
            w_limit.update(spaceform::sphere_curvature(-1e-6, t) - 1.0 / t, 1e-5, "t-");
        }
        out.push_back(summary_record("spaceform.mu_monotone", "five curvatures", w_mono, 0.5));
        out.push_back(summary_record("spaceform.mu_limit", "t in [0.5, 2]", w_limit, 1e-5));
    }

    // geodesic spheres in each model reproduce mu_c(t) in all principal
    // curvatures (ties the distance machinery to the curvature engine)
    for (double c : {0.0, 1.0, -1.0}) {
        for (double t : {0.5, 1.0, 1.5}) {
            if (c > 0.0 && std::sqrt(c) * t >= M_PI / 2.0) continue;
            auto chart = hypersurface::make_chart(
                "sphere", c, {{"t", t}, {"n", 2.0}});
            const double want = spaceform::sphere_curvature(c, t);
            Worst w;
            for (const auto& u : rigidity::grid_points(*chart, {10, 10})) {
                auto pg = hypersurface::point_geometry(*chart, u);
                for (int i = 0; i < pg.n; ++i)
                    w.update(pg.lambda[i] - want, cfg.tol.sphere_match, "grid");
            }
            char loc[64];
            std::snprintf(loc, sizeof(loc), "c=%g t=%g", c, t);
            out.push_back(summary_record("spaceform.geodesic_sphere", loc, w, cfg.tol.sphere_match));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// walter
// ---------------------------------------------------------------------------

namespace {

struct ChartSpec {
    std::string label;
    std::string family;
    double c;
    hypersurface::FamilyParams params;
};

std::vector<ChartSpec> walter_battery() {
    return {
        {"sphere_flat", "sphere", 0.0, {{"t", 1.2}}},
        {"sphere_S", "sphere", 1.0, {{"t", 0.9}}},
        {"sphere_H", "sphere", -1.0, {{"t", 1.1}}},
        {"bump_flat", "bump_sphere", 0.0, {{"t", 1.0}, {"eps", 0.05}}},
        {"bump_S", "bump_sphere", 1.0, {{"t", 0.8}, {"eps", 0.05}}},
        {"bump_H", "bump_sphere", -1.0, {{"t", 1.0}, {"eps", 0.05}}},
        {"ellipsoid_R3", "ellipsoid", 0.0, {{"a", 1.0}, {"b", 1.1}, {"c", 1.25}}},
        {"ellipsoid_R4", "ellipsoid", 0.0, {{"a", 1.0}, {"b", 1.15}, {"c", 1.3}, {"d", 1.45}}},
        {"torus", "torus", 0.0, {}},
        {"cylinder", "cylinder", 0.0, {}},
    };
}

Eigen::VectorXd random_interior(const ImmersionChart& chart, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.1, 0.9);
    Eigen::VectorXd u(chart.dim());
    for (int i = 0; i < chart.dim(); ++i)
        u[i] = chart.domain().lo[i] + unit(rng) * (chart.domain().hi[i] - chart.domain().lo[i]);
    return u;
}

void walter_checks_for_chart(const RunConfig& cfg, const std::string& label,
                             const ImmersionChart& chart,
                             const std::vector<Eigen::VectorXd>& points,
                             std::vector<VerificationRecord>& out) {
    hypersurface::PointGeometryOptions opts;
    opts.eigen_gap_scale = cfg.tol.eigen_gap;

    Worst w_rel, w_charpoly, w_gauss, w_codazzi, w_sect, w_comm, w_trace, w_grad, w_flip;
    std::vector<VerificationRecord> walter_records;
    int degenerate = 0;
    int flip_samples = 0;

    for (size_t idx = 0; idx < points.size(); ++idx) {
        const Eigen::VectorXd& u = points[idx];
        const std::string ploc = label + " #" + std::to_string(idx);
        PointGeometry pg = hypersurface::point_geometry(chart, u, opts);
        const int n = pg.n;

        // curvature relation n^2 H^2 = |A|^2 + n(n-1)(R-c)
        const double H = pg.H_list[1];
        const double rel_scale = n * n * (1.0 + H * H);
        w_rel.update(hypersurface::curvature_relation_residual(pg) / rel_scale,
                     cfg.tol.curvature_relation, ploc);

        // char-poly sigma table of A equals elementary_all(lambda)
        auto table = elementary_all(LambdaVec(pg.lambda));
        for (int r = 0; r <= n; ++r) {
            const double want = table.sigma(r) / binomial(n, r);
            const double scale = 1.0 + std::abs(want);
            w_charpoly.update((pg.H_list[static_cast<size_t>(r)] - want) / scale,
                              cfg.tol.char_poly_match, ploc);
        }

        // intrinsic vs Gauss-equation Riemann, sectional curvatures, Codazzi
        double riem_scale = 1.0, nh_scale = 1.0, s2_scale = 1.0;
        for (double v : pg.riemann.v) riem_scale = std::max(riem_scale, std::abs(v));
        for (double v : pg.nabla_h.v) nh_scale = std::max(nh_scale, std::abs(v));
        for (double v : pg.nabla2_h.v) s2_scale = std::max(s2_scale, std::abs(v));
        w_gauss.update(hypersurface::gauss_consistency_residual(pg) / riem_scale,
                       cfg.tol.gauss_consistency, ploc);
        w_codazzi.update(hypersurface::codazzi_residual(pg) / nh_scale, cfg.tol.codazzi, ploc);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j)
                    w_sect.update((pg.K(i, j) - (pg.c + pg.lambda[i] * pg.lambda[j])) /
                                      (1.0 + std::abs(pg.K(i, j))),
                                  cfg.tol.sectional, ploc);
        w_comm.update(hypersurface::commutation_residual(pg) / s2_scale, cfg.tol.commutation, ploc);
        w_trace.update(hypersurface::trace_identity_residual(pg) / (1.0 + s2_scale),
                       cfg.tol.trace_identity, ploc);

        if (!pg.eigen_gap_ok) {
            ++degenerate;
            walter_records.push_back(
                VerificationRecord::skipped("walter.residual", ploc, "skipped-degenerate"));
            continue;
        }

        for (int r = 1; r <= n; ++r) {
            auto rec = hypersurface::walter_residual(pg, r, cfg.tol.walter_rel);
            rec.location = ploc + " r=" + std::to_string(r);
            walter_records.push_back(std::move(rec));

            for (int k = 0; k < n; ++k) {
                double ek_hr = 0.0;
                for (int i = 0; i < n; ++i) ek_hr += pg.eigenframe(i, k) * pg.dHr_chart(i, r);
                const double rhs = binomial(n, r) * ek_hr;
                w_grad.update(hypersurface::gradient_identity_residual(pg, r, k) /
                                  (1.0 + std::abs(rhs)),
                              cfg.tol.gradient_identity, ploc + " r=" + std::to_string(r));
            }
        }

        // orientation-flip invariance on a subsample
        if (flip_samples < 5) {
            ++flip_samples;
            hypersurface::PointGeometryOptions flip = opts;
            flip.flip_orientation = true;
            PointGeometry pf = hypersurface::point_geometry(chart, u, flip);
            if (pf.eigen_gap_ok) {
                for (int r = 1; r <= n; ++r) {
                    auto rec = hypersurface::walter_residual(pg, r, cfg.tol.walter_rel);
                    auto rec_f = hypersurface::walter_residual(pf, r, cfg.tol.walter_rel);
                    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
                    const double scale = 1.0 + std::abs(rec.lhs);
                    w_flip.update((rec_f.lhs - sign * rec.lhs) / scale, 1e-8, ploc);
                    w_flip.update((rec_f.rhs - sign * rec.rhs) / scale, 1e-8, ploc);
                }
            }
        }
    }

    out.push_back(summary_record("walter.curvature_relation." + label, label, w_rel,
                                 cfg.tol.curvature_relation));
    out.push_back(
        summary_record("walter.char_poly_match." + label, label, w_charpoly, cfg.tol.char_poly_match));
    out.push_back(
        summary_record("walter.gauss_consistency." + label, label, w_gauss, cfg.tol.gauss_consistency));
    out.push_back(summary_record("walter.codazzi." + label, label, w_codazzi, cfg.tol.codazzi));
    out.push_back(summary_record("walter.sectional." + label, label, w_sect, cfg.tol.sectional));
    out.push_back(summary_record("walter.commutation." + label, label, w_comm, cfg.tol.commutation));
    out.push_back(
        summary_record("walter.trace_identity." + label, label, w_trace, cfg.tol.trace_identity));
    if (w_grad.checked > 0)
        out.push_back(summary_record("walter.gradient_identity." + label, label, w_grad,
                                     cfg.tol.gradient_identity));
    if (w_flip.checked > 0)
        out.push_back(summary_record("walter.flip_invariance." + label, label, w_flip, 1e-8));
    out.insert(out.end(), walter_records.begin(), walter_records.end());
}

} // namespace

std::vector<VerificationRecord> run_walter_suite(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;
    if (cfg.suite == "walter") {
        auto chart = hypersurface::make_chart(cfg.family, cfg.c, cfg.params);
        auto points = rigidity::grid_points(*chart, cfg.grid);
        walter_checks_for_chart(cfg, cfg.family, *chart, points, out);
        return out;
    }
    const auto battery = walter_battery();
    for (size_t chart_idx = 0; chart_idx < battery.size(); ++chart_idx) {
        const auto& spec = battery[chart_idx];
        auto chart = hypersurface::make_chart(spec.family, spec.c, spec.params);
        std::mt19937_64 rng(substream(cfg.seed, 401 + chart_idx));
        std::vector<Eigen::VectorXd> points;
        points.reserve(kWalterTargetPoints);
        for (int i = 0; i < kWalterTargetPoints; ++i) points.push_back(random_interior(*chart, rng));
        walter_checks_for_chart(cfg, spec.label, *chart, points, out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// rigidity
// ---------------------------------------------------------------------------

namespace {

rigidity::ScanConfig scan_config(std::shared_ptr<const ImmersionChart> chart,
                                 std::vector<int> grid, int r, const RunConfig& cfg) {
    rigidity::ScanConfig sc;
    sc.chart = std::move(chart);
    sc.grid = std::move(grid);
    sc.r = r;
    sc.seed = cfg.seed;
    sc.tol = cfg.tol;
    return sc;
}

} // namespace

std::vector<VerificationRecord> run_rigidity_suite(const RunConfig& cfg) {
    std::vector<VerificationRecord> out;

    if (cfg.suite == "rigidity") {
        auto chart = hypersurface::make_chart(cfg.family, cfg.c, cfg.params);
        const int n = chart->dim();
        if (cfg.r < 2 || cfg.r > n)
            throw std::invalid_argument("rigidity suite requires r in 2..n for this family");
        auto sc = scan_config(chart, cfg.grid, cfg.r, cfg);
        auto elliptic = rigidity::elliptic_point_scan(sc);
        out.insert(out.end(), elliptic.records.begin(), elliptic.records.end());
        auto membership = rigidity::cone_membership_scan(sc);
        out.insert(out.end(), membership.records.begin(), membership.records.end());
        auto chain = rigidity::proof_chain_check(sc);
        out.insert(out.end(), chain.begin(), chain.end());
        auto cert = rigidity::umbilicity_certificate(sc);
        out.insert(out.end(), cert.records.begin(), cert.records.end());
        return out;
    }

    // sphere positive controls in the three models
    for (double c : {0.0, 1.0, -1.0}) {
        const double t = c > 0.0 ? 0.9 : 1.1;
        auto chart = hypersurface::make_chart("sphere", c, {{"t", t}});
        auto sc = scan_config(chart, {12, 12}, 2, cfg);
        auto cert = rigidity::umbilicity_certificate(sc);
        char loc[64];
        std::snprintf(loc, sizeof(loc), "sphere c=%g t=%g", c, t);
        out.push_back(VerificationRecord::checked(
            "rigidity.control.sphere_rigid", loc, cert.max_deficit, 0.0,
            cert.verdict == "RIGID" ? 0.0 : 1.0, 0.5, "verdict " + cert.verdict));
        out.push_back(VerificationRecord::checked("rigidity.control.sphere_range_H", loc,
                                                  cert.range_H, 0.0, cert.range_H,
                                                  cfg.tol.range_h));
        out.push_back(VerificationRecord::checked("rigidity.control.sphere_range_Hr", loc,
                                                  cert.range_Hr, 0.0, cert.range_Hr,
                                                  cfg.tol.range_h));
        out.insert(out.end(), cert.records.begin(), cert.records.end());

        auto elliptic = rigidity::elliptic_point_scan(sc);
        const double want = spaceform::sphere_curvature(c, t) - spaceform::alpha_c(c);
        out.push_back(VerificationRecord::checked(
            "rigidity.control.sphere_margin", loc, elliptic.best_margin, want,
            elliptic.best_margin - want, 1e-6 * (1.0 + std::abs(want)),
            elliptic.elliptic_point_found ? "elliptic point found" : "missing elliptic point"));
    }

    { // ellipsoid negative control: H visibly non-constant
        auto chart =
            hypersurface::make_chart("ellipsoid", 0.0, {{"a", 1.0}, {"b", 1.0}, {"c", 1.2}});
        auto cert = rigidity::umbilicity_certificate(scan_config(chart, {12, 12}, 2, cfg));
        out.push_back(VerificationRecord::checked(
            "rigidity.control.ellipsoid_range", "ellipsoid (1,1,1.2)", cert.range_H, 1e-2,
            cert.range_H > 1e-2 ? 0.0 : 1.0, 0.5,
            "range(H) must exceed 1e-2; verdict " + cert.verdict));
        out.insert(out.end(), cert.records.begin(), cert.records.end());
    }

    { // bump family: deficit and ranges scale linearly in eps
        auto scaling = rigidity::bump_scaling(0.0, 1.0, 2, {1e-2, 1e-3, 1e-4}, {10, 10}, 2);
        auto slope_record = [&](const std::string& id, double slope) {
            return VerificationRecord::checked("rigidity.bump_slope." + id, "eps 1e-2..1e-4",
                                               slope, 1.0, slope - 1.0, 0.2);
        };
        out.push_back(slope_record("deficit", scaling.slope_deficit));
        out.push_back(slope_record("range_H", scaling.slope_range_H));
        out.push_back(slope_record("range_Hr", scaling.slope_range_Hr));
    }

    { // proof-chain scans over cone-valued families
        auto ell3 = hypersurface::make_chart("ellipsoid", 0.0,
                                             {{"a", 1.0}, {"b", 1.1}, {"c", 1.25}});
        auto recs3 = rigidity::proof_chain_check(scan_config(ell3, {16, 16}, 2, cfg));
        out.insert(out.end(), recs3.begin(), recs3.end());

        auto ell4 = hypersurface::make_chart(
            "ellipsoid", 0.0, {{"a", 1.0}, {"b", 1.15}, {"c", 1.3}, {"d", 1.45}});
        for (int r : {2, 3}) {
            auto recs4 = rigidity::proof_chain_check(scan_config(ell4, {10, 10, 10}, r, cfg));
            out.insert(out.end(), recs4.begin(), recs4.end());
        }

        auto bump = hypersurface::make_chart("bump_sphere", -1.0, {{"t", 1.0}, {"eps", 0.01}});
        auto recsb = rigidity::proof_chain_check(scan_config(bump, {12, 12}, 2, cfg));
        out.insert(out.end(), recsb.begin(), recsb.end());
    }

    { // elliptic-point existence on the convex family, absence on the flat one
        auto ell4 = hypersurface::make_chart(
            "ellipsoid", 0.0, {{"a", 1.0}, {"b", 1.15}, {"c", 1.3}, {"d", 1.45}});
        auto found = rigidity::elliptic_point_scan(scan_config(ell4, {8, 8, 8}, 2, cfg));
        out.push_back(VerificationRecord::checked(
            "rigidity.control.ellipsoid_elliptic", "ellipsoid R4", found.best_margin, 0.0,
            found.elliptic_point_found ? 0.0 : 1.0, 0.5, "convex: every point qualifies"));

        auto cyl = hypersurface::make_chart("cylinder", 0.0, {});
        auto flat = rigidity::elliptic_point_scan(scan_config(cyl, {10, 8}, 2, cfg));
        out.push_back(VerificationRecord::checked(
            "rigidity.control.cylinder_flat", "cylinder", flat.best_margin, 0.0,
            flat.elliptic_point_found ? 1.0 : 0.0, 0.5, "flat direction: no elliptic point"));
    }

    return out;
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

std::vector<VerificationRecord> run_suite(const RunConfig& cfg) {
    validate_fields(cfg);
    std::vector<VerificationRecord> out;
    auto append = [&](std::vector<VerificationRecord>&& recs) {
        out.insert(out.end(), std::make_move_iterator(recs.begin()),
                   std::make_move_iterator(recs.end()));
    };
    if (cfg.suite == "symfun") append(run_symfun_suite(cfg));
    else if (cfg.suite == "cones") append(run_cones_suite(cfg));
    else if (cfg.suite == "spaceform") append(run_spaceform_suite(cfg));
    else if (cfg.suite == "walter") append(run_walter_suite(cfg));
    else if (cfg.suite == "rigidity") append(run_rigidity_suite(cfg));
    else { // all
        append(run_symfun_suite(cfg));
        append(run_cones_suite(cfg));
        append(run_spaceform_suite(cfg));
        append(run_walter_suite(cfg));
        append(run_rigidity_suite(cfg));
    }
    return out;
}

} // namespace curvlab::cli
