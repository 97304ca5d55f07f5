#include "curvlab/rigidity.hpp"

#include "curvlab/cones.hpp"
#include "curvlab/spaceform.hpp"
#include "curvlab/symfun.hpp"

#include <cmath>
#include <numeric>

namespace curvlab::rigidity {

using hypersurface::ImmersionChart;
using hypersurface::PointGeometry;
using report::VerificationRecord;

namespace {

std::vector<int> resolve_grid(const ImmersionChart& chart, std::vector<int> grid) {
    const int n = chart.dim();
    if (grid.empty()) grid.assign(static_cast<size_t>(n), 12);
    if (static_cast<int>(grid.size()) == 1) grid.assign(static_cast<size_t>(n), grid[0]);
    if (static_cast<int>(grid.size()) != n)
        throw std::invalid_argument("grid resolution list does not match the chart dimension");
    for (int res : grid)
        if (res < 8) throw std::invalid_argument("grid resolution must be >= 8 per axis");
    return grid;
}

std::string point_tag(const Eigen::VectorXd& u) {
    std::string out = "u=(";
    char buf[32];
    for (int i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.5g", u[i]);
        out += std::string(i ? "," : "") + buf;
    }
    return out + ")";
}

struct GridScan {
    std::vector<Eigen::VectorXd> us;
    std::vector<PointGeometry> pgs;
    std::vector<PointRecord> points;
};

GridScan scan(const ScanConfig& cfg, int r_for_cone) {
    if (!cfg.chart) throw std::invalid_argument("ScanConfig without a chart");
    GridScan out;
    out.us = grid_points(*cfg.chart, cfg.grid);
    out.pgs.reserve(out.us.size());
    out.points.reserve(out.us.size());
    hypersurface::PointGeometryOptions opts;
    opts.eigen_gap_scale = cfg.tol.eigen_gap;
    for (const auto& u : out.us) {
        PointGeometry pg = hypersurface::point_geometry(*cfg.chart, u, opts);
        PointRecord rec;
        rec.u = u;
        rec.lambda = pg.lambda;
        rec.H_list = pg.H_list;
        rec.eigen_gap_ok = pg.eigen_gap_ok;
        rec.deficit = pg.lambda[pg.n - 1] - pg.lambda[0];
        if (r_for_cone >= 1) {
            auto cone = cones::in_garding_cone(r_for_cone, symfun::LambdaVec(pg.lambda),
                                               cfg.tol.root_boundary);
            rec.in_cone = cone.in_cone;
            rec.near_boundary = cone.near_boundary;
        }
        out.points.push_back(std::move(rec));
        out.pgs.push_back(std::move(pg));
    }
    return out;
}

void fill_statistics(RigidityReport& rep, int r) {
    double h_min = std::numeric_limits<double>::infinity(), h_max = -h_min;
    double hr_min = h_min, hr_max = -h_min;
    double h_sum = 0.0, h_sq = 0.0, hr_sum = 0.0, hr_sq = 0.0;
    rep.max_deficit = 0.0;
    rep.min_lambda_min = std::numeric_limits<double>::infinity();
    for (const auto& p : rep.points) {
        const double H = p.H_list[1];
        const double Hr = p.H_list[static_cast<size_t>(r)];
        h_min = std::min(h_min, H);
        h_max = std::max(h_max, H);
        hr_min = std::min(hr_min, Hr);
        hr_max = std::max(hr_max, Hr);
        h_sum += H;
        h_sq += H * H;
        hr_sum += Hr;
        hr_sq += Hr * Hr;
        rep.max_deficit = std::max(rep.max_deficit, p.deficit);
        rep.min_lambda_min = std::min(rep.min_lambda_min, p.lambda[0]);
    }
    const double count = static_cast<double>(rep.points.size());
    rep.range_H = h_max - h_min;
    rep.range_Hr = hr_max - hr_min;
    rep.stddev_H = std::sqrt(std::max(0.0, h_sq / count - (h_sum / count) * (h_sum / count)));
    rep.stddev_Hr = std::sqrt(std::max(0.0, hr_sq / count - (hr_sum / count) * (hr_sum / count)));
}

RigidityReport base_report(const ScanConfig& cfg, GridScan&& gs, int r) {
    RigidityReport rep;
    rep.family = cfg.chart->name();
    rep.c = cfg.chart->curvature();
    rep.r = r;
    rep.points = std::move(gs.points);
    fill_statistics(rep, r);
    return rep;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double d = static_cast<double>(n);
    return (d * sxy - sx * sy) / (d * sxx - sx * sx);
}

} // namespace

std::vector<Eigen::VectorXd> grid_points(const ImmersionChart& chart,
                                         const std::vector<int>& grid) {
    const std::vector<int> res = resolve_grid(chart, grid);
    const int n = chart.dim();
    std::vector<Eigen::VectorXd> out;
    long total = 1;
    for (int r : res) total *= r;
    out.reserve(static_cast<size_t>(total));
    std::vector<int> idx(static_cast<size_t>(n), 0);
    while (true) {
        Eigen::VectorXd u(n);
        for (int i = 0; i < n; ++i) {
            const double frac = res[static_cast<size_t>(i)] == 1
                                    ? 0.5
                                    : static_cast<double>(idx[static_cast<size_t>(i)]) /
                                          static_cast<double>(res[static_cast<size_t>(i)] - 1);
            u[i] = chart.domain().lo[i] + frac * (chart.domain().hi[i] - chart.domain().lo[i]);
        }
        out.push_back(std::move(u));
        int axis = n - 1;
        while (axis >= 0 && ++idx[static_cast<size_t>(axis)] == res[static_cast<size_t>(axis)]) {
            idx[static_cast<size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

RigidityReport elliptic_point_scan(const ScanConfig& cfg) {
    GridScan gs = scan(cfg, /*r_for_cone=*/0);
    RigidityReport rep = base_report(cfg, std::move(gs), std::min(cfg.r, cfg.chart->dim()));

    const double c = rep.c;
    const double alpha = spaceform::alpha_c(c);
    const Eigen::VectorXd center = cfg.chart->suggested_center();

    rep.best_margin = -std::numeric_limits<double>::infinity();
    rep.max_distance = 0.0;
    for (const auto& p : rep.points) {
        const Eigen::VectorXd pos = cfg.chart->map_value(p.u);
        rep.max_distance = std::max(rep.max_distance, spaceform::distance(c, center, pos));
        const double margin = p.lambda[0] - alpha;
        if (margin > rep.best_margin) {
            rep.best_margin = margin;
            rep.best_point = p.u;
        }
    }
    // strictness margin mirrors the cone boundary tolerance: a flat
    // direction (lambda_min = 0 up to round-off) must not count as elliptic
    double lam_scale = 1.0;
    for (const auto& p : rep.points) lam_scale = std::max(lam_scale, p.lambda.cwiseAbs().maxCoeff());
    rep.elliptic_point_found = rep.best_margin > cfg.tol.root_boundary * lam_scale;
    rep.bounded_ok = c > 0.0 ? rep.max_distance < M_PI / (2.0 * std::sqrt(c)) : true;

    if (c > 0.0) {
        rep.records.push_back(VerificationRecord::checked(
            "rigidity.elliptic.bounded", rep.family, rep.max_distance,
            M_PI / (2.0 * std::sqrt(c)), rep.bounded_ok ? 0.0 : 1.0, 0.5,
            "image must stay inside the quarter-turn ball"));
    }
    rep.records.push_back(VerificationRecord::checked(
        "rigidity.elliptic.margin",
        rep.family + " " + (rep.best_point.size() ? point_tag(rep.best_point) : ""),
        rep.best_margin, 0.0, 0.0, std::numeric_limits<double>::infinity(),
        rep.elliptic_point_found ? "elliptic point found" : "no elliptic point on grid"));
    return rep;
}

RigidityReport cone_membership_scan(const ScanConfig& cfg) {
    const int n = cfg.chart->dim();
    if (cfg.r < 2 || cfg.r > n)
        throw std::invalid_argument("cone_membership_scan: r must be in 2..n");
    GridScan gs = scan(cfg, cfg.r);
    RigidityReport rep = base_report(cfg, std::move(gs), cfg.r);
    for (const auto& p : rep.points) {
        if (p.in_cone)
            ++rep.cone_members;
        else
            ++rep.cone_failures;
    }
    rep.records.push_back(VerificationRecord::checked(
        "rigidity.cone_membership", rep.family + " r=" + std::to_string(cfg.r),
        static_cast<double>(rep.cone_members), static_cast<double>(rep.points.size()), 0.0,
        std::numeric_limits<double>::infinity(),
        std::to_string(rep.cone_failures) + " points outside Gamma_r"));
    return rep;
}

std::vector<VerificationRecord> proof_chain_check(const ScanConfig& cfg) {
    const int n = cfg.chart->dim();
    // r = 1 is a degenerate edge (zero sigma hessian, (r-1)/r = 0): both
    // sides vanish and the inequality is trivially tight
    if (cfg.r < 1 || cfg.r > n)
        throw std::invalid_argument("proof_chain_check: r must be in 1..n");
    const int r = cfg.r;
    GridScan gs = scan(cfg, r);

    std::vector<VerificationRecord> records;
    int violations = 0, checked = 0, skipped = 0;
    double worst_slack = 0.0;
    for (size_t p = 0; p < gs.pgs.size(); ++p) {
        const PointGeometry& pg = gs.pgs[p];
        const PointRecord& rec = gs.points[p];
        if (!rec.in_cone || rec.near_boundary || !rec.eigen_gap_ok) {
            ++skipped;
            continue;
        }
        const symfun::LambdaVec lam(pg.lambda);
        const auto grad = symfun::sigma_grad(r, lam);
        const Eigen::MatrixXd hess =
            r >= 2 ? symfun::sigma_hess(r, lam) : Eigen::MatrixXd::Zero(n, n);
        const double cnr_hr = symfun::binomial(n, r) * pg.H_list[static_cast<size_t>(r)];
        for (int k = 0; k < n; ++k) {
            double quad = 0.0;
            double dot = 0.0;
            for (int i = 0; i < n; ++i) {
                dot += pg.nabla_h.at(i, i, k) * grad[i];
                for (int j = 0; j < n; ++j)
                    quad += pg.nabla_h.at(i, i, k) * pg.nabla_h.at(j, j, k) * hess(i, j);
            }
            const double lhs = cnr_hr * quad;
            const double rhs = (static_cast<double>(r - 1) / r) * dot * dot;
            const double scale = std::max(1.0, std::abs(rhs));
            ++checked;
            worst_slack = std::max(worst_slack, (lhs - rhs) / scale);
            if (lhs > rhs + cfg.tol.proof_chain_slack * scale) {
                ++violations;
                records.push_back(VerificationRecord::checked(
                    "rigidity.proof_chain.violation", point_tag(rec.u) + " k=" + std::to_string(k),
                    lhs, rhs, (lhs - rhs) / scale, cfg.tol.proof_chain_slack));
            }
            // cross-check the inner sum against C(n,r) e_k(H_r)
            const double gres = hypersurface::gradient_identity_residual(pg, r, k);
            if (std::abs(gres) > cfg.tol.gradient_identity * (1.0 + std::abs(dot))) {
                records.push_back(VerificationRecord::checked(
                    "rigidity.proof_chain.gradient_crosscheck",
                    point_tag(rec.u) + " k=" + std::to_string(k), dot, dot - gres, gres,
                    cfg.tol.gradient_identity * (1.0 + std::abs(dot))));
            }
        }
    }
    char note[160];
    std::snprintf(note, sizeof(note), "%d inequalities checked, %d points skipped, worst slack %.3g",
                  checked, skipped, worst_slack);
    records.push_back(VerificationRecord::checked(
        "rigidity.proof_chain", cfg.chart->name() + " r=" + std::to_string(r),
        static_cast<double>(violations), 0.0, static_cast<double>(violations), 0.5, note));
    return records;
}

RigidityReport umbilicity_certificate(const ScanConfig& cfg) {
    const int n = cfg.chart->dim();
    if (cfg.r < 2 || cfg.r > n)
        throw std::invalid_argument("umbilicity_certificate: r must be in 2..n");
    GridScan gs = scan(cfg, cfg.r);
    RigidityReport rep = base_report(cfg, std::move(gs), cfg.r);
    for (const auto& p : rep.points) {
        if (p.in_cone)
            ++rep.cone_members;
        else
            ++rep.cone_failures;
        if (!p.eigen_gap_ok) ++rep.skipped_degenerate;
    }

    const bool rigid = rep.max_deficit <= cfg.tol.tol_umb;
    rep.verdict = rigid ? "RIGID" : "NOT_RIGID";
    rep.records.push_back(VerificationRecord::checked(
        "rigidity.umbilicity.deficit", rep.family + " r=" + std::to_string(cfg.r),
        rep.max_deficit, 0.0, rep.max_deficit,
        std::numeric_limits<double>::infinity(),
        "verdict " + rep.verdict + " at tol_umb=" + std::to_string(cfg.tol.tol_umb)));

    // theorem consistency: constant H and H_r on a bounded family force
    // the RIGID verdict (the scan refutes itself otherwise)
    const bool theorem_instance = rep.range_H <= cfg.tol.range_h && rep.range_Hr <= cfg.tol.range_h;
    if (theorem_instance) {
        rep.records.push_back(VerificationRecord::checked(
            "rigidity.theorem_consistency", rep.family + " r=" + std::to_string(cfg.r),
            rep.max_deficit, 0.0, rigid ? 0.0 : rep.max_deficit, cfg.tol.tol_umb,
            "range(H) and range(H_r) below threshold: umbilicity required"));
    } else {
        rep.records.push_back(VerificationRecord::checked(
            "rigidity.not_theorem_instance", rep.family + " r=" + std::to_string(cfg.r),
            rep.range_H, 0.0, 0.0, 1.0,
            "H or H_r non-constant; no rigidity claim triggered"));
    }
    return rep;
}

BumpScaling bump_scaling(double c, double t, int n, const std::vector<double>& eps_values,
                         const std::vector<int>& grid, int r) {
    BumpScaling out;
    for (double eps : eps_values) {
        auto chart = hypersurface::make_chart(
            "bump_sphere", c, {{"t", t}, {"eps", eps}, {"n", static_cast<double>(n)}});
        ScanConfig cfg;
        cfg.chart = chart;
        cfg.grid = grid;
        cfg.r = r;
        RigidityReport rep = umbilicity_certificate(cfg);
        out.eps.push_back(eps);
        out.deficit.push_back(rep.max_deficit);
        out.range_H.push_back(rep.range_H);
        out.range_Hr.push_back(rep.range_Hr);
    }
    out.slope_deficit = fit_loglog_slope(out.eps, out.deficit);
    out.slope_range_H = fit_loglog_slope(out.eps, out.range_H);
    out.slope_range_Hr = fit_loglog_slope(out.eps, out.range_Hr);
    return out;
}

} // namespace curvlab::rigidity
