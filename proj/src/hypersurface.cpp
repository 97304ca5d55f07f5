#include "curvlab/hypersurface.hpp"

#include "curvlab/spaceform.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace curvlab::hypersurface {

namespace {

using JetVec = std::vector<Jet>;

Jet inner(double c, const JetVec& a, const JetVec& b) {
    Jet acc = a[0] * b[0];
    if (c < 0.0) acc = Jet(-1.0) * acc;
    for (size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Gauss-Jordan inverse of an n x n jet matrix, pivoting on values.
// Also returns the determinant. Throws when the value matrix is singular.
void invert_jet_matrix(int n, const std::vector<Jet>& m, std::vector<Jet>& inv, Jet& det) {
    std::vector<Jet> a = m;
    auto at = [n](std::vector<Jet>& v, int i, int j) -> Jet& {
        return v[static_cast<size_t>(i * n + j)];
    };
    inv.assign(static_cast<size_t>(n * n), Jet(0.0));
    for (int i = 0; i < n; ++i) at(inv, i, i) = Jet(1.0);
    det = Jet(1.0);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(at(a, col, col).value());
        for (int row = col + 1; row < n; ++row) {
            const double cand = std::abs(at(a, row, col).value());
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best < 1e-13) throw std::domain_error("jet matrix is numerically singular");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(a, col, j), at(a, pivot, j));
                std::swap(at(inv, col, j), at(inv, pivot, j));
            }
            det = Jet(-1.0) * det;
        }
        Jet diag = at(a, col, col);
        det *= diag;
        Jet inv_diag = recip(diag);
        for (int j = 0; j < n; ++j) {
            at(a, col, j) *= inv_diag;
            at(inv, col, j) *= inv_diag;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            Jet factor = at(a, row, col);
            for (int j = 0; j < n; ++j) {
                at(a, row, j) -= factor * at(a, col, j);
                at(inv, row, j) -= factor * at(inv, col, j);
            }
        }
    }
}

// Everything the per-point operators need, in jets, at one chart point.
struct JetFrame {
    int n = 0;
    int m = 0;
    double c = 0.0;
    double sign = 1.0;
    std::vector<Jet> u_jets;
    JetVec f;
    std::vector<JetVec> tangent; // tangent[i] = d_i f
    std::vector<Jet> g;          // n*n
    std::vector<Jet> g_inv;      // n*n
    Jet det_g;
    Jet sqrt_det_g;
    JetVec xi;
    std::vector<Jet> h;     // n*n
    std::vector<Jet> gamma; // n*n*n indexed (k,i,j)

    Jet& gm(std::vector<Jet>& v, int i, int j) { return v[static_cast<size_t>(i * n + j)]; }
    const Jet& G(int i, int j) const { return g[static_cast<size_t>(i * n + j)]; }
    const Jet& Ginv(int i, int j) const { return g_inv[static_cast<size_t>(i * n + j)]; }
    const Jet& H(int i, int j) const { return h[static_cast<size_t>(i * n + j)]; }
    const Jet& Gam(int k, int i, int j) const {
        return gamma[static_cast<size_t>((k * n + i) * n + j)];
    }

    double laplacian(const Jet& scalar) const {
        const Jet s = Jet::constant(n, 0.0) + scalar;
        Jet div(0.0);
        for (int i = 0; i < n; ++i) {
            Jet flux(0.0);
            for (int j = 0; j < n; ++j) flux += Ginv(i, j) * s.derivative(j);
            flux *= sqrt_det_g;
            div += flux.derivative(i);
        }
        return div.value() / sqrt_det_g.value();
    }

    Eigen::MatrixXd covariant_hessian(const Jet& scalar) const {
        const Jet s = Jet::constant(n, 0.0) + scalar;
        Eigen::MatrixXd hess(n, n);
        std::vector<double> ds(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) ds[static_cast<size_t>(k)] = s.partial(k);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double v = s.derivative(i).derivative(j).value();
                for (int k = 0; k < n; ++k) v -= Gam(k, i, j).value() * ds[static_cast<size_t>(k)];
                hess(i, j) = v;
            }
        }
        return 0.5 * (hess + hess.transpose());
    }
};

// Builds the jet frame: map, tangents, metric, normal, second fundamental
// form and (optionally) Christoffels.
JetFrame build_frame(const ImmersionChart& chart, const Eigen::VectorXd& u,
                     const PointGeometryOptions& opts, bool with_gamma) {
    if (u.size() != chart.dim()) throw std::invalid_argument("chart point has wrong dimension");
    JetFrame fr;
    fr.n = chart.dim();
    fr.m = chart.ambient_coords();
    fr.c = chart.curvature();
    fr.sign = chart.orientation_sign() * (opts.flip_orientation ? -1.0 : 1.0);

    fr.u_jets.reserve(static_cast<size_t>(fr.n));
    for (int i = 0; i < fr.n; ++i) fr.u_jets.push_back(Jet::variable(fr.n, i, u[i]));
    fr.f = chart.map(fr.u_jets);
    if (static_cast<int>(fr.f.size()) != fr.m)
        throw std::logic_error("chart map returned wrong ambient dimension");
    // coordinates that came back as bare constants still need the full
    // variable count before they can be differentiated
    for (auto& comp : fr.f) comp = Jet::constant(fr.n, 0.0) + comp;

    fr.tangent.resize(static_cast<size_t>(fr.n));
    for (int i = 0; i < fr.n; ++i) {
        fr.tangent[static_cast<size_t>(i)].reserve(static_cast<size_t>(fr.m));
        for (int a = 0; a < fr.m; ++a)
            fr.tangent[static_cast<size_t>(i)].push_back(
                fr.f[static_cast<size_t>(a)].derivative(i));
    }

    fr.g.assign(static_cast<size_t>(fr.n * fr.n), Jet(0.0));
    for (int i = 0; i < fr.n; ++i) {
        for (int j = i; j < fr.n; ++j) {
            Jet gij =
                inner(fr.c, fr.tangent[static_cast<size_t>(i)], fr.tangent[static_cast<size_t>(j)]);
            fr.gm(fr.g, i, j) = gij;
            if (i != j) fr.gm(fr.g, j, i) = gij;
        }
    }
    invert_jet_matrix(fr.n, fr.g, fr.g_inv, fr.det_g);
    if (fr.det_g.value() <= 0.0) throw std::domain_error("degenerate first fundamental form");
    fr.sqrt_det_g = sqrt(fr.det_g);

    // Normal: orthogonalize the chart's hint against the model-normal
    // direction (the position, for curved models) and the tangents.
    const double s0 = fr.c > 0.0 ? 1.0 : -1.0; // sign of <f,f> when c != 0
    std::vector<JetVec> basis;
    std::vector<double> basis_sign;
    if (fr.c != 0.0) {
        Jet pos_norm = sqrt(Jet(s0) * inner(fr.c, fr.f, fr.f));
        Jet inv_norm = recip(pos_norm);
        JetVec e0;
        e0.reserve(static_cast<size_t>(fr.m));
        for (int a = 0; a < fr.m; ++a) e0.push_back(fr.f[static_cast<size_t>(a)] * inv_norm);
        basis.push_back(std::move(e0));
        basis_sign.push_back(s0);
    }
    for (int i = 0; i < fr.n; ++i) {
        JetVec t = fr.tangent[static_cast<size_t>(i)];
        for (size_t b = 0; b < basis.size(); ++b) {
            Jet proj = Jet(basis_sign[b]) * inner(fr.c, t, basis[b]);
            for (int a = 0; a < fr.m; ++a)
                t[static_cast<size_t>(a)] -= proj * basis[b][static_cast<size_t>(a)];
        }
        Jet norm_sq = inner(fr.c, t, t);
        if (norm_sq.value() <= 1e-16) throw std::domain_error("immersion condition fails at point");
        Jet inv_norm = recip(sqrt(norm_sq));
        for (auto& comp : t) comp *= inv_norm;
        basis.push_back(std::move(t));
        basis_sign.push_back(1.0);
    }
    JetVec xi = chart.normal_hint(fr.u_jets, fr.f);
    for (size_t b = 0; b < basis.size(); ++b) {
        Jet proj = Jet(basis_sign[b]) * inner(fr.c, xi, basis[b]);
        for (int a = 0; a < fr.m; ++a)
            xi[static_cast<size_t>(a)] -= proj * basis[b][static_cast<size_t>(a)];
    }
    Jet xi_norm_sq = inner(fr.c, xi, xi);
    if (xi_norm_sq.value() <= 1e-16)
        throw std::domain_error("vanishing normal candidate: hint lies in the tangent space");
    Jet xi_scale = recip(sqrt(xi_norm_sq)) * Jet(fr.sign);
    for (auto& comp : xi) comp *= xi_scale;
    fr.xi = std::move(xi);

    // h_ij = <d_i d_j f, xi>. For curved models the position component of
    // the flat second derivative is annihilated because xi is model-tangent.
    fr.h.assign(static_cast<size_t>(fr.n * fr.n), Jet(0.0));
    for (int i = 0; i < fr.n; ++i) {
        for (int j = i; j < fr.n; ++j) {
            JetVec dij;
            dij.reserve(static_cast<size_t>(fr.m));
            for (int a = 0; a < fr.m; ++a)
                dij.push_back(fr.tangent[static_cast<size_t>(j)][static_cast<size_t>(a)].derivative(i));
            Jet hij = inner(fr.c, dij, fr.xi);
            fr.gm(fr.h, i, j) = hij;
            if (i != j) fr.gm(fr.h, j, i) = hij;
        }
    }

    if (with_gamma) {
        const int n = fr.n;
        std::vector<Jet> dg(static_cast<size_t>(n * n * n), Jet(0.0)); // (k,i,j) = d_k g_ij
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    dg[static_cast<size_t>((k * n + i) * n + j)] = fr.G(i, j).derivative(k);
        auto dgat = [&](int k, int i, int j) -> const Jet& {
            return dg[static_cast<size_t>((k * n + i) * n + j)];
        };
        fr.gamma.assign(static_cast<size_t>(n * n * n), Jet(0.0));
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    Jet acc(0.0);
                    for (int l = 0; l < n; ++l)
                        acc += fr.Ginv(k, l) * (dgat(i, j, l) + dgat(j, i, l) - dgat(l, i, j));
                    fr.gamma[static_cast<size_t>((k * n + i) * n + j)] = Jet(0.5) * acc;
                }
            }
        }
    }
    return fr;
}

Eigen::MatrixXd values_of(const JetFrame& fr, const std::vector<Jet>& mat) {
    Eigen::MatrixXd out(fr.n, fr.n);
    for (int i = 0; i < fr.n; ++i)
        for (int j = 0; j < fr.n; ++j) out(i, j) = mat[static_cast<size_t>(i * fr.n + j)].value();
    return out;
}

Eigen::VectorXd vector_values(const JetVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value();
    return out;
}

} // namespace

int ImmersionChart::ambient_coords() const {
    return spaceform::model_coords(c_, dim_ + 1);
}

Eigen::VectorXd ImmersionChart::suggested_center() const {
    return Eigen::VectorXd::Zero(ambient_coords());
}

Eigen::VectorXd ImmersionChart::map_value(const Eigen::VectorXd& u) const {
    std::vector<Jet> uj;
    uj.reserve(static_cast<size_t>(u.size()));
    for (int i = 0; i < u.size(); ++i) uj.emplace_back(u[i]);
    auto f = map(uj);
    Eigen::VectorXd out(static_cast<Eigen::Index>(f.size()));
    for (size_t a = 0; a < f.size(); ++a) out[static_cast<Eigen::Index>(a)] = f[a].value();
    return out;
}

FundamentalForms fundamental_forms(const ImmersionChart& chart, const Eigen::VectorXd& u,
                                   const PointGeometryOptions& opts) {
    JetFrame fr = build_frame(chart, u, opts, /*with_gamma=*/false);
    FundamentalForms out;
    out.g = values_of(fr, fr.g);
    out.h = values_of(fr, fr.h);
    out.normal = vector_values(fr.xi);
    out.position = vector_values(fr.f);
    return out;
}

PointGeometry point_geometry(const ImmersionChart& chart, const Eigen::VectorXd& u,
                             const PointGeometryOptions& opts) {
    JetFrame fr = build_frame(chart, u, opts, /*with_gamma=*/true);
    const int n = fr.n;

    PointGeometry pg;
    pg.u = u;
    pg.n = n;
    pg.c = fr.c;
    pg.normal_sign = fr.sign;
    pg.position = vector_values(fr.f);
    pg.normal = vector_values(fr.xi);
    pg.g = values_of(fr, fr.g);
    pg.g_inv = values_of(fr, fr.g_inv);
    pg.h = values_of(fr, fr.h);

    // Shape operator jets A = g^{-1} h; H_r through char-poly coefficients,
    // never through eigenvalues, so the scalars stay smooth in u.
    std::vector<Jet> A(static_cast<size_t>(n * n), Jet(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet acc(0.0);
            for (int k = 0; k < n; ++k) acc += fr.Ginv(i, k) * fr.H(k, j);
            A[static_cast<size_t>(i * n + j)] = acc;
        }
    pg.A = values_of(fr, A);

    std::vector<Jet> power_sums;
    power_sums.reserve(static_cast<size_t>(n));
    std::vector<Jet> Apow = A;
    auto trace_of = [n](const std::vector<Jet>& mat) {
        Jet t(0.0);
        for (int i = 0; i < n; ++i) t += mat[static_cast<size_t>(i * n + i)];
        return t;
    };
    power_sums.push_back(trace_of(Apow));
    for (int k = 2; k <= n; ++k) {
        std::vector<Jet> next(static_cast<size_t>(n * n), Jet(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet acc(0.0);
                for (int l = 0; l < n; ++l)
                    acc += Apow[static_cast<size_t>(i * n + l)] * A[static_cast<size_t>(l * n + j)];
                next[static_cast<size_t>(i * n + j)] = acc;
            }
        Apow = std::move(next);
        power_sums.push_back(trace_of(Apow));
    }
    std::vector<Jet> sigma = symfun::elementary_from_power_sums(std::span<const Jet>(power_sums));
    std::vector<Jet> Hr(static_cast<size_t>(n) + 1, Jet(0.0));
    for (int r = 0; r <= n; ++r)
        Hr[static_cast<size_t>(r)] = Jet::constant(n, 0.0) +
                                     Jet(1.0 / symfun::binomial(n, r)) * sigma[static_cast<size_t>(r)];

    pg.H_list.resize(static_cast<size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) pg.H_list[static_cast<size_t>(r)] = Hr[static_cast<size_t>(r)].value();
    pg.R_scalar = fr.c + pg.H_list[2];

    pg.dHr_chart = Eigen::MatrixXd::Zero(n, n + 1);
    for (int r = 0; r <= n; ++r)
        for (int i = 0; i < n; ++i) pg.dHr_chart(i, r) = Hr[static_cast<size_t>(r)].partial(i);

    pg.laplace_H.resize(static_cast<size_t>(n) + 1);
    for (int r = 0; r <= n; ++r)
        pg.laplace_H[static_cast<size_t>(r)] = fr.laplacian(Hr[static_cast<size_t>(r)]);

    // Principal curvatures and g-orthonormal eigenframe, ascending.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(pg.h, pg.g);
    if (es.info() != Eigen::Success) throw std::runtime_error("generalized eigensolve failed");
    Eigen::VectorXd lam_raw = es.eigenvalues();
    Eigen::MatrixXd frame_raw = es.eigenvectors();
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return lam_raw[a] < lam_raw[b]; });
    pg.lambda.resize(n);
    pg.eigenframe.resize(n, n);
    for (int i = 0; i < n; ++i) {
        pg.lambda[i] = lam_raw[order[static_cast<size_t>(i)]];
        pg.eigenframe.col(i) = frame_raw.col(order[static_cast<size_t>(i)]);
    }

    const double lam_scale = 1.0 + pg.lambda.cwiseAbs().maxCoeff();
    pg.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i)
        pg.min_gap = std::min(pg.min_gap, pg.lambda[i + 1] - pg.lambda[i]);
    pg.eigen_gap_ok = pg.min_gap >= opts.eigen_gap_scale * lam_scale;

    // Covariant derivatives of h in the chart.
    std::vector<Jet> S(static_cast<size_t>(n * n * n), Jet(0.0)); // (i,j,k) = h_{ij;k}
    auto Sat = [&](int i, int j, int k) -> Jet& {
        return S[static_cast<size_t>((i * n + j) * n + k)];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet acc = fr.H(i, j).derivative(k);
                for (int m2 = 0; m2 < n; ++m2) {
                    acc -= fr.Gam(m2, k, i) * fr.H(m2, j);
                    acc -= fr.Gam(m2, k, j) * fr.H(i, m2);
                }
                Sat(i, j, k) = acc;
            }

    Tensor4 S2(n); // (i,j,k,l) = h_{ijk;l}, values only
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double acc = Sat(i, j, k).derivative(l).value();
                    for (int m2 = 0; m2 < n; ++m2) {
                        acc -= fr.Gam(m2, l, i).value() * Sat(m2, j, k).value();
                        acc -= fr.Gam(m2, l, j).value() * Sat(i, m2, k).value();
                        acc -= fr.Gam(m2, l, k).value() * Sat(i, j, m2).value();
                    }
                    S2.at(i, j, k, l) = acc;
                }

    // Intrinsic curvature, convention R(e_i,e_j)e_k with
    // K(e_i,e_j) = R(e_i,e_j,e_j,e_i):
    // R^m_{ijk} = d_i Gamma^m_{jk} - d_j Gamma^m_{ik}
    //           + Gamma^m_{ip} Gamma^p_{jk} - Gamma^m_{jp} Gamma^p_{ik}.
    Tensor4 riem_chart(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m2 = 0; m2 < n; ++m2) {
                    double acc = fr.Gam(m2, j, k).derivative(i).value() -
                                 fr.Gam(m2, i, k).derivative(j).value();
                    for (int p = 0; p < n; ++p) {
                        acc += fr.Gam(m2, i, p).value() * fr.Gam(p, j, k).value();
                        acc -= fr.Gam(m2, j, p).value() * fr.Gam(p, i, k).value();
                    }
                    riem_chart.at(i, j, k, m2) = acc; // upper index in the last slot
                }
    Tensor4 riem_lowered(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double acc = 0.0;
                    for (int m2 = 0; m2 < n; ++m2) acc += pg.g(l, m2) * riem_chart.at(i, j, k, m2);
                    riem_lowered.at(i, j, k, l) = acc;
                }

    // Gauss equation path in the same convention:
    // R_{ijkl} = c (g_il g_jk - g_ik g_jl) + h_il h_jk - h_ik h_jl.
    Tensor4 gauss_chart(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    gauss_chart.at(i, j, k, l) =
                        fr.c * (pg.g(i, l) * pg.g(j, k) - pg.g(i, k) * pg.g(j, l)) +
                        pg.h(i, l) * pg.h(j, k) - pg.h(i, k) * pg.h(j, l);

    // Rotate into the eigenframe.
    const Eigen::MatrixXd& E = pg.eigenframe;
    pg.christoffel = Tensor3(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) pg.christoffel.at(k, i, j) = fr.Gam(k, i, j).value();

    pg.nabla_h = Tensor3(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cdx = 0; cdx < n; ++cdx) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k)
                            acc += Sat(i, j, k).value() * E(i, a) * E(j, b) * E(k, cdx);
                pg.nabla_h.at(a, b, cdx) = acc;
            }

    pg.nabla2_h = Tensor4(n);
    pg.riemann = Tensor4(n);
    pg.riemann_gauss = Tensor4(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cdx = 0; cdx < n; ++cdx)
                for (int d = 0; d < n; ++d) {
                    double acc_s2 = 0.0, acc_r = 0.0, acc_g = 0.0;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            for (int k = 0; k < n; ++k)
                                for (int l = 0; l < n; ++l) {
                                    const double w = E(i, a) * E(j, b) * E(k, cdx) * E(l, d);
                                    acc_s2 += S2.at(i, j, k, l) * w;
                                    acc_r += riem_lowered.at(i, j, k, l) * w;
                                    acc_g += gauss_chart.at(i, j, k, l) * w;
                                }
                    pg.nabla2_h.at(a, b, cdx, d) = acc_s2;
                    pg.riemann.at(a, b, cdx, d) = acc_r;
                    pg.riemann_gauss.at(a, b, cdx, d) = acc_g;
                }

    pg.K = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) pg.K(i, j) = pg.riemann.at(i, j, j, i);

    const Eigen::MatrixXd hessH_chart = fr.covariant_hessian(Hr[1]);
    pg.hessH_frame = E.transpose() * hessH_chart * E;

    return pg;
}

double laplace_beltrami(const ImmersionChart& chart, const Eigen::VectorXd& u,
                        const std::function<Jet(const std::vector<Jet>&)>& scalar) {
    JetFrame fr = build_frame(chart, u, {}, /*with_gamma=*/false);
    return fr.laplacian(scalar(fr.u_jets));
}

double curvature_relation_residual(const PointGeometry& pg) {
    const double n = pg.n;
    const double H = pg.H_list[1];
    const double a_sq = pg.lambda.squaredNorm();
    return n * n * H * H - a_sq - n * (n - 1.0) * (pg.R_scalar - pg.c);
}

report::VerificationRecord walter_residual(const PointGeometry& pg, int r, double rel_tolerance) {
    const int n = pg.n;
    if (r < 1 || r > n) throw std::invalid_argument("walter_residual: r must be in 1..n");
    char loc[160];
    if (n == 2)
        std::snprintf(loc, sizeof(loc), "u=(%.5g,%.5g) r=%d", pg.u[0], pg.u[1], r);
    else
        std::snprintf(loc, sizeof(loc), "u=(%.5g,%.5g,...) r=%d", pg.u[0], pg.u[1], r);
    if (!pg.eigen_gap_ok)
        return report::VerificationRecord::skipped("walter.residual", loc, "skipped-degenerate");

    const symfun::LambdaVec lam(pg.lambda);
    const auto grad = symfun::sigma_grad(r, lam);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    if (r >= 2) hess = symfun::sigma_hess(r, lam);

    const double lhs = symfun::binomial(n, r) * pg.laplace_H[static_cast<size_t>(r)];

    double term1 = 0.0;
    for (int j = 0; j < n; ++j) term1 += grad[j] * pg.hessH_frame(j, j);
    term1 *= static_cast<double>(n);

    double term2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dl = pg.lambda[i] - pg.lambda[j];
            term2 += hess(i, j) * dl * dl * pg.K(i, j);
        }

    double term3 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                term3 += hess(i, j) * (pg.nabla_h.at(i, i, k) * pg.nabla_h.at(j, j, k) -
                                       pg.nabla_h.at(i, j, k) * pg.nabla_h.at(i, j, k));

    const double rhs = term1 - term2 + term3;
    const double rel = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
    return report::VerificationRecord::checked("walter.residual", loc, lhs, rhs, rel, rel_tolerance);
}

double gradient_identity_residual(const PointGeometry& pg, int r, int k) {
    const int n = pg.n;
    if (r < 1 || r > n) throw std::invalid_argument("gradient_identity_residual: bad r");
    if (k < 0 || k >= n) throw std::invalid_argument("gradient_identity_residual: bad k");
    if (!pg.eigen_gap_ok) throw std::domain_error("gradient_identity_residual: degenerate frame");
    const symfun::LambdaVec lam(pg.lambda);
    const auto grad = symfun::sigma_grad(r, lam);
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += pg.nabla_h.at(j, j, k) * grad[j];
    double ek_hr = 0.0;
    for (int i = 0; i < n; ++i) ek_hr += pg.eigenframe(i, k) * pg.dHr_chart(i, r);
    const double rhs = symfun::binomial(n, r) * ek_hr;
    return lhs - rhs;
}

double commutation_residual(const PointGeometry& pg) {
    const int n = pg.n;
    const Eigen::MatrixXd h_frame = pg.eigenframe.transpose() * pg.h * pg.eigenframe;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double rhs = 0.0;
                    for (int m = 0; m < n; ++m) {
                        rhs += pg.riemann.at(k, l, i, m) * h_frame(m, j);
                        rhs += pg.riemann.at(k, l, j, m) * h_frame(i, m);
                    }
                    const double lhs = pg.nabla2_h.at(i, j, k, l) - pg.nabla2_h.at(i, j, l, k);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
    return worst;
}

double codazzi_residual(const PointGeometry& pg) {
    const int n = pg.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double base = pg.nabla_h.at(i, j, k);
                worst = std::max(worst, std::abs(base - pg.nabla_h.at(i, k, j)));
                worst = std::max(worst, std::abs(base - pg.nabla_h.at(j, i, k)));
                worst = std::max(worst, std::abs(base - pg.nabla_h.at(j, k, i)));
                worst = std::max(worst, std::abs(base - pg.nabla_h.at(k, i, j)));
                worst = std::max(worst, std::abs(base - pg.nabla_h.at(k, j, i)));
            }
    return worst;
}

double gauss_consistency_residual(const PointGeometry& pg) {
    double worst = 0.0;
    for (size_t i = 0; i < pg.riemann.v.size(); ++i)
        worst = std::max(worst, std::abs(pg.riemann.v[i] - pg.riemann_gauss.v[i]));
    return worst;
}

double trace_identity_residual(const PointGeometry& pg) {
    const int n = pg.n;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += pg.nabla2_h.at(k, k, j, j);
        worst = std::max(worst, std::abs(n * pg.hessH_frame(j, j) - sum));
    }
    return worst;
}

} // namespace curvlab::hypersurface
