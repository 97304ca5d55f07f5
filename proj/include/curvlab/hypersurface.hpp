#pragma once

#include "curvlab/jet.hpp"
#include "curvlab/report.hpp"
#include "curvlab/symfun.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace curvlab::hypersurface {

using curvlab::Jet;

struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
};

/// Parametrized analytic immersion of a chart box into a model of
/// Q^{n+1}_c. The map is evaluated in jet arithmetic; that single entry
/// point supplies every derivative the curvature pipeline needs.
class ImmersionChart {
public:
    virtual ~ImmersionChart() = default;

    int dim() const { return dim_; }
    double curvature() const { return c_; }
    int ambient_coords() const;
    const Box& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    const std::string& family_tag() const { return family_tag_; }

    /// Chart map in jets; u.size() == dim().
    virtual std::vector<Jet> map(const std::vector<Jet>& u) const = 0;

    /// Analytic ambient field transverse to the tangent space, used to seed
    /// the normal construction so the resulting frame is continuous over
    /// the whole chart.
    virtual std::vector<Jet> normal_hint(const std::vector<Jet>& u,
                                         const std::vector<Jet>& f) const = 0;

    /// Center used by distance-based checks (pole of the model for curved
    /// ambients, origin for the flat one).
    virtual Eigen::VectorXd suggested_center() const;

    Eigen::VectorXd map_value(const Eigen::VectorXd& u) const;

    /// Global sign applied to the normal so h_11 >= 0 at the chart's base
    /// point; fixed once per chart (see finalize_orientation in families).
    double orientation_sign() const { return orientation_sign_; }
    void set_orientation_sign(double s) { orientation_sign_ = s; }

protected:
    ImmersionChart(std::string name, std::string family_tag, int dim, double c, Box domain)
        : name_(std::move(name)), family_tag_(std::move(family_tag)), dim_(dim), c_(c),
          domain_(std::move(domain)) {}

private:
    std::string name_;
    std::string family_tag_;
    int dim_ = 0;
    double c_ = 0.0;
    Box domain_;
    double orientation_sign_ = 1.0;
};

struct Tensor3 {
    int n = 0;
    std::vector<double> v;
    explicit Tensor3(int dim = 0) : n(dim), v(static_cast<size_t>(dim * dim * dim), 0.0) {}
    double& at(int i, int j, int k) { return v[static_cast<size_t>((i * n + j) * n + k)]; }
    double at(int i, int j, int k) const { return v[static_cast<size_t>((i * n + j) * n + k)]; }
};

struct Tensor4 {
    int n = 0;
    std::vector<double> v;
    explicit Tensor4(int dim = 0) : n(dim), v(static_cast<size_t>(dim * dim * dim * dim), 0.0) {}
    double& at(int i, int j, int k, int l) {
        return v[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
    }
    double at(int i, int j, int k, int l) const {
        return v[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
    }
};

struct PointGeometryOptions {
    bool flip_orientation = false;
    double eigen_gap_scale = 1e-5; // reliability threshold for the eigenframe
};

/// All curvature data of the immersion at one chart point. Frame-indexed
/// tensors live in the g-orthonormal eigenframe of the shape operator
/// (ascending principal curvatures).
struct PointGeometry {
    Eigen::VectorXd u;
    int n = 0;
    double c = 0.0;
    double normal_sign = 1.0;

    Eigen::VectorXd position; // ambient model point
    Eigen::VectorXd normal;   // unit model-tangent normal

    Eigen::MatrixXd g, g_inv, h, A;
    Tensor3 christoffel; // Gamma^k_{ij} indexed (k, i, j)

    Eigen::VectorXd lambda;     // ascending
    Eigen::MatrixXd eigenframe; // columns E_k, g-orthonormal
    bool eigen_gap_ok = false;
    double min_gap = 0.0;

    std::vector<double> H_list; // H_0..H_n via char-poly coefficients of A
    double R_scalar = 0.0;      // c + H_2

    Tensor3 nabla_h;        // frame components h_{ijk}
    Tensor4 nabla2_h;       // frame components h_{ijkl}
    Tensor4 riemann;        // intrinsic, frame components R_{ijkl}
    Tensor4 riemann_gauss;  // via the Gauss equation, frame components
    Eigen::MatrixXd K;      // sectional curvatures of eigenplane pairs

    Eigen::MatrixXd hessH_frame;     // covariant Hessian of H in the frame
    Eigen::MatrixXd dHr_chart;       // (i, r) -> d H_r / d u^i at u
    std::vector<double> laplace_H;   // Delta H_r, r = 0..n

    double mean_curvature() const { return H_list[1]; }
};

/// First and second fundamental forms plus the unit normal at u.
struct FundamentalForms {
    Eigen::MatrixXd g;
    Eigen::MatrixXd h;
    Eigen::VectorXd normal;
    Eigen::VectorXd position;
};

FundamentalForms fundamental_forms(const ImmersionChart& chart, const Eigen::VectorXd& u,
                                   const PointGeometryOptions& opts = {});

PointGeometry point_geometry(const ImmersionChart& chart, const Eigen::VectorXd& u,
                             const PointGeometryOptions& opts = {});

/// Laplace-Beltrami operator of a chart scalar, by jet arithmetic:
/// (1/sqrt(det g)) d_i(sqrt(det g) g^{ij} d_j s).
double laplace_beltrami(const ImmersionChart& chart, const Eigen::VectorXd& u,
                        const std::function<Jet(const std::vector<Jet>&)>& scalar);

/// n^2 H^2 - |A|^2 - n(n-1)(R - c) with R = c + H_2.
double curvature_relation_residual(const PointGeometry& pg);

/// Both sides of the Laplacian identity for C(n,r) H_r, assembled from two
/// independent pipelines: the left side is a jet Laplacian of the char-poly
/// H_r scalar, the right side is curvature data in the eigenframe.
report::VerificationRecord walter_residual(const PointGeometry& pg, int r,
                                           double rel_tolerance = 1e-5);

/// LHS - RHS of sum_j h_{jjk} dsigma_r/dx_j(lambda) = C(n,r) e_k(H_r).
double gradient_identity_residual(const PointGeometry& pg, int r, int k);

/// max_{ijkl} |h_{ijkl} - h_{ijlk} - sum_m R_{klim} h_{mj} - sum_m R_{kljm} h_{im}|.
double commutation_residual(const PointGeometry& pg);

/// max over index permutations of |h_{ijk} - h_{perm(ijk)}| (Codazzi).
double codazzi_residual(const PointGeometry& pg);

/// max_{ijkl} |riemann - riemann_gauss| over frame components.
double gauss_consistency_residual(const PointGeometry& pg);

/// n Hess H(e_j, e_j) - sum_k h_{kkjj}, maximized over j.
double trace_identity_residual(const PointGeometry& pg);

} // namespace curvlab::hypersurface
