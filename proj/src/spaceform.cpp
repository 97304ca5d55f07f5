#include "curvlab/spaceform.hpp"

namespace curvlab::spaceform {

namespace {

// Clamp into [lo, hi] when within slack of the interval; larger violations
// indicate off-manifold inputs and are errors, not round-off.
double clamp_or_throw(double v, double lo, double hi, double slack, const char* what) {
    if (v < lo - slack || v > hi + slack)
        throw std::domain_error(std::string(what) + ": argument outside valid range");
    return std::min(hi, std::max(lo, v));
}

} // namespace

int model_coords(double c, int n_ambient) {
    return c == 0.0 ? n_ambient : n_ambient + 1;
}

double model_inner(double c, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    std::span<const double> us(u.data(), static_cast<size_t>(u.size()));
    std::span<const double> vs(v.data(), static_cast<size_t>(v.size()));
    return model_inner_kernel(c, us, vs);
}

double manifold_residual(double c, const Eigen::VectorXd& p) {
    if (c == 0.0) return 0.0;
    double res = std::abs(model_inner(c, p, p) - 1.0 / c);
    if (c < 0.0 && p[0] <= 0.0) res = std::numeric_limits<double>::infinity();
    return res;
}

void require_on_manifold(double c, const Eigen::VectorXd& p, double tol) {
    if (manifold_residual(c, p) > tol * (1.0 + std::abs(1.0 / (c == 0.0 ? 1.0 : c))))
        throw std::domain_error("point violates the model constraint");
}

void require_tangent(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& v, double tol) {
    if (c == 0.0) return;
    const double scale = 1.0 + p.norm() * v.norm();
    if (std::abs(model_inner(c, p, v)) > tol * scale)
        throw std::domain_error("vector is not model-tangent at the given point");
}

Eigen::VectorXd tangent_project(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& w) {
    if (c == 0.0) return w;
    return w - c * model_inner(c, w, p) * p;
}

double distance(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    require_on_manifold(c, p);
    require_on_manifold(c, q);
    if (c == 0.0) return (p - q).norm();
    const double ip = c * model_inner(c, p, q);
    if (c > 0.0) {
        const double arg = clamp_or_throw(ip, -1.0, 1.0, 1e-12, "distance");
        return std::acos(arg) / std::sqrt(c);
    }
    const double arg = std::max(1.0, clamp_or_throw(ip, 1.0,
                                                    std::numeric_limits<double>::infinity(),
                                                    1e-12, "distance"));
    return std::acosh(arg) / std::sqrt(-c);
}

Eigen::VectorXd geodesic(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& v, double s) {
    require_on_manifold(c, p);
    require_tangent(c, p, v);
    if (c == 0.0) return p + s * v;
    if (c > 0.0) {
        const double w = std::sqrt(c);
        return std::cos(w * s) * p + (std::sin(w * s) / w) * v;
    }
    const double w = std::sqrt(-c);
    return std::cosh(w * s) * p + (std::sinh(w * s) / w) * v;
}

Eigen::VectorXd distance_gradient(double c, const Eigen::VectorXd& q0, const Eigen::VectorXd& p) {
    const double d = distance(c, q0, p);
    if (d <= 0.0) throw std::domain_error("distance_gradient: singular at the center");
    if (c == 0.0) return (p - q0) / d;
    Eigen::VectorXd radial = -tangent_project(c, p, q0);
    const double norm = std::sqrt(model_inner(c, radial, radial));
    if (norm == 0.0)
        throw std::domain_error("distance_gradient: antipodal configuration");
    return radial / norm;
}

double sphere_curvature(double c, double t) {
    if (t <= 0.0) throw std::domain_error("sphere_curvature: radius must be positive");
    if (c > 0.0) {
        const double w = std::sqrt(c);
        if (t >= M_PI / w)
            throw std::domain_error("sphere_curvature: radius beyond the focal distance");
        return w / std::tan(w * t);
    }
    if (c == 0.0) return 1.0 / t;
    const double w = std::sqrt(-c);
    return w / std::tanh(w * t);
}

double distance_hessian(double c, const Eigen::VectorXd& q0, const Eigen::VectorXd& p,
                        const Eigen::VectorXd& v) {
    require_tangent(c, p, v);
    const double d = distance(c, q0, p);
    if (d <= 0.0) throw std::domain_error("distance_hessian: singular at the center");
    const Eigen::VectorXd grad = distance_gradient(c, q0, p);
    const double radial = model_inner(c, v, grad);
    const Eigen::VectorXd v2 = v - radial * grad;
    const double v2sq = model_inner(c, v2, v2);
    return sphere_curvature(c, d) * v2sq;
}

double alpha_c(double c) {
    return c >= 0.0 ? 0.0 : std::sqrt(-c);
}

} // namespace curvlab::spaceform
