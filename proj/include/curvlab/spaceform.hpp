#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <stdexcept>

namespace curvlab::spaceform {

/// Coordinate count of the model of Q^{n+1}_c: flat space uses n+1 numbers,
/// the sphere and hyperboloid models embed in one dimension higher.
int model_coords(double c, int n_ambient);

/// Signature-aware pairing: Euclidean for c >= 0, Minkowski (-,+,...,+)
/// for c < 0. Generic over the scalar so the jet pipeline can reuse it.
template <class T>
T model_inner_kernel(double c, std::span<const T> u, std::span<const T> v) {
    if (u.size() != v.size()) throw std::invalid_argument("model_inner: dimension mismatch");
    T acc = u[0] * v[0];
    if (c < 0.0) acc = T(-1.0) * acc;
    for (size_t i = 1; i < u.size(); ++i) acc = acc + u[i] * v[i];
    return acc;
}

double model_inner(double c, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// |<p,p> - 1/c| for curved models, 0 for c = 0.
double manifold_residual(double c, const Eigen::VectorXd& p);

/// Throws unless p satisfies the model constraint within tol.
void require_on_manifold(double c, const Eigen::VectorXd& p, double tol = 1e-10);

/// Throws unless v is model-tangent at p within tol (no-op for c = 0).
void require_tangent(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                     double tol = 1e-10);

/// Component of w tangent to the model at p.
Eigen::VectorXd tangent_project(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& w);

/// Geodesic distance between model points.
double distance(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// Unit-speed geodesic through p with initial velocity v (unit, tangent).
Eigen::VectorXd geodesic(double c, const Eigen::VectorXd& p, const Eigen::VectorXd& v, double s);

/// Gradient of the distance-to-q0 function at p (unit tangent, points away
/// from q0).
Eigen::VectorXd distance_gradient(double c, const Eigen::VectorXd& q0, const Eigen::VectorXd& p);

/// Principal curvature mu_c(t) of the geodesic sphere of radius t.
double sphere_curvature(double c, double t);

/// Hess r(v, v) at p for r = d(., q0): the radial part of v contributes
/// nothing, the sphere-tangent part contributes mu_c(d) |v_2|^2.
double distance_hessian(double c, const Eigen::VectorXd& q0, const Eigen::VectorXd& p,
                        const Eigen::VectorXd& v);

/// Elliptic-point margin: 0 for c >= 0, sqrt(-c) for c < 0.
double alpha_c(double c);

} // namespace curvlab::spaceform
