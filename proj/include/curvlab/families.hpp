#pragma once

#include "curvlab/hypersurface.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace curvlab::hypersurface {

using FamilyParams = std::map<std::string, double>;

/// Built-in analytic chart families:
///   sphere      geodesic sphere of radius t, any ambient curvature.
///   bump_sphere radial graph rho = t (1 + eps b(u)) over the sphere.
///   ellipsoid   semiaxes a,b,c[,d] in flat ambient (n = 2 or 3).
///   torus       torus of revolution (R, r) in flat R^3.
///   cylinder    S^1(a) x R^{n-1} in flat ambient.
std::vector<std::string> family_names();

/// Builds a chart and fixes its normal orientation (h_11 >= 0 at the base
/// point). Unknown family names and unknown parameter keys are rejected.
std::shared_ptr<ImmersionChart> make_chart(const std::string& family, double c,
                                           const FamilyParams& params = {});

} // namespace curvlab::hypersurface
