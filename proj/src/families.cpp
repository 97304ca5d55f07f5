#include "curvlab/families.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab::hypersurface {

namespace {

// Unit vector in R^{n+1} from n angles: the iterated spherical chart
// omega_1 = cos u_0, omega_k = sin u_0 ... sin u_{k-2} cos u_{k-1},
// omega_{n+1} = sin u_0 ... sin u_{n-1}.
std::vector<Jet> unit_sphere_chart(const std::vector<Jet>& u) {
    const size_t n = u.size();
    std::vector<Jet> omega(n + 1, Jet(0.0));
    Jet sines(1.0);
    for (size_t k = 0; k < n; ++k) {
        omega[k] = sines * cos(u[k]);
        sines *= sin(u[k]);
    }
    omega[n] = sines;
    return omega;
}

Box angular_domain(int n) {
    Box box;
    box.lo = Eigen::VectorXd::Constant(n, 0.4);
    box.hi = Eigen::VectorXd::Constant(n, M_PI - 0.4);
    box.hi[n - 1] = 2.0 * M_PI - 0.4; // azimuth
    return box;
}

double get_or(const FamilyParams& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown_keys(const FamilyParams& params, std::initializer_list<const char*> known,
                         const std::string& family) {
    for (const auto& [key, value] : params) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end()) {
            std::string allowed;
            for (const char* k : known) allowed += std::string(allowed.empty() ? "" : ", ") + k;
            throw std::invalid_argument("family '" + family + "': unknown parameter '" + key +
                                        "' (known: " + allowed + ")");
        }
    }
}

int int_param(double v, const char* what) {
    const int n = static_cast<int>(std::lround(v));
    if (std::abs(v - n) > 1e-9) throw std::invalid_argument(std::string(what) + " must be integral");
    return n;
}

// Geodesic-radial graph over the sphere of radius t around the model pole:
// rho(u) = t (1 + eps b(u)). With eps = 0 this is the geodesic sphere.
class RadialGraphChart final : public ImmersionChart {
public:
    RadialGraphChart(std::string name, int n, double c, double t, double eps)
        : ImmersionChart(std::move(name), "radial_graph", n, c, angular_domain(n)),
          t_(t), eps_(eps) {
        if (t <= 0.0) throw std::invalid_argument("sphere radius must be positive");
        if (c > 0.0 && std::sqrt(c) * t * (1.0 + std::abs(eps)) >= M_PI * 0.5)
            throw std::invalid_argument("sphere radius too large for the spherical model");
    }

    Jet rho(const std::vector<Jet>& u) const {
        if (eps_ == 0.0) return Jet(t_);
        Jet b = sin(2.0 * u[0] + 0.3) * cos(u[1] - 0.4);
        if (u.size() >= 3) b *= sin(u[2] + 0.9);
        return Jet(t_) * (1.0 + Jet(eps_) * b);
    }

    std::vector<Jet> map(const std::vector<Jet>& u) const override {
        const int n = dim();
        const double c = curvature();
        auto omega = unit_sphere_chart(u);
        Jet r = rho(u);
        std::vector<Jet> f(static_cast<size_t>(ambient_coords()), Jet(0.0));
        if (c == 0.0) {
            for (int a = 0; a <= n; ++a) f[static_cast<size_t>(a)] = r * omega[static_cast<size_t>(a)];
        } else if (c > 0.0) {
            const double w = std::sqrt(c);
            Jet radial = sin(Jet(w) * r) * Jet(1.0 / w);
            for (int a = 0; a <= n; ++a)
                f[static_cast<size_t>(a)] = radial * omega[static_cast<size_t>(a)];
            f[static_cast<size_t>(n + 1)] = cos(Jet(w) * r) * Jet(1.0 / w);
        } else {
            const double w = std::sqrt(-c);
            f[0] = cosh(Jet(w) * r) * Jet(1.0 / w);
            Jet radial = sinh(Jet(w) * r) * Jet(1.0 / w);
            for (int a = 0; a <= n; ++a)
                f[static_cast<size_t>(a + 1)] = radial * omega[static_cast<size_t>(a)];
        }
        return f;
    }

    // Direction of increasing rho (the geodesic-sphere normal when eps = 0).
    std::vector<Jet> normal_hint(const std::vector<Jet>& u,
                                 const std::vector<Jet>& /*f*/) const override {
        const int n = dim();
        const double c = curvature();
        auto omega = unit_sphere_chart(u);
        std::vector<Jet> hint(static_cast<size_t>(ambient_coords()), Jet(0.0));
        if (c == 0.0) {
            for (int a = 0; a <= n; ++a) hint[static_cast<size_t>(a)] = omega[static_cast<size_t>(a)];
        } else if (c > 0.0) {
            const double w = std::sqrt(c);
            Jet r = rho(u);
            for (int a = 0; a <= n; ++a)
                hint[static_cast<size_t>(a)] = cos(Jet(w) * r) * omega[static_cast<size_t>(a)];
            hint[static_cast<size_t>(n + 1)] = Jet(-1.0) * sin(Jet(w) * r);
        } else {
            const double w = std::sqrt(-c);
            Jet r = rho(u);
            hint[0] = sinh(Jet(w) * r);
            for (int a = 0; a <= n; ++a)
                hint[static_cast<size_t>(a + 1)] = cosh(Jet(w) * r) * omega[static_cast<size_t>(a)];
        }
        return hint;
    }

    Eigen::VectorXd suggested_center() const override {
        Eigen::VectorXd pole = Eigen::VectorXd::Zero(ambient_coords());
        const double c = curvature();
        if (c > 0.0) pole[ambient_coords() - 1] = 1.0 / std::sqrt(c);
        if (c < 0.0) pole[0] = 1.0 / std::sqrt(-c);
        return pole;
    }

private:
    double t_;
    double eps_;
};

class EllipsoidChart final : public ImmersionChart {
public:
    EllipsoidChart(std::string name, std::vector<double> axes)
        : ImmersionChart(std::move(name), "ellipsoid", static_cast<int>(axes.size()) - 1, 0.0,
                         angular_domain(static_cast<int>(axes.size()) - 1)),
          axes_(std::move(axes)) {
        for (double a : axes_)
            if (a <= 0.0) throw std::invalid_argument("ellipsoid semiaxes must be positive");
    }

    std::vector<Jet> map(const std::vector<Jet>& u) const override {
        auto omega = unit_sphere_chart(u);
        std::vector<Jet> f(axes_.size(), Jet(0.0));
        for (size_t a = 0; a < axes_.size(); ++a) f[a] = Jet(axes_[a]) * omega[a];
        return f;
    }

    std::vector<Jet> normal_hint(const std::vector<Jet>& /*u*/,
                                 const std::vector<Jet>& f) const override {
        return f; // radial from the origin
    }

private:
    std::vector<double> axes_;
};

class TorusChart final : public ImmersionChart {
public:
    TorusChart(std::string name, double big_radius, double tube_radius)
        : ImmersionChart(std::move(name), "torus", 2, 0.0, torus_domain()),
          R_(big_radius), r_(tube_radius) {
        if (!(R_ > r_ && r_ > 0.0))
            throw std::invalid_argument("torus requires R > r > 0");
    }

    // v centered on the outer equator, so the base-point orientation rule
    // picks the normal that makes the convex region positively curved
    static Box torus_domain() {
        Box box;
        box.lo = Eigen::VectorXd::Constant(2, 0.3);
        box.hi = Eigen::VectorXd::Constant(2, 2.0 * M_PI - 0.3);
        box.lo[1] = -M_PI + 0.3;
        box.hi[1] = M_PI - 0.3;
        return box;
    }

    std::vector<Jet> map(const std::vector<Jet>& u) const override {
        Jet ring = Jet(R_) + Jet(r_) * cos(u[1]);
        return {ring * cos(u[0]), ring * sin(u[0]), Jet(r_) * sin(u[1])};
    }

    std::vector<Jet> normal_hint(const std::vector<Jet>& u,
                                 const std::vector<Jet>& /*f*/) const override {
        // tube-radial direction
        return {cos(u[1]) * cos(u[0]), cos(u[1]) * sin(u[0]), sin(u[1])};
    }

private:
    double R_;
    double r_;
};

class CylinderChart final : public ImmersionChart {
public:
    CylinderChart(std::string name, int n, double radius)
        : ImmersionChart(std::move(name), "cylinder", n, 0.0, cylinder_domain(n)), a_(radius) {
        if (a_ <= 0.0) throw std::invalid_argument("cylinder radius must be positive");
    }

    static Box cylinder_domain(int n) {
        Box box;
        box.lo = Eigen::VectorXd::Constant(n, -1.0);
        box.hi = Eigen::VectorXd::Constant(n, 1.0);
        box.lo[0] = 0.3;
        box.hi[0] = 2.0 * M_PI - 0.3;
        return box;
    }

    std::vector<Jet> map(const std::vector<Jet>& u) const override {
        std::vector<Jet> f(static_cast<size_t>(dim()) + 1, Jet(0.0));
        f[0] = Jet(a_) * cos(u[0]);
        f[1] = Jet(a_) * sin(u[0]);
        for (int i = 1; i < dim(); ++i) f[static_cast<size_t>(i + 1)] = u[static_cast<size_t>(i)];
        return f;
    }

    std::vector<Jet> normal_hint(const std::vector<Jet>& u,
                                 const std::vector<Jet>& /*f*/) const override {
        std::vector<Jet> hint(static_cast<size_t>(dim()) + 1, Jet(0.0));
        hint[0] = cos(u[0]);
        hint[1] = sin(u[0]);
        return hint;
    }

private:
    double a_;
};

void finalize_orientation(ImmersionChart& chart) {
    chart.set_orientation_sign(1.0);
    const auto forms = fundamental_forms(chart, chart.domain().center());
    if (forms.h(0, 0) < 0.0) chart.set_orientation_sign(-1.0);
}

} // namespace

std::vector<std::string> family_names() {
    return {"sphere", "bump_sphere", "ellipsoid", "torus", "cylinder"};
}

std::shared_ptr<ImmersionChart> make_chart(const std::string& family, double c,
                                           const FamilyParams& params) {
    std::shared_ptr<ImmersionChart> chart;
    if (family == "sphere") {
        reject_unknown_keys(params, {"t", "n"}, family);
        const int n = int_param(get_or(params, "n", 2.0), "n");
        if (n < 2 || n > 4) throw std::invalid_argument("sphere: n must be in 2..4");
        chart = std::make_shared<RadialGraphChart>("sphere", n, c, get_or(params, "t", 1.0), 0.0);
    } else if (family == "bump_sphere") {
        reject_unknown_keys(params, {"t", "eps", "n"}, family);
        const int n = int_param(get_or(params, "n", 2.0), "n");
        if (n < 2 || n > 4) throw std::invalid_argument("bump_sphere: n must be in 2..4");
        chart = std::make_shared<RadialGraphChart>("bump_sphere", n, c, get_or(params, "t", 1.0),
                                                   get_or(params, "eps", 1e-3));
    } else if (family == "ellipsoid") {
        reject_unknown_keys(params, {"a", "b", "c", "d"}, family);
        if (c != 0.0) throw std::invalid_argument("ellipsoid requires flat ambient (c = 0)");
        std::vector<double> axes = {get_or(params, "a", 1.0), get_or(params, "b", 1.1),
                                    get_or(params, "c", 1.25)};
        if (params.count("d")) axes.push_back(params.at("d"));
        chart = std::make_shared<EllipsoidChart>("ellipsoid", std::move(axes));
    } else if (family == "torus") {
        reject_unknown_keys(params, {"R", "r"}, family);
        if (c != 0.0) throw std::invalid_argument("torus requires flat ambient (c = 0)");
        chart = std::make_shared<TorusChart>("torus", get_or(params, "R", 2.0),
                                             get_or(params, "r", 0.5));
    } else if (family == "cylinder") {
        reject_unknown_keys(params, {"a", "n"}, family);
        if (c != 0.0) throw std::invalid_argument("cylinder requires flat ambient (c = 0)");
        const int n = int_param(get_or(params, "n", 2.0), "n");
        if (n < 2 || n > 4) throw std::invalid_argument("cylinder: n must be in 2..4");
        chart = std::make_shared<CylinderChart>("cylinder", n, get_or(params, "a", 1.0));
    } else {
        std::string known;
        for (const auto& name : family_names())
            known += (known.empty() ? "" : ", ") + name;
        throw std::invalid_argument("unknown family '" + family + "'; known families: " + known);
    }
    finalize_orientation(*chart);
    return chart;
}

} // namespace curvlab::hypersurface
