#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvlab {

/// Truncated multivariate Taylor value: all partial derivatives of a scalar
/// with respect to the chart coordinates up to total order 4, stored as
/// Taylor coefficients (derivative / alpha!). Arithmetic is triangular in
/// the total degree, so coefficients of degree k in any result depend only
/// on degrees <= k of the operands.
///
/// A Jet with nvars() == 0 is a dimensionless constant and broadcasts when
/// combined with a sized jet. Mixing two different nonzero sizes throws.
class Jet {
public:
    static constexpr int kOrder = 4;

    Jet() : nvars_(0), coef_(1, 0.0) {}
    Jet(double value) : nvars_(0), coef_(1, value) {}

    static Jet constant(int nvars, double value);
    static Jet variable(int nvars, int k, double value);

    int nvars() const { return nvars_; }
    double value() const { return coef_[0]; }

    /// First-order Taylor coefficient along coordinate k (= d/du_k value).
    double partial(int k) const;

    /// Taylor coefficient for the exponent tuple alpha (|alpha| <= 4).
    double coefficient(const std::vector<int>& alpha) const;

    /// Derivative jet d/du_k. One order of accuracy is consumed: the top
    /// coefficients of the result are zero-filled and must not be read.
    Jet derivative(int k) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(const Jet& rhs);
    Jet& operator/=(const Jet& rhs);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

    /// Composition with a univariate analytic function given by its Taylor
    /// coefficients f_k = f^{(k)}(value())/k!, k = 0..4.
    Jet compose(const std::array<double, kOrder + 1>& fk) const;

    const std::vector<double>& coefficients() const { return coef_; }

private:
    void promote_to(int nvars);
    int nvars_;
    std::vector<double> coef_;

    friend Jet jet_mul(const Jet& a, const Jet& b);
};

Jet sqrt(const Jet& x);
Jet recip(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet pow(const Jet& x, double a);

} // namespace curvlab
