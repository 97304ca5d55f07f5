#include "curvlab/jet.hpp"

#include "doctest.h"

#include <cmath>

using curvlab::Jet;

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

TEST_SUITE_BEGIN("jet");

TEST_CASE("polynomial jets are exact") {
    // p(u, v) = (u + 2v)^3 at (0.5, -0.25); Taylor coefficients are the
    // trinomial expansion around the base point.
    const double u0 = 0.5, v0 = -0.25;
    Jet u = Jet::variable(2, 0, u0);
    Jet v = Jet::variable(2, 1, v0);
    Jet base = u + 2.0 * v;
    Jet p = base * base * base;
    const double b0 = u0 + 2.0 * v0;
    CHECK(p.value() == doctest::Approx(b0 * b0 * b0).epsilon(1e-15));
    CHECK(p.coefficient({1, 0}) == doctest::Approx(3.0 * b0 * b0).epsilon(1e-15));
    CHECK(p.coefficient({0, 1}) == doctest::Approx(6.0 * b0 * b0).epsilon(1e-15));
    CHECK(p.coefficient({1, 1}) == doctest::Approx(12.0 * b0).epsilon(1e-15));
    CHECK(p.coefficient({2, 0}) == doctest::Approx(3.0 * b0).epsilon(1e-15));
    CHECK(p.coefficient({3, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.coefficient({2, 1}) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(p.coefficient({0, 3}) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(p.coefficient({4, 0}) == 0.0);
}

TEST_CASE("sin of a linear form has closed-form coefficients") {
    // f = sin(a u + b w): the alpha coefficient is
    // a^i b^j sin(phase + |alpha| pi/2) / alpha!.
    const double a = 1.3, b = -0.7, u0 = 0.4, w0 = 0.9;
    Jet u = Jet::variable(2, 0, u0);
    Jet w = Jet::variable(2, 1, w0);
    Jet f = sin(a * u + b * w);
    const double phase = a * u0 + b * w0;
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; i + j <= 4; ++j) {
            const double want = std::pow(a, i) * std::pow(b, j) *
                                std::sin(phase + (i + j) * M_PI / 2.0) /
                                (factorial(i) * factorial(j));
            CHECK(f.coefficient({i, j}) == doctest::Approx(want).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("division and sqrt invert cleanly") {
    Jet u = Jet::variable(3, 0, 0.8);
    Jet v = Jet::variable(3, 1, -0.3);
    Jet w = Jet::variable(3, 2, 1.7);
    Jet g = 1.5 + u * u + sin(v) * w + cosh(v * w);
    Jet one = g * recip(g);
    CHECK(one.value() == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k < 3; ++k) CHECK(one.partial(k) == doctest::Approx(0.0).epsilon(1e-13));

    Jet s = sqrt(g);
    Jet back = s * s - g;
    for (double cfc : back.coefficients()) CHECK(std::abs(cfc) < 1e-12);
}

TEST_CASE("elementary functions match finite differences to high order") {
    auto scalar = [](double x, double y) {
        return std::exp(0.3 * x) * std::sin(x + 2.0 * y) + std::sqrt(2.0 + x * y) -
               std::cos(y) / (2.0 + std::sinh(x));
    };
    const double x0 = 0.37, y0 = -0.51;
    Jet x = Jet::variable(2, 0, x0);
    Jet y = Jet::variable(2, 1, y0);
    Jet f = exp(0.3 * x) * sin(x + 2.0 * y) + sqrt(2.0 + x * y) -
            cos(y) / (2.0 + sinh(x));

    CHECK(f.value() == doctest::Approx(scalar(x0, y0)).epsilon(1e-14));

    const double h = 1e-5;
    const double fx = (scalar(x0 + h, y0) - scalar(x0 - h, y0)) / (2 * h);
    const double fy = (scalar(x0, y0 + h) - scalar(x0, y0 - h)) / (2 * h);
    CHECK(f.partial(0) == doctest::Approx(fx).epsilon(1e-8));
    CHECK(f.partial(1) == doctest::Approx(fy).epsilon(1e-8));

    const double h2 = 1e-4;
    const double fxx = (scalar(x0 + h2, y0) - 2 * scalar(x0, y0) + scalar(x0 - h2, y0)) / (h2 * h2);
    const double fxy = (scalar(x0 + h2, y0 + h2) - scalar(x0 + h2, y0 - h2) -
                        scalar(x0 - h2, y0 + h2) + scalar(x0 - h2, y0 - h2)) /
                       (4 * h2 * h2);
    CHECK(2.0 * f.coefficient({2, 0}) == doctest::Approx(fxx).epsilon(1e-6));
    CHECK(f.coefficient({1, 1}) == doctest::Approx(fxy).epsilon(1e-6));

    // third order via Richardson-free wide stencil, loose tolerance
    const double h3 = 5e-3;
    auto fxdd = [&](double y) {
        return (scalar(x0 + 2 * h3, y) - 2 * scalar(x0 + h3, y) + 2 * scalar(x0 - h3, y) -
                scalar(x0 - 2 * h3, y)) /
               (2 * h3 * h3 * h3);
    };
    CHECK(6.0 * f.coefficient({3, 0}) == doctest::Approx(fxdd(y0)).epsilon(1e-4));

    // fourth order: d4/dx4 via second difference of the second difference
    const double h4 = 2e-2;
    auto d2x = [&](double xx) {
        return (scalar(xx + h4, y0) - 2 * scalar(xx, y0) + scalar(xx - h4, y0)) / (h4 * h4);
    };
    const double fxxxx = (d2x(x0 + h4) - 2 * d2x(x0) + d2x(x0 - h4)) / (h4 * h4);
    CHECK(24.0 * f.coefficient({4, 0}) == doctest::Approx(fxxxx).epsilon(2e-3));
}

TEST_CASE("derivative jets shift coefficients") {
    Jet x = Jet::variable(2, 0, 0.6);
    Jet y = Jet::variable(2, 1, 1.1);
    Jet f = sin(x * y) + x * x * y;
    Jet fx = f.derivative(0);

    // d/dx (sin(xy) + x^2 y) = y cos(xy) + 2xy
    const double want = 1.1 * std::cos(0.6 * 1.1) + 2.0 * 0.6 * 1.1;
    CHECK(fx.value() == doctest::Approx(want).epsilon(1e-14));

    // mixed second partial read from the derivative jet's first-order part
    Jet fxy = fx.derivative(1);
    const double fd = std::cos(0.66) - 0.66 * std::sin(0.66) + 1.2;
    CHECK(fxy.value() == doctest::Approx(fd).epsilon(1e-13));
}

TEST_CASE("constants broadcast across variable counts") {
    Jet c = 3.0;
    Jet x = Jet::variable(3, 1, 2.0);
    Jet s = c + x;
    CHECK(s.nvars() == 3);
    CHECK(s.value() == 5.0);
    CHECK(s.partial(1) == 1.0);

    Jet y = Jet::variable(2, 0, 1.0);
    CHECK_THROWS_AS((void)(x + y), std::invalid_argument);
}

TEST_SUITE_END();
