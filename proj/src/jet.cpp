#include "curvlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

namespace curvlab {

namespace {

constexpr int kOrd = Jet::kOrder;

struct IndexTable {
    int nvars = 0;
    std::vector<std::array<uint8_t, 8>> exponents; // graded-lex ordering
    std::vector<int> degree;
    std::vector<int> packed_to_pos;                      // base-(kOrd+1) packed lookup
    std::vector<std::array<int, 3>> product_triples;     // (a, b, target)
    std::vector<std::vector<int>> shift_up;              // [k][pos] -> pos of alpha+e_k or -1

    explicit IndexTable(int d) : nvars(d) {
        std::array<uint8_t, 8> cur{};
        enumerate(cur, 0, 0);
        sort_and_index();
    }

    void enumerate(std::array<uint8_t, 8>& cur, int var, int used) {
        if (var == nvars) {
            exponents.push_back(cur);
            degree.push_back(used);
            return;
        }
        for (int e = 0; e + used <= kOrd; ++e) {
            cur[static_cast<size_t>(var)] = static_cast<uint8_t>(e);
            enumerate(cur, var + 1, used + e);
        }
        cur[static_cast<size_t>(var)] = 0;
    }

    // Order by (degree, lexicographic) so position 0 is the constant term
    // and positions 1..d are the first-order coefficients.
    void sort_and_index() {
        std::vector<int> order(exponents.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (degree[static_cast<size_t>(a)] != degree[static_cast<size_t>(b)])
                return degree[static_cast<size_t>(a)] < degree[static_cast<size_t>(b)];
            return exponents[static_cast<size_t>(a)] > exponents[static_cast<size_t>(b)];
        });
        std::vector<std::array<uint8_t, 8>> exp2(exponents.size());
        std::vector<int> deg2(exponents.size());
        for (size_t i = 0; i < order.size(); ++i) {
            exp2[i] = exponents[static_cast<size_t>(order[i])];
            deg2[i] = degree[static_cast<size_t>(order[i])];
        }
        exponents = std::move(exp2);
        degree = std::move(deg2);

        int packs = 1;
        for (int i = 0; i < nvars; ++i) packs *= (kOrd + 1);
        packed_to_pos.assign(static_cast<size_t>(std::max(1, packs)), -1);
        for (size_t i = 0; i < exponents.size(); ++i)
            packed_to_pos[static_cast<size_t>(pack(exponents[i]))] = static_cast<int>(i);

        for (size_t a = 0; a < exponents.size(); ++a) {
            for (size_t b = 0; b < exponents.size(); ++b) {
                if (degree[a] + degree[b] > kOrd) continue;
                std::array<uint8_t, 8> sum{};
                for (int v = 0; v < nvars; ++v)
                    sum[static_cast<size_t>(v)] = static_cast<uint8_t>(
                        exponents[a][static_cast<size_t>(v)] + exponents[b][static_cast<size_t>(v)]);
                product_triples.push_back({static_cast<int>(a), static_cast<int>(b),
                                           packed_to_pos[static_cast<size_t>(pack(sum))]});
            }
        }

        shift_up.assign(static_cast<size_t>(nvars), std::vector<int>(exponents.size(), -1));
        for (int k = 0; k < nvars; ++k) {
            for (size_t i = 0; i < exponents.size(); ++i) {
                if (degree[i] + 1 > kOrd) continue;
                std::array<uint8_t, 8> up = exponents[i];
                up[static_cast<size_t>(k)] = static_cast<uint8_t>(up[static_cast<size_t>(k)] + 1);
                shift_up[static_cast<size_t>(k)][i] = packed_to_pos[static_cast<size_t>(pack(up))];
            }
        }
    }

    int pack(const std::array<uint8_t, 8>& e) const {
        int p = 0;
        for (int v = nvars - 1; v >= 0; --v) p = p * (kOrd + 1) + e[static_cast<size_t>(v)];
        return p;
    }

    int position(const std::array<uint8_t, 8>& e) const {
        const int p = pack(e);
        if (p < 0 || p >= static_cast<int>(packed_to_pos.size())) return -1;
        return packed_to_pos[static_cast<size_t>(p)];
    }
};

const IndexTable& table_for(int nvars) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<IndexTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    if (nvars >= static_cast<int>(tables.size())) tables.resize(static_cast<size_t>(nvars) + 1);
    auto& slot = tables[static_cast<size_t>(nvars)];
    if (!slot) slot = std::make_unique<IndexTable>(nvars);
    return *slot;
}

} // namespace

Jet Jet::constant(int nvars, double value) {
    Jet j;
    j.nvars_ = nvars;
    j.coef_.assign(table_for(nvars).exponents.size(), 0.0);
    j.coef_[0] = value;
    return j;
}

Jet Jet::variable(int nvars, int k, double value) {
    if (k < 0 || k >= nvars) throw std::invalid_argument("Jet::variable: index out of range");
    Jet j = constant(nvars, value);
    std::array<uint8_t, 8> e{};
    e[static_cast<size_t>(k)] = 1;
    j.coef_[static_cast<size_t>(table_for(nvars).position(e))] = 1.0;
    return j;
}

void Jet::promote_to(int nvars) {
    if (nvars_ == nvars) return;
    if (nvars_ != 0) throw std::invalid_argument("Jet: mixing jets of different variable counts");
    const double v = coef_[0];
    *this = constant(nvars, v);
}

double Jet::partial(int k) const {
    if (k < 0 || k >= nvars_) throw std::invalid_argument("Jet::partial: index out of range");
    std::array<uint8_t, 8> e{};
    e[static_cast<size_t>(k)] = 1;
    return coef_[static_cast<size_t>(table_for(nvars_).position(e))];
}

double Jet::coefficient(const std::vector<int>& alpha) const {
    if (static_cast<int>(alpha.size()) != nvars_)
        throw std::invalid_argument("Jet::coefficient: exponent tuple has wrong length");
    std::array<uint8_t, 8> e{};
    int total = 0;
    for (size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] < 0) throw std::invalid_argument("Jet::coefficient: negative exponent");
        total += alpha[i];
        e[i] = static_cast<uint8_t>(alpha[i]);
    }
    if (total > kOrder) throw std::invalid_argument("Jet::coefficient: order exceeds truncation");
    return coef_[static_cast<size_t>(table_for(nvars_).position(e))];
}

Jet Jet::derivative(int k) const {
    if (k < 0 || k >= nvars_) throw std::invalid_argument("Jet::derivative: index out of range");
    const IndexTable& t = table_for(nvars_);
    Jet out = constant(nvars_, 0.0);
    for (size_t i = 0; i < coef_.size(); ++i) {
        const int up = t.shift_up[static_cast<size_t>(k)][i];
        if (up < 0) continue;
        const double mult = static_cast<double>(t.exponents[static_cast<size_t>(up)][static_cast<size_t>(k)]);
        out.coef_[i] = mult * coef_[static_cast<size_t>(up)];
    }
    return out;
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (double& c : out.coef_) c = -c;
    return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
    if (nvars_ == rhs.nvars_) {
        for (size_t i = 0; i < coef_.size(); ++i) coef_[i] += rhs.coef_[i];
        return *this;
    }
    if (rhs.nvars_ == 0) {
        coef_[0] += rhs.coef_[0];
        return *this;
    }
    promote_to(rhs.nvars_);
    return *this += rhs;
}

Jet& Jet::operator-=(const Jet& rhs) {
    return *this += -rhs;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    const IndexTable& t = table_for(a.nvars_);
    Jet out = Jet::constant(a.nvars_, 0.0);
    for (const auto& [ia, ib, target] : t.product_triples)
        out.coef_[static_cast<size_t>(target)] +=
            a.coef_[static_cast<size_t>(ia)] * b.coef_[static_cast<size_t>(ib)];
    return out;
}

Jet& Jet::operator*=(const Jet& rhs) {
    if (nvars_ == rhs.nvars_) {
        if (nvars_ == 0) {
            coef_[0] *= rhs.coef_[0];
            return *this;
        }
        *this = jet_mul(*this, rhs);
        return *this;
    }
    if (rhs.nvars_ == 0) {
        for (double& c : coef_) c *= rhs.coef_[0];
        return *this;
    }
    promote_to(rhs.nvars_);
    return *this *= rhs;
}

Jet& Jet::operator/=(const Jet& rhs) {
    return *this *= recip(rhs);
}

Jet Jet::compose(const std::array<double, kOrder + 1>& fk) const {
    // Horner in delta = (*this - value()); delta has zero constant term so
    // the truncation is exact.
    Jet delta = *this;
    delta.coef_[0] = 0.0;
    Jet result = Jet::constant(nvars_, fk[kOrder]);
    for (int k = kOrder - 1; k >= 0; --k) {
        result = result * delta;
        result.coef_[0] += fk[static_cast<size_t>(k)];
    }
    return result;
}

namespace {

using Coeffs = std::array<double, kOrd + 1>;

} // namespace

Jet sqrt(const Jet& x) {
    const double v = x.value();
    if (v <= 0.0) throw std::domain_error("Jet sqrt: nonpositive value");
    const double s = std::sqrt(v);
    Coeffs fk{s, 0.5 / s, -1.0 / (8.0 * v * s), 1.0 / (16.0 * v * v * s),
              -5.0 / (128.0 * v * v * v * s)};
    return x.compose(fk);
}

Jet recip(const Jet& x) {
    const double v = x.value();
    if (v == 0.0) throw std::domain_error("Jet recip: division by zero value");
    const double iv = 1.0 / v;
    Coeffs fk{iv, -iv * iv, iv * iv * iv, -iv * iv * iv * iv, iv * iv * iv * iv * iv};
    return x.compose(fk);
}

Jet exp(const Jet& x) {
    const double e = std::exp(x.value());
    Coeffs fk{e, e, e / 2.0, e / 6.0, e / 24.0};
    return x.compose(fk);
}

Jet log(const Jet& x) {
    const double v = x.value();
    if (v <= 0.0) throw std::domain_error("Jet log: nonpositive value");
    Coeffs fk{std::log(v), 1.0 / v, -1.0 / (2.0 * v * v), 1.0 / (3.0 * v * v * v),
              -1.0 / (4.0 * v * v * v * v)};
    return x.compose(fk);
}

Jet sin(const Jet& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    Coeffs fk{s, c, -s / 2.0, -c / 6.0, s / 24.0};
    return x.compose(fk);
}

Jet cos(const Jet& x) {
    const double s = std::sin(x.value()), c = std::cos(x.value());
    Coeffs fk{c, -s, -c / 2.0, s / 6.0, c / 24.0};
    return x.compose(fk);
}

Jet sinh(const Jet& x) {
    const double s = std::sinh(x.value()), c = std::cosh(x.value());
    Coeffs fk{s, c, s / 2.0, c / 6.0, s / 24.0};
    return x.compose(fk);
}

Jet cosh(const Jet& x) {
    const double s = std::sinh(x.value()), c = std::cosh(x.value());
    Coeffs fk{c, s, c / 2.0, s / 6.0, c / 24.0};
    return x.compose(fk);
}

Jet pow(const Jet& x, double a) {
    const double v = x.value();
    if (v <= 0.0) throw std::domain_error("Jet pow: nonpositive base");
    Coeffs fk{};
    double coeff = std::pow(v, a);
    fk[0] = coeff;
    double falling = 1.0;
    for (int k = 1; k <= kOrd; ++k) {
        falling *= (a - static_cast<double>(k - 1)) / static_cast<double>(k);
        fk[static_cast<size_t>(k)] = falling * std::pow(v, a - static_cast<double>(k));
    }
    return x.compose(fk);
}

} // namespace curvlab
