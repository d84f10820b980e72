#pragma once

// Truncated complex power series f(z) = c_0 + c_1 z + ... + c_N z^N.
//
// A series of order N carries exactly N + 1 coefficients. Values are
// immutable once built; every operation below returns a new series.
// Binary operations never invent coefficients: a product or quotient is
// only known up to the smaller of the two operand orders.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctcx/errors.hpp"

namespace ctcx {

/// Default truncation order for constructed series.
inline constexpr std::size_t kDefaultOrder = 64;

/// Constant terms at or below this modulus are not invertible.
inline constexpr double kUnitTolerance = 1e-12;

template <std::floating_point Real>
class BasicSeries {
public:
    using real_type = Real;
    using value_type = std::complex<Real>;

    /// The zero series of order 0.
    BasicSeries() : coeffs_(1) {}

    /// Takes c_0 first. An empty vector yields the zero series of order 0.
    explicit BasicSeries(std::vector<value_type> coeffs, std::string tag = {})
        : coeffs_(std::move(coeffs)), tag_(std::move(tag)) {
        if (coeffs_.empty()) {
            coeffs_.resize(1);
        }
    }

    static BasicSeries zero(std::size_t order, std::string tag = {}) {
        return BasicSeries(std::vector<value_type>(order + 1), std::move(tag));
    }

    static BasicSeries constant(value_type c, std::size_t order) {
        std::vector<value_type> v(order + 1);
        v[0] = c;
        return BasicSeries(std::move(v));
    }

    /// c * z^power truncated to `order` (zero when power > order).
    static BasicSeries monomial(std::size_t power, std::size_t order, value_type c = value_type{1}) {
        std::vector<value_type> v(order + 1);
        if (power <= order) {
            v[power] = c;
        }
        return BasicSeries(std::move(v));
    }

    [[nodiscard]] std::size_t order() const noexcept { return coeffs_.size() - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    [[nodiscard]] const value_type& operator[](std::size_t n) const { return coeffs_[n]; }

    /// c_n, or zero beyond the truncation order.
    [[nodiscard]] value_type coeff(std::size_t n) const noexcept {
        return n < coeffs_.size() ? coeffs_[n] : value_type{};
    }

    [[nodiscard]] std::span<const value_type> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const std::string& tag() const noexcept { return tag_; }

    [[nodiscard]] BasicSeries retagged(std::string tag) const { return BasicSeries(coeffs_, std::move(tag)); }

    /// Cuts or zero-pads to the requested order.
    [[nodiscard]] BasicSeries truncated(std::size_t order) const {
        std::vector<value_type> v(order + 1);
        std::copy_n(coeffs_.begin(), std::min(v.size(), coeffs_.size()), v.begin());
        return BasicSeries(std::move(v), tag_);
    }

    /// c_0 = 0 and c_1 = 1 (class A normalization).
    [[nodiscard]] bool is_normalized(Real tol = Real(1e-10)) const noexcept {
        return std::abs(coeff(0)) <= tol && std::abs(coeff(1) - value_type{1}) <= tol && order() >= 1;
    }

    /// c_0 = 1 (class P normalization).
    [[nodiscard]] bool is_p_candidate(Real tol = Real(1e-10)) const noexcept {
        return std::abs(coeff(0) - value_type{1}) <= tol;
    }

    [[nodiscard]] Real max_abs_coeff() const noexcept {
        Real m = 0;
        for (const auto& c : coeffs_) {
            m = std::max(m, std::abs(c));
        }
        return m;
    }

private:
    std::vector<value_type> coeffs_;
    std::string tag_;
};

using Series = BasicSeries<double>;
using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Arithmetic

namespace detail {

// Plain complex product; skips the inf/NaN recovery of operator*, which is
// the bottleneck in the quadratic loops below.
template <std::floating_point Real>
inline std::complex<Real> cmul(std::complex<Real> x, std::complex<Real> y) noexcept {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

}  // namespace detail

/// Coefficientwise sum; the shorter operand is zero-padded.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> add(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    const std::size_t order = std::max(a.order(), b.order());
    std::vector<std::complex<Real>> v(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
        v[n] = a.coeff(n) + b.coeff(n);
    }
    return BasicSeries<Real>(std::move(v));
}

template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> scale(const BasicSeries<Real>& a, std::complex<Real> s) {
    std::vector<std::complex<Real>> v(a.coeffs().begin(), a.coeffs().end());
    for (auto& c : v) {
        c *= s;
    }
    return BasicSeries<Real>(std::move(v), a.tag());
}

template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> subtract(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    return add(a, scale(b, std::complex<Real>{-1}));
}

/// Cauchy product truncated to min(order(a), order(b)).
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> mul(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    const std::size_t order = std::min(a.order(), b.order());
    std::vector<std::complex<Real>> v(order + 1);
    for (std::size_t i = 0; i <= order; ++i) {
        const auto ai = a[i];
        if (ai == std::complex<Real>{}) {
            continue;
        }
        for (std::size_t j = 0; i + j <= order; ++j) {
            v[i + j] += detail::cmul(ai, b[j]);
        }
    }
    return BasicSeries<Real>(std::move(v));
}

/// Quotient q with q * b = a to truncation order min(order(a), order(b)).
/// Throws DivisionByNonUnit when |b_0| <= kUnitTolerance; strip common
/// powers of z with shift() first.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> divide(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    const auto b0 = b[0];
    if (!(std::abs(b0) > Real(kUnitTolerance))) {
        throw DivisionByNonUnit("divide: constant term of the divisor is not a unit");
    }
    const std::size_t order = std::min(a.order(), b.order());
    std::vector<std::complex<Real>> q(order + 1);
    const auto inv_b0 = std::complex<Real>{1} / b0;
    std::vector<std::size_t> support;
    for (std::size_t j = 1; j <= order; ++j) {
        if (b[j] != std::complex<Real>{}) {
            support.push_back(j);
        }
    }
    for (std::size_t n = 0; n <= order; ++n) {
        auto acc = a[n];
        for (const std::size_t j : support) {
            if (j > n) {
                break;
            }
            acc -= detail::cmul(b[j], q[n - j]);
        }
        q[n] = acc * inv_b0;
    }
    return BasicSeries<Real>(std::move(q));
}

/// Termwise derivative; order drops by one. The derivative of an order-0
/// series is the zero series of order 0.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> differentiate(const BasicSeries<Real>& a) {
    if (a.order() == 0) {
        return BasicSeries<Real>::zero(0);
    }
    std::vector<std::complex<Real>> v(a.order());
    for (std::size_t n = 1; n <= a.order(); ++n) {
        v[n - 1] = static_cast<Real>(n) * a[n];
    }
    return BasicSeries<Real>(std::move(v));
}

/// Multiplies by z^m. A negative m divides by z^|m| and requires the
/// dropped coefficients to have modulus <= tol.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> shift(const BasicSeries<Real>& a, long m, Real tol = Real(kUnitTolerance)) {
    if (m >= 0) {
        const auto up = static_cast<std::size_t>(m);
        std::vector<std::complex<Real>> v(a.size() + up);
        std::copy(a.coeffs().begin(), a.coeffs().end(), v.begin() + static_cast<std::ptrdiff_t>(up));
        return BasicSeries<Real>(std::move(v), a.tag());
    }
    const auto down = static_cast<std::size_t>(-m);
    if (down > a.order()) {
        throw NonDivisibleByZPower("shift: z-power exceeds the truncation order");
    }
    for (std::size_t n = 0; n < down; ++n) {
        if (std::abs(a[n]) > tol) {
            throw NonDivisibleByZPower("shift: coefficient " + std::to_string(n) + " does not vanish");
        }
    }
    return BasicSeries<Real>(std::vector<std::complex<Real>>(a.coeffs().begin() + static_cast<std::ptrdiff_t>(down),
                                                             a.coeffs().end()),
                             a.tag());
}

/// e^{-i theta} a(e^{i theta} z): c_n -> e^{i (n - 1) theta} c_n.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> rotate(const BasicSeries<Real>& a, Real theta) {
    std::vector<std::complex<Real>> v(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        v[n] = std::polar(Real(1), (static_cast<Real>(n) - Real(1)) * theta) * a[n];
    }
    return BasicSeries<Real>(std::move(v), a.tag());
}

/// (1 - z)^{-c} to order N.
template <std::floating_point Real = double>
[[nodiscard]] BasicSeries<Real> binomial_series(Real c, std::size_t order) {
    std::vector<std::complex<Real>> v(order + 1);
    Real coef = 1;
    v[0] = coef;
    for (std::size_t n = 0; n < order; ++n) {
        coef = coef * (c + static_cast<Real>(n)) / static_cast<Real>(n + 1);
        v[n + 1] = coef;
    }
    return BasicSeries<Real>(std::move(v));
}

/// log a for a unit with a_0 = 1, from (log a)' = a'/a. Throws
/// InvariantViolation when |a_0 - 1| > tol.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> log_series(const BasicSeries<Real>& a, Real tol = Real(kUnitTolerance)) {
    if (std::abs(a[0] - std::complex<Real>{1}) > tol) {
        throw InvariantViolation("log_series: constant term must be 1");
    }
    if (a.order() == 0) {
        return BasicSeries<Real>::zero(0);
    }
    const BasicSeries<Real> d = divide(differentiate(a), a.truncated(a.order() - 1));
    std::vector<std::complex<Real>> v(a.size());
    for (std::size_t n = 1; n < v.size(); ++n) {
        v[n] = d[n - 1] / static_cast<Real>(n);
    }
    return BasicSeries<Real>(std::move(v));
}

/// exp a for a series with a_0 = 0, from n e_n = sum_{j=1}^{n} j a_j e_{n-j}.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> exp_series(const BasicSeries<Real>& a, Real tol = Real(kUnitTolerance)) {
    if (std::abs(a[0]) > tol) {
        throw InvariantViolation("exp_series: constant term must vanish");
    }
    std::vector<std::complex<Real>> ja(a.size());
    std::vector<std::size_t> support;
    for (std::size_t j = 1; j < a.size(); ++j) {
        ja[j] = static_cast<Real>(j) * a[j];
        if (ja[j] != std::complex<Real>{}) {
            support.push_back(j);
        }
    }
    std::vector<std::complex<Real>> e(a.size());
    e[0] = 1;
    for (std::size_t n = 1; n < e.size(); ++n) {
        std::complex<Real> acc{};
        for (const std::size_t j : support) {
            if (j > n) {
                break;
            }
            acc += detail::cmul(ja[j], e[n - j]);
        }
        e[n] = acc / static_cast<Real>(n);
    }
    return BasicSeries<Real>(std::move(e));
}

/// Substitutes z -> z^m (m >= 1), keeping the order.
template <std::floating_point Real>
[[nodiscard]] BasicSeries<Real> dilate_power(const BasicSeries<Real>& a, std::size_t m) {
    std::vector<std::complex<Real>> v(a.size());
    for (std::size_t n = 0; n * m < v.size(); ++n) {
        v[n * m] = a[n];
    }
    return BasicSeries<Real>(std::move(v), a.tag());
}

template <std::floating_point Real>
[[nodiscard]] Real max_abs_difference(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    Real m = 0;
    const std::size_t order = std::max(a.order(), b.order());
    for (std::size_t n = 0; n <= order; ++n) {
        m = std::max(m, std::abs(a.coeff(n) - b.coeff(n)));
    }
    return m;
}

template <std::floating_point Real>
BasicSeries<Real> operator+(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    return add(a, b);
}

template <std::floating_point Real>
BasicSeries<Real> operator-(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    return subtract(a, b);
}

template <std::floating_point Real>
BasicSeries<Real> operator-(const BasicSeries<Real>& a) {
    return scale(a, std::complex<Real>{-1});
}

template <std::floating_point Real>
BasicSeries<Real> operator*(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    return mul(a, b);
}

template <std::floating_point Real>
BasicSeries<Real> operator*(std::complex<Real> s, const BasicSeries<Real>& a) {
    return scale(a, s);
}

template <std::floating_point Real>
BasicSeries<Real> operator/(const BasicSeries<Real>& a, const BasicSeries<Real>& b) {
    return divide(a, b);
}

}  // namespace ctcx
