#pragma once

// Construction of class members and of the transforms relating f and F.
//
// The canonical member factory is the coefficient recurrence obtained from
// z F'(z) = p(z) G_k(z):
//
//     n a_n [1 + (n - 1)(lambda - mu + n lambda mu)] = sum_{j=0}^{n-1} p_j B_{n-j},
//
// with p_0 = 1 and B_1 = 1. Any p subordinate to the target then yields a
// member by construction.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctcx/classes.hpp"
#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"

namespace ctcx {

/// The unique normalized f with z F' = p G_k through order N.
[[nodiscard]] inline Series solve_coefficients(const Series& p, const Series& g, const ClassParams& params,
                                               std::size_t order) {
    params.validate();
    detail::require_p_candidate(p, "solve_coefficients: p");
    if (order < 2) {
        throw InvariantViolation("solve_coefficients: order must be at least 2");
    }
    const Series big_g = to_Gk(build_gk(g, params.k), params.k);
    if (big_g.order() < order || p.order() + 1 < order) {
        throw InvariantViolation("solve_coefficients: p and g are truncated below the requested order");
    }
    std::vector<Complex> a(order + 1);
    a[1] = 1.0;
    for (std::size_t n = 2; n <= order; ++n) {
        Complex rhs{};
        for (std::size_t j = 0; j < n; ++j) {
            rhs += detail::cmul(p[j], big_g[n - j]);
        }
        a[n] = rhs / (static_cast<double>(n) * lambda_mu_multiplier(n, params));
    }
    return Series(std::move(a), "f");
}

/// Coefficientwise inverse of lambda_mu_transform.
[[nodiscard]] inline Series invert_lambda_mu(const Series& big_f, const ClassParams& params) {
    params.validate();
    detail::require_normalized(big_f, "invert_lambda_mu: F");
    std::vector<Complex> a(big_f.size());
    for (std::size_t n = 1; n < big_f.size(); ++n) {
        a[n] = big_f[n] / lambda_mu_multiplier(n, params);
    }
    return Series(std::move(a), "f");
}

/// F(z) = (1 + gamma) z^{-gamma} int_0^z t^{gamma - 1} f(t) dt, i.e.
/// a_n -> a_n (1 + gamma) / (n + gamma).
[[nodiscard]] inline Series bernardi_transform(const Series& f, double gamma) {
    if (!(gamma >= 0.0)) {
        throw InvalidGamma("bernardi_transform: gamma must be nonnegative");
    }
    detail::require_normalized(f, "bernardi_transform: f");
    std::vector<Complex> v(f.size());
    for (std::size_t n = 1; n < f.size(); ++n) {
        v[n] = f[n] * ((1.0 + gamma) / (static_cast<double>(n) + gamma));
    }
    return Series(std::move(v), f.tag());
}

// ---------------------------------------------------------------------------
// delta/nu factorization of the (lambda, mu) operator

/// With alpha = (lambda - mu)/(1 - lambda + mu) and
/// beta = lambda mu/(1 - lambda + mu), the operator
/// f + alpha z f' + beta z^2 f'' factors through delta and nu, the roots of
/// t^2 - (alpha - beta) t + beta = 0.
struct OperatorDecomposition {
    double alpha = 0.0;
    double beta = 0.0;
    Complex delta{};
    Complex nu{};
    bool real_nonneg = false;
};

[[nodiscard]] inline OperatorDecomposition decompose_delta_nu(const ClassParams& params) {
    params.validate();
    const double lead = 1.0 - params.lambda + params.mu;
    if (!(lead > 1e-12)) {
        throw DegenerateParams("decompose_delta_nu: 1 - lambda + mu vanishes");
    }
    OperatorDecomposition d;
    d.alpha = (params.lambda - params.mu) / lead;
    d.beta = params.lambda * params.mu / lead;
    const double s = d.alpha - d.beta;
    const double disc = s * s - 4.0 * d.beta;
    if (disc >= 0.0) {
        // Larger-magnitude root first, the other from the product, to avoid
        // cancellation.
        const double big = 0.5 * (s + std::copysign(std::sqrt(disc), s));
        const double small = big != 0.0 ? d.beta / big : 0.0;
        d.delta = big;
        d.nu = small;
        d.real_nonneg = big >= -1e-12 && small >= -1e-12;
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        d.delta = {0.5 * s, im};
        d.nu = {0.5 * s, -im};
        d.real_nonneg = false;
    }
    return d;
}

/// (1 + delta)(1 + nu)(1 - lambda + mu); identically 1 since
/// (1 + delta)(1 + nu) = 1 + alpha.
[[nodiscard]] inline Complex delta_nu_scalar(const OperatorDecomposition& d, const ClassParams& params) {
    return (1.0 + d.delta) * (1.0 + d.nu) * (1.0 - params.lambda + params.mu);
}

/// Two-stage Bernardi chain with gamma = 1/nu, then gamma = 1/delta. A zero
/// root is the gamma -> infinity limit, i.e. the identity stage. Applied to
/// F = lambda_mu_transform(f) it returns f divided by delta_nu_scalar.
[[nodiscard]] inline Series apply_delta_nu_chain(const Series& big_f, const OperatorDecomposition& d) {
    if (!d.real_nonneg) {
        throw InvariantViolation("apply_delta_nu_chain: roots are not real and nonnegative");
    }
    Series out = big_f;
    for (const double root : {d.nu.real(), d.delta.real()}) {
        if (root > 1e-12) {
            out = bernardi_transform(out, 1.0 / root);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Catalog of closed-form functions

/// z (1 - z)^{-2(1 - alpha)}, extremal in S*(alpha).
[[nodiscard]] inline Series generalized_koebe(double alpha, std::size_t order) {
    if (order < 1) {
        throw InvariantViolation("catalog: order must be at least 1");
    }
    return shift(binomial_series(2.0 * (1.0 - alpha), order - 1), 1);
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"koebe",       "koebe_sqrt2", "halfplane",
                                                "lemma21_even", "s_star_half_example", "gen_koebe",
                                                "moebius",      "identity"};
    return names;
}

[[nodiscard]] inline Series catalog(std::string_view name, std::size_t order, std::span<const double> aux = {}) {
    if (order < 1) {
        throw InvariantViolation("catalog: order must be at least 1");
    }
    auto want_aux = [&](std::size_t n) {
        if (aux.size() != n) {
            throw InvariantViolation("catalog: " + std::string(name) + " takes " + std::to_string(n) +
                                     " parameter(s)");
        }
    };
    const std::string tag(name);
    if (name == "koebe") {
        want_aux(0);
        return generalized_koebe(0.0, order).retagged(tag);
    }
    if (name == "koebe_sqrt2") {
        want_aux(0);
        return shift(dilate_power(binomial_series(1.0, order - 1), 2), 1).retagged(tag);
    }
    if (name == "halfplane" || name == "lemma21_even") {
        want_aux(0);
        const std::size_t step = name == "halfplane" ? 1 : 2;
        std::vector<Complex> v(order + 1);
        v[0] = 1.0;
        for (std::size_t n = step; n <= order; n += step) {
            v[n] = 2.0;
        }
        return Series(std::move(v), tag);
    }
    if (name == "s_star_half_example") {
        want_aux(0);
        std::vector<Complex> v(order + 1);
        v[1] = 1.0;
        if (order >= 2) {
            v[2] = -1.0 / 3.0;
        }
        return Series(std::move(v), tag);
    }
    if (name == "gen_koebe") {
        want_aux(1);
        if (!(aux[0] >= 0.0 && aux[0] <= 1.0)) {
            throw InvariantViolation("catalog: gen_koebe needs 0 <= alpha <= 1");
        }
        return generalized_koebe(aux[0], order).retagged(tag);
    }
    if (name == "moebius") {
        want_aux(2);
        const MoebiusTarget t{aux[0], aux[1]};
        t.validate();
        return t.series(order).retagged(tag);
    }
    if (name == "identity") {
        want_aux(0);
        return Series::monomial(1, order).retagged(tag);
    }
    throw UnknownCatalogName("unknown catalog name: " + tag);
}

/// Parses "name" or "name(x, y, ...)" and builds the catalog entry.
[[nodiscard]] inline Series catalog_from_spec(std::string_view spec, std::size_t order) {
    const auto open = spec.find('(');
    std::string_view name = spec.substr(0, open);
    std::vector<double> aux;
    if (open != std::string_view::npos) {
        if (spec.back() != ')') {
            throw ParseError("catalog spec: missing ')' in " + std::string(spec));
        }
        std::string_view args = spec.substr(open + 1, spec.size() - open - 2);
        while (!args.empty()) {
            const auto comma = args.find(',');
            std::string item(args.substr(0, comma));
            item.erase(0, item.find_first_not_of(' '));
            item.erase(item.find_last_not_of(' ') + 1);
            try {
                std::size_t used = 0;
                aux.push_back(std::stod(item, &used));
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
            } catch (const std::exception&) {
                throw ParseError("catalog spec: bad number '" + item + "'");
            }
            args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
        }
    }
    return catalog(name, order, aux);
}

// ---------------------------------------------------------------------------
// Subordination witnesses and random members

/// w(z) = z (c + zeta z) / (1 + conj(c) zeta z) with |c| < 1, |zeta| = 1:
/// w(0) = 0 and |w| < 1 on U by construction.
struct BlaschkeWitness {
    Complex c{};
    Complex zeta{1.0, 0.0};

    [[nodiscard]] Series series(std::size_t order) const {
        std::vector<Complex> num(order + 1);
        std::vector<Complex> den(order + 1);
        if (order >= 1) {
            num[1] = c;
            den[1] = std::conj(c) * zeta;
        }
        if (order >= 2) {
            num[2] = zeta;
        }
        den[0] = 1.0;
        return divide(Series(std::move(num)), Series(std::move(den))).retagged("w");
    }

    /// First two coefficients of h = (1 + w)/(1 - w).
    [[nodiscard]] Complex d1() const { return 2.0 * c; }
    [[nodiscard]] Complex d2() const { return 2.0 * (zeta * (1.0 - std::norm(c)) + c * c); }
};

/// p = phi(w) = (1 + A w)/(1 + B w) for a witness series with w(0) = 0.
[[nodiscard]] inline Series subordinate_p(const MoebiusTarget& target, const Series& w) {
    const Series one = Series::constant(1.0, w.order());
    return divide(add(one, scale(w, Complex{target.A})), add(one, scale(w, Complex{target.B}))).retagged("p");
}

/// h = (1 + w)/(1 - w), a member of P.
[[nodiscard]] inline Series herglotz(const Series& w) {
    const Series one = Series::constant(1.0, w.order());
    return divide(add(one, w), subtract(one, w)).retagged("p");
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Uniform point in the disk |z| <= r_max.
inline Complex random_disk_point(Rng& rng, double r_max) {
    const double r = r_max * std::sqrt(uniform(rng, 0.0, 1.0));
    return std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

inline BlaschkeWitness random_witness(Rng& rng, double c_max = 0.95) {
    return {random_disk_point(rng, c_max), std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi))};
}

/// A rotated generalized Koebe function of order beta in [(k-1)/k, 1], hence
/// a member of S*((k-1)/k).
inline Series random_starlike_g(Rng& rng, int k, std::size_t order) {
    const double lo = static_cast<double>(k - 1) / static_cast<double>(k);
    const double beta = uniform(rng, lo, 1.0);
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return rotate(generalized_koebe(beta, order), theta).retagged("g");
}

/// -1 <= B < A <= 1 with A - B >= min_gap.
inline MoebiusTarget random_target(Rng& rng, double min_gap = 0.1) {
    const double b = uniform(rng, -1.0, 1.0 - min_gap);
    const double a = uniform(rng, b + min_gap, 1.0);
    return {a, b};
}

struct MemberSample {
    Series f;
    Series g;
    Series p;
    BlaschkeWitness witness;
    ClassParams params;
    MoebiusTarget target;
};

/// f solving z F' = phi(w) G_k through `order`.
[[nodiscard]] inline MemberSample synthesize_member(const BlaschkeWitness& w, const Series& g,
                                                    const ClassParams& params, const MoebiusTarget& target,
                                                    std::size_t order) {
    target.validate();
    Series p = subordinate_p(target, w.series(order));
    Series f = solve_coefficients(p, g, params, order);
    return {std::move(f), g, std::move(p), w, params, target};
}

}  // namespace ctcx
