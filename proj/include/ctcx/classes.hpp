#pragma once

// The g_k product, the (lambda, mu) differential operator and the grid
// certifiers for P, S*(alpha), K and K_s^(k)(lambda, mu, A, B).
//
// Membership in K_s^(k)(lambda, mu, A, B) means
//
//     Phi(z) = z F'(z) / G_k(z)  is subordinate to  (1 + A z) / (1 + B z),
//
// where F = (1 - lambda + mu) f + (lambda - mu) z f' + lambda mu z^2 f'',
// g_k(z) = prod_{v<k} eps^{-v} g(eps^v z) with eps = e^{2 pi i / k}, and
// G_k = g_k / z^{k-1}. For the Moebius target the subordination is tested
// pointwise as |Phi - 1| < |A - B Phi|, which follows from
// w = (Phi - 1) / (A - B Phi) having |w| < 1.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctcx/disk.hpp"
#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"
#include "ctcx/series_json.hpp"

namespace ctcx {

/// Tolerance for normalization preconditions and z-power cancellation.
inline constexpr double kNormalizationTolerance = 1e-10;

struct ClassParams {
    int k = 1;
    double lambda = 0.0;
    double mu = 0.0;

    /// 1 <= k <= 16 and 0 <= mu <= lambda <= 1.
    void validate() const {
        if (k < 1 || k > 16) {
            throw InvariantViolation("k must satisfy 1 <= k <= 16");
        }
        if (!(mu >= 0.0 && mu <= lambda && lambda <= 1.0)) {
            throw InvariantViolation("parameters must satisfy 0 <= mu <= lambda <= 1");
        }
    }
};

/// phi(z) = (1 + A z) / (1 + B z), -1 <= B < A <= 1.
struct MoebiusTarget {
    double A = 1.0;
    double B = -1.0;

    void validate() const {
        if (!(B >= -1.0 && B < A && A <= 1.0)) {
            throw InvariantViolation("Moebius target must satisfy -1 <= B < A <= 1");
        }
    }

    [[nodiscard]] Complex operator()(Complex z) const { return (1.0 + A * z) / (1.0 + B * z); }

    [[nodiscard]] Series series(std::size_t order) const {
        std::vector<Complex> v(order + 1);
        v[0] = 1.0;
        // (1 + A z) sum (-B z)^n: coefficient n >= 1 is (A - B)(-B)^{n-1}.
        double pow_neg_b = 1.0;
        for (std::size_t n = 1; n <= order; ++n) {
            v[n] = (A - B) * pow_neg_b;
            pow_neg_b *= -B;
        }
        return Series(std::move(v), "phi");
    }
};

/// 1 + (n - 1)(lambda - mu + n lambda mu): the coefficient multiplier of
/// the (lambda, mu) operator, >= 1 for n >= 1 under the parameter invariant.
[[nodiscard]] inline double lambda_mu_multiplier(std::size_t n, const ClassParams& p) {
    const double nd = static_cast<double>(n);
    return 1.0 + (nd - 1.0) * (p.lambda - p.mu + nd * p.lambda * p.mu);
}

namespace detail {

inline void require_normalized(const Series& s, const char* what) {
    if (!s.is_normalized(kNormalizationTolerance)) {
        throw InvariantViolation(std::string(what) + " must be normalized (c_0 = 0, c_1 = 1)");
    }
}

inline void require_p_candidate(const Series& s, const char* what) {
    if (!s.is_p_candidate(kNormalizationTolerance)) {
        throw InvariantViolation(std::string(what) + " must satisfy c_0 = 1");
    }
}

}  // namespace detail

/// g_k(z) = prod_{v=0}^{k-1} eps^{-v} g(eps^v z). With g = z u, each
/// rotated copy is z u(eps^v z), and summing the logs of the k copies keeps
/// only the coefficients of L = log u at multiples of k, scaled by k:
///   g_k = z^k exp(k sum_m L_{mk} z^{mk}).
/// This avoids the cancellation of multiplying k rotated copies (whose
/// partial products can be far larger than g_k), is exactly symmetric in
/// the rotation index, and makes coefficients 0..k-1 exactly zero. An
/// input of order N gives a result of order N + k - 1.
[[nodiscard]] inline Series build_gk(const Series& g, int k) {
    detail::require_normalized(g, "build_gk: g");
    if (k < 1) {
        throw InvariantViolation("build_gk: k must be positive");
    }
    const Series unit = shift(g, -1, kNormalizationTolerance);
    if (k == 1) {
        return shift(unit, 1).retagged("g_k");
    }
    const Series log_unit = log_series(unit, kNormalizationTolerance);
    std::vector<Complex> folded(log_unit.size());
    const auto step = static_cast<std::size_t>(k);
    for (std::size_t n = step; n < folded.size(); n += step) {
        folded[n] = static_cast<double>(k) * log_unit[n];
    }
    return shift(exp_series(Series(std::move(folded))), k).retagged("g_k");
}

/// G_k = g_k / z^{k-1}; the result houses B_1 = 1, B_2, B_3, ...
[[nodiscard]] inline Series to_Gk(const Series& gk, int k) {
    if (k < 1) {
        throw InvariantViolation("to_Gk: k must be positive");
    }
    return shift(gk, -(k - 1), kNormalizationTolerance).retagged("G_k");
}

/// F = (1 - lambda + mu) f + (lambda - mu) z f' + lambda mu z^2 f'', i.e.
/// F_n = a_n [1 + (n - 1)(lambda - mu + n lambda mu)].
[[nodiscard]] inline Series lambda_mu_transform(const Series& f, const ClassParams& params) {
    detail::require_normalized(f, "lambda_mu_transform: f");
    std::vector<Complex> v(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) {
        v[n] = lambda_mu_multiplier(n, params) * f[n];
    }
    return Series(std::move(v), "F");
}

/// Phi = z F'(z) / G_k(z), formed as F' / (G_k / z) so that Phi(0) = 1.
[[nodiscard]] inline Series class_ratio(const Series& f, const Series& g, const ClassParams& params) {
    detail::require_normalized(g, "class_ratio: g");
    const Series big_f = lambda_mu_transform(f, params);
    const Series gk_unit = shift(to_Gk(build_gk(g, params.k), params.k), -1, kNormalizationTolerance);
    return divide(differentiate(big_f), gk_unit).retagged("Phi");
}

// ---------------------------------------------------------------------------
// Certificates

inline constexpr const char* kCertificateSemantics = "sampled sub-disk certificate";

struct CheckResult {
    std::string name;
    bool passed = false;
    double margin = 0.0;  ///< positive when the inequality holds with room
    Complex witness{};    ///< grid point where the margin is attained
    double tail = 0.0;    ///< tail estimate absorbed into the margin
};

struct CertificateReport {
    bool pass = false;
    double margin = 0.0;
    Complex witness{};
    std::vector<CheckResult> checks;
    std::string grid_label;
    std::size_t truncation_order = 0;
};

[[nodiscard]] inline CheckResult make_check(std::string name, double margin, Complex witness, double tail) {
    return {std::move(name), margin > kStrictMargin, margin, witness, tail};
}

/// Combines sub-checks: pass iff every check passes; the reported margin and
/// witness come from the binding (smallest-margin) check.
[[nodiscard]] inline CertificateReport assemble_report(std::vector<CheckResult> checks, const DiskGrid& grid,
                                                       std::size_t order) {
    CertificateReport r;
    r.grid_label = grid.label;
    r.truncation_order = order;
    r.pass = !checks.empty();
    bool first = true;
    for (const auto& c : checks) {
        r.pass = r.pass && c.passed;
        const bool binding = first || (!std::isnan(r.margin) && (std::isnan(c.margin) || c.margin < r.margin));
        if (binding) {
            r.margin = c.margin;
            r.witness = c.witness;
        }
        first = false;
    }
    r.checks = std::move(checks);
    return r;
}

/// Re p > 0 on the grid, for p with p(0) = 1.
[[nodiscard]] inline CertificateReport certify_positive_real(const Series& p, const DiskGrid& grid) {
    detail::require_p_candidate(p, "certify_positive_real: p");
    grid.validate();
    const RangeStat s = range_stats(p, grid);
    return assemble_report({make_check("Re p > 0", s.min_real - s.tail_estimate, s.argmin_point, s.tail_estimate)},
                           grid, p.order());
}

/// z g'(z) / g(z) with the common factor z cancelled.
[[nodiscard]] inline Series starlike_ratio(const Series& g) {
    detail::require_normalized(g, "starlike_ratio: g");
    return divide(differentiate(g), shift(g, -1, kNormalizationTolerance));
}

/// Re(z g' / g) > alpha on the grid.
[[nodiscard]] inline CertificateReport certify_starlike_order(const Series& g, double alpha, const DiskGrid& grid) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw InvariantViolation("certify_starlike_order: alpha must lie in [0, 1)");
    }
    grid.validate();
    const Series ratio = starlike_ratio(g);
    const RangeStat s = range_stats(ratio, grid);
    std::ostringstream name;
    name << "Re(zg'/g) > " << alpha;
    return assemble_report(
        {make_check(name.str(), s.min_real - alpha - s.tail_estimate, s.argmin_point, s.tail_estimate)}, grid,
        ratio.order());
}

/// |Phi - 1| < |A - B Phi| on the grid. A perturbation t of Phi moves the
/// left-minus-right difference by at most (1 + |B|) t, which is the tail
/// allowance.
[[nodiscard]] inline CheckResult check_subordinate_moebius(const Series& phi, const MoebiusTarget& target,
                                                          const DiskGrid& grid) {
    const auto worst = sample_max(phi, grid, [&](Complex w, Complex) {
        return std::abs(w - 1.0) - std::abs(target.A - target.B * w);
    });
    const double tail = tail_bound(phi, grid.r_max());
    std::ostringstream name;
    name << "Phi subordinate to (1+" << target.A << "z)/(1+" << target.B << "z)";
    return make_check(name.str(), -(worst.value + (1.0 + std::abs(target.B)) * tail), worst.point, tail);
}

[[nodiscard]] inline CertificateReport certify_subordinate_moebius(const Series& phi, const MoebiusTarget& target,
                                                                   const DiskGrid& grid) {
    detail::require_p_candidate(phi, "certify_subordinate_moebius: Phi");
    target.validate();
    grid.validate();
    return assemble_report({check_subordinate_moebius(phi, target, grid)}, grid, phi.order());
}

/// Subordination to a general univalent convex phi, given through a signed
/// region predicate: region_margin(w) > 0 iff w lies inside phi(U), and the
/// predicate is `lipschitz`-Lipschitz in w (used to absorb the tail).
template <class RegionMargin>
[[nodiscard]] CertificateReport certify_subordinate_region(const Series& phi, RegionMargin&& region_margin,
                                                           const DiskGrid& grid, double lipschitz = 1.0,
                                                           std::string name = "Phi in target region") {
    grid.validate();
    const auto worst = sample_min(phi, grid, [&](Complex w, Complex) { return region_margin(w); });
    const double tail = tail_bound(phi, grid.r_max());
    return assemble_report({make_check(std::move(name), worst.value - lipschitz * tail, worst.point, tail)}, grid,
                           phi.order());
}

/// Composite check for K_s^(k)(lambda, mu, A, B): g in S*((k-1)/k) and
/// class_ratio(f, g) subordinate to the Moebius target.
[[nodiscard]] inline CertificateReport certify_membership(const Series& f, const Series& g,
                                                          const ClassParams& params, const MoebiusTarget& target,
                                                          const DiskGrid& grid) {
    params.validate();
    target.validate();
    grid.validate();
    detail::require_normalized(f, "certify_membership: f");
    const double alpha = static_cast<double>(params.k - 1) / static_cast<double>(params.k);
    CertificateReport starlike = certify_starlike_order(g, alpha, grid);
    const Series phi = class_ratio(f, g, params);
    std::vector<CheckResult> checks{starlike.checks.front(), check_subordinate_moebius(phi, target, grid)};
    return assemble_report(std::move(checks), grid, phi.order());
}

/// Kaplan's condition Re(z f' / g*) > 0 against a caller-certified
/// starlike g*.
[[nodiscard]] inline CertificateReport certify_close_to_convex(const Series& f, const Series& gstar,
                                                               const DiskGrid& grid) {
    detail::require_normalized(f, "certify_close_to_convex: f");
    detail::require_normalized(gstar, "certify_close_to_convex: g*");
    grid.validate();
    const Series ratio = divide(differentiate(f), shift(gstar, -1, kNormalizationTolerance));
    const RangeStat s = range_stats(ratio, grid);
    return assemble_report(
        {make_check("Re(zf'/g*) > 0", s.min_real - s.tail_estimate, s.argmin_point, s.tail_estimate)}, grid,
        ratio.order());
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json report_to_json(const CertificateReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"margin", c.margin},
                          {"witness", complex_to_json(c.witness)},
                          {"passed", c.passed},
                          {"tail", c.tail}});
    }
    return {{"verdict", r.pass ? "pass" : "fail"},
            {"margin", r.margin},
            {"witness", complex_to_json(r.witness)},
            {"checks", std::move(checks)},
            {"grid", r.grid_label},
            {"order", r.truncation_order},
            {"semantics", kCertificateSemantics}};
}

}  // namespace ctcx
