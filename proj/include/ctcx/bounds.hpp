#pragma once

// Closed-form coefficient and Fekete-Szego bounds for the class, together
// with the sufficient coefficient condition for Moebius targets.
//
// Notation used throughout:
//   m2 = 1 + lambda - mu + 2 lambda mu      (operator multiplier at n = 2)
//   m3 = 1 + 2 lambda - 2 mu + 6 lambda mu  (operator multiplier at n = 3)
// The Fekete-Szego weight is called delta, never mu, so that it cannot be
// confused with the class parameter.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctcx/classes.hpp"
#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"

namespace ctcx {

/// phi(z) = 1 + Q1 z + Q2 z^2 + ...
struct PhiExpansion {
    double Q1 = 2.0;
    double Q2 = 2.0;

    [[nodiscard]] double phi_prime0_abs() const { return std::abs(Q1); }

    /// Q1 = A - B, Q2 = -B (A - B).
    [[nodiscard]] static PhiExpansion from_target(const MoebiusTarget& t) { return {t.A - t.B, -t.B * (t.A - t.B)}; }
};

/// (1 + |phi'(0)| (n - 1) / 2) / (1 + (n - 1)(lambda - mu + n lambda mu)).
[[nodiscard]] inline double coefficient_bound(const ClassParams& params, const PhiExpansion& phi, std::size_t n) {
    if (n < 1) {
        throw InvariantViolation("coefficient_bound: n must be at least 1");
    }
    const double nm1 = static_cast<double>(n - 1);
    return (1.0 + phi.phi_prime0_abs() * nm1 / 2.0) / lambda_mu_multiplier(n, params);
}

struct BoundRow {
    std::size_t n = 0;
    double abs_a_n = 0.0;
    double bound = 0.0;
    double slack = 0.0;
};

struct CoefficientBoundReport {
    std::vector<BoundRow> rows;
    bool pass = true;
    double worst_slack = std::numeric_limits<double>::infinity();
};

inline constexpr double kBoundSlackTolerance = 1e-9;

/// Rows for 2 <= n <= min(n_max, order(f)); pass iff every slack >= -1e-9.
[[nodiscard]] inline CoefficientBoundReport verify_coefficient_bounds(const Series& f, const ClassParams& params,
                                                                      const PhiExpansion& phi, std::size_t n_max) {
    CoefficientBoundReport r;
    const std::size_t top = std::min(n_max, f.order());
    for (std::size_t n = 2; n <= top; ++n) {
        BoundRow row{n, std::abs(f[n]), coefficient_bound(params, phi, n), 0.0};
        row.slack = row.bound - row.abs_a_n;
        r.pass = r.pass && row.slack >= -kBoundSlackTolerance;
        r.worst_slack = std::min(r.worst_slack, row.slack);
        r.rows.push_back(row);
    }
    return r;
}

/// 2 max{1, |2 w - 1|}: bound on |c_2 - w c_1^2| over P.
[[nodiscard]] inline double lemma21_bound(Complex weight) { return 2.0 * std::max(1.0, std::abs(2.0 * weight - 1.0)); }

/// max{1, |3 - 4 w|}: bound on |b_3 - w b_2^2| over S*.
[[nodiscard]] inline double lemma22_bound(double weight) { return std::max(1.0, std::abs(3.0 - 4.0 * weight)); }

/// |a_3 - delta a_2^2|.
[[nodiscard]] inline double fekete_szego_functional(const Series& f, Complex delta) {
    if (f.order() < 3) {
        throw InvariantViolation("fekete_szego_functional: order must be at least 3");
    }
    return std::abs(f[3] - delta * f[2] * f[2]);
}

struct FSBoundInputs {
    Complex delta{};
    Complex d1{2.0, 0.0};  ///< first coefficient of h = (1 + w)/(1 - w); |d1| <= 2
};

struct FSBoundReport {
    double value = 0.0;
    double term1 = 0.0;
    double term2 = 0.0;
    Complex term3{};
    Complex alpha{};
    Complex beta{};
    std::vector<std::string> caveats;
};

/// Evaluates the published three-term Fekete-Szego estimate verbatim,
/// including the d1-dependent term inside beta and the squared m2 in the
/// third term. term3 carries no absolute value in that formula; for real
/// delta it is real, otherwise its real part enters `value` and a caveat
/// is recorded. Always carries the "printed-formula" caveat: validate it
/// against sampled members before relying on it.
[[nodiscard]] inline FSBoundReport fekete_szego_bound(const ClassParams& params, const PhiExpansion& phi,
                                                      const FSBoundInputs& in) {
    params.validate();
    if (!(phi.Q1 > 0.0)) {
        throw InvariantViolation("fekete_szego_bound: Q1 = phi'(0) must be positive");
    }
    if (std::abs(in.d1) > 2.0 + 1e-12) {
        throw InvariantViolation("fekete_szego_bound: |d1| must not exceed 2");
    }
    const double lam = params.lambda;
    const double mu = params.mu;
    const double m2 = 1.0 + lam - mu + 2.0 * lam * mu;
    const double m3 = 1.0 + 2.0 * lam - 2.0 * mu + 6.0 * lam * mu;
    const Complex delta = in.delta;

    FSBoundReport r;
    r.alpha = 3.0 * delta * m3 / (4.0 * m2);
    r.beta = 0.5 * (1.0 - phi.Q2 / phi.Q1 - 3.0 * delta * phi.Q2 * phi.Q2 * in.d1 * in.d1 * m3 / (4.0 * m2 * m2));
    r.term1 = std::max(1.0, std::abs(3.0 - 4.0 * r.alpha)) / (3.0 * m3);
    r.term2 = phi.Q1 * std::max(1.0, std::abs(2.0 * r.beta - 1.0)) / (3.0 * m3);
    r.term3 = 2.0 * phi.Q1 * (1.0 / (3.0 * m3) - delta / (2.0 * m2 * m2));
    r.value = r.term1 + r.term2 + r.term3.real();
    r.caveats.emplace_back("printed-formula");
    if (r.term3.imag() != 0.0) {
        r.caveats.emplace_back("complex-third-term: real part used");
    }
    if (r.term3.real() < 0.0) {
        r.caveats.emplace_back("negative-third-term");
    }
    return r;
}

/// a_2 and a_3 in terms of B_2, B_3 of G_k and d_1, d_2 of h:
///   a_2 = (2 B_2 + Q1 d1) / (4 m2)
///   a_3 = (2 B_2 Q1 d1 + 2 Q1 (d2 - d1^2 / 2) + Q2 d1^2 + 4 B_3) / (12 m3)
[[nodiscard]] inline std::pair<Complex, Complex> a2_a3_formulas(Complex b2, Complex b3, const PhiExpansion& phi,
                                                                Complex d1, Complex d2, const ClassParams& params) {
    if (std::abs(d1) > 2.0 + 1e-12) {
        throw InvariantViolation("a2_a3_formulas: |d1| must not exceed 2");
    }
    const double lam = params.lambda;
    const double mu = params.mu;
    const double m2 = 1.0 + lam - mu + 2.0 * lam * mu;
    const double m3 = 1.0 + 2.0 * lam - 2.0 * mu + 6.0 * lam * mu;
    const Complex a2 = (2.0 * b2 + phi.Q1 * d1) / (4.0 * m2);
    const Complex a3 =
        (2.0 * b2 * phi.Q1 * d1 + 2.0 * phi.Q1 * (d2 - d1 * d1 / 2.0) + phi.Q2 * d1 * d1 + 4.0 * b3) / (12.0 * m3);
    return {a2, a3};
}

/// Geometric extrapolation of the omitted part of a nonnegative series of
/// terms from its top quarter: 0 when that quarter vanishes, +inf when the
/// terms do not visibly decay.
[[nodiscard]] inline double geometric_tail(std::span<const double> terms) {
    if (terms.empty()) {
        return 0.0;
    }
    const std::size_t len = terms.size();
    const std::size_t q = std::max<std::size_t>(1, len / 4);
    if (std::all_of(terms.end() - static_cast<std::ptrdiff_t>(std::min(q, len)), terms.end(),
                    [](double t) { return t == 0.0; })) {
        return 0.0;
    }
    if (q >= len) {
        return std::numeric_limits<double>::infinity();
    }
    const double last = terms[len - 1];
    const double earlier = terms[len - 1 - q];
    if (!(earlier > 0.0) || !(last > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double rho = std::pow(last / earlier, 1.0 / static_cast<double>(q));
    if (!(rho < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return last * rho / (1.0 - rho);
}

struct SufficientReport {
    double lhs = 0.0;
    double rhs = 0.0;  ///< A - B
    double slack = 0.0;
    bool holds = false;
    double f_sum = 0.0;  ///< sum n [1 + (n-1)(lambda - mu + n lambda mu)] |a_n|
    double b_sum = 0.0;  ///< sum |B_n|
    double tail_estimate = 0.0;
    std::size_t f_terms = 0;
    std::size_t b_terms = 0;
};

/// (1 + |B|) sum_{n>=2} n [1 + (n-1)(lambda - mu + n lambda mu)] |a_n|
///   + (1 + |A|) sum_{n>=2} |B_n|  <=  A - B,
/// summed over the retained coefficients. The verdict ignores the tail;
/// the extrapolated tail of the weighted LHS is reported alongside.
[[nodiscard]] inline SufficientReport sufficient_condition(const Series& f, const Series& g,
                                                           const ClassParams& params, const MoebiusTarget& target) {
    params.validate();
    target.validate();
    detail::require_normalized(f, "sufficient_condition: f");
    const Series big_g = to_Gk(build_gk(g, params.k), params.k);

    std::vector<double> f_terms;
    for (std::size_t n = 2; n <= f.order(); ++n) {
        f_terms.push_back(static_cast<double>(n) * lambda_mu_multiplier(n, params) * std::abs(f[n]));
    }
    std::vector<double> b_terms;
    for (std::size_t n = 2; n <= big_g.order(); ++n) {
        b_terms.push_back(std::abs(big_g[n]));
    }

    SufficientReport r;
    for (double t : f_terms) {
        r.f_sum += t;
    }
    for (double t : b_terms) {
        r.b_sum += t;
    }
    r.lhs = (1.0 + std::abs(target.B)) * r.f_sum + (1.0 + std::abs(target.A)) * r.b_sum;
    r.rhs = target.A - target.B;
    r.slack = r.rhs - r.lhs;
    r.holds = r.lhs <= r.rhs;
    r.tail_estimate = (1.0 + std::abs(target.B)) * geometric_tail(f_terms) +
                      (1.0 + std::abs(target.A)) * geometric_tail(b_terms);
    r.f_terms = f_terms.size();
    r.b_terms = b_terms.size();
    return r;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json bound_rows_to_json(const CoefficientBoundReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n}, {"abs_a_n", row.abs_a_n}, {"bound", row.bound}, {"slack", row.slack}});
    }
    return rows;
}

inline nlohmann::json fs_report_to_json(const FSBoundReport& r) {
    return {{"bound", r.value},
            {"term1", r.term1},
            {"term2", r.term2},
            {"term3", complex_to_json(r.term3)},
            {"alpha", complex_to_json(r.alpha)},
            {"beta", complex_to_json(r.beta)},
            {"caveats", r.caveats}};
}

inline nlohmann::json sufficient_to_json(const SufficientReport& r) {
    nlohmann::json tail = std::isfinite(r.tail_estimate) ? nlohmann::json(r.tail_estimate) : nlohmann::json("inf");
    return {{"lhs", r.lhs},         {"rhs", r.rhs},         {"slack", r.slack},
            {"holds", r.holds},     {"f_sum", r.f_sum},     {"b_sum", r.b_sum},
            {"tail_estimate", tail}, {"f_terms", r.f_terms}, {"b_terms", r.b_terms},
            {"caveat", "retained terms only; tail reported separately"}};
}

}  // namespace ctcx
