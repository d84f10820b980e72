#pragma once

// Seeded randomized property suite. Every trial draws from its own
// generator seeded by (master seed, property index, trial index), so the
// report depends only on the seed and the trial count.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctcx/bounds.hpp"
#include "ctcx/classes.hpp"
#include "ctcx/disk.hpp"
#include "ctcx/series.hpp"
#include "ctcx/synthesis.hpp"

namespace ctcx {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultTrials = 200;

/// Five (lambda, mu) points spanning the parameter triangle 0 <= mu <= lambda <= 1.
inline constexpr std::array<std::pair<double, double>, 5> kParamLattice{
    {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}}};

struct TrialOutcome {
    bool ok = true;
    double slack = 0.0;    ///< distance from the threshold; negative means violated
    bool finding = false;  ///< noteworthy but not a failure
};

struct PropertyRow {
    std::string name;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t findings = 0;
    double worst_slack = 0.0;
};

struct SuiteReport {
    std::uint64_t seed = kDefaultSeed;
    std::size_t trials = 0;
    std::vector<PropertyRow> rows;

    [[nodiscard]] bool all_passed() const {
        return std::all_of(rows.begin(), rows.end(), [](const PropertyRow& r) { return r.failed == 0; });
    }
};

inline Rng trial_rng(std::uint64_t seed, std::size_t property, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(property), static_cast<std::uint32_t>(trial)};
    return Rng(seq);
}

// ---------------------------------------------------------------------------
// Random inputs

inline Series random_series(Rng& rng, std::size_t order, double radius = 1.0) {
    std::vector<Complex> v(order + 1);
    for (auto& c : v) {
        c = random_disk_point(rng, radius);
    }
    return Series(std::move(v));
}

/// Normalized f with |a_n| <= radius for n >= 2.
inline Series random_normalized(Rng& rng, std::size_t order, double radius = 1.0) {
    std::vector<Complex> v(order + 1);
    v[1] = 1.0;
    for (std::size_t n = 2; n <= order; ++n) {
        v[n] = random_disk_point(rng, radius);
    }
    return Series(std::move(v));
}

inline ClassParams random_lattice_params(Rng& rng, int k) {
    const auto& [lam, mu] = kParamLattice[std::uniform_int_distribution<std::size_t>(0, kParamLattice.size() - 1)(rng)];
    return {k, lam, mu};
}

inline int random_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// A pair (f, g) satisfying the sufficient coefficient condition with
/// g = z prod (1 + b_j z) in S*(0.8), hence in S*((k-1)/k) for k <= 4.
struct SufficientPair {
    Series f;
    Series g;
    ClassParams params;
    MoebiusTarget target;
};

inline SufficientPair random_sufficient_pair(Rng& rng, std::size_t order) {
    const int k = random_int(rng, 1, 4);
    const ClassParams params = random_lattice_params(rng, k);
    const MoebiusTarget target = random_target(rng, 0.2);

    // sum |b_j| / (1 - |b_j|) <= 0.2 keeps Re(z g'/g) >= 0.8.
    const int factors = random_int(rng, 1, 3);
    std::vector<Complex> b(static_cast<std::size_t>(factors));
    for (auto& bj : b) {
        bj = random_disk_point(rng, 0.2 / (1.2 * factors));
    }
    Series g;
    double budget = 0.0;
    for (int attempt = 0;; ++attempt) {
        Series prod = Series::constant(1.0, order - 1);
        for (const auto& bj : b) {
            prod = mul(prod, Series(std::vector<Complex>{1.0, bj}).truncated(order - 1));
        }
        g = shift(prod, 1);
        const Series big_g = to_Gk(build_gk(g, k), k);
        double bsum = 0.0;
        for (std::size_t n = 2; n <= big_g.order(); ++n) {
            bsum += std::abs(big_g[n]);
        }
        budget = (target.A - target.B) - (1.0 + std::abs(target.A)) * bsum;
        if (budget > 0.25 * (target.A - target.B) || attempt > 60) {
            break;
        }
        for (auto& bj : b) {
            bj *= 0.5;
        }
    }

    const std::size_t degree = static_cast<std::size_t>(random_int(rng, 2, 6));
    std::vector<Complex> a(order + 1);
    a[1] = 1.0;
    double weighted = 0.0;
    for (std::size_t n = 2; n <= degree && n <= order; ++n) {
        a[n] = random_disk_point(rng, 1.0);
        weighted += static_cast<double>(n) * lambda_mu_multiplier(n, params) * std::abs(a[n]);
    }
    const double s = uniform(rng, 0.3, 0.999) * budget / ((1.0 + std::abs(target.B)) * weighted);
    for (std::size_t n = 2; n <= order; ++n) {
        a[n] *= s;
    }
    return {Series(std::move(a), "f"), g.retagged("g"), params, target};
}

// ---------------------------------------------------------------------------
// Properties

struct Property {
    std::string name;
    std::function<TrialOutcome(Rng&)> trial;
};

inline TrialOutcome within(double error, double tol) { return {error <= tol, tol - error, false}; }

inline std::vector<Property> make_properties() {
    std::vector<Property> props;

    props.push_back({"series.ring_axioms", [](Rng& rng) {
                         const std::size_t n = static_cast<std::size_t>(random_int(rng, 0, 64));
                         const Series a = random_series(rng, n), b = random_series(rng, n), c = random_series(rng, n);
                         const double err = std::max({max_abs_difference(a * b, b * a),
                                                      max_abs_difference((a * b) * c, a * (b * c)),
                                                      max_abs_difference(a * (b + c), a * b + a * c)});
                         return within(err, 1e-12);
                     }});

    props.push_back({"series.divide_roundtrip", [](Rng& rng) {
                         const std::size_t n = static_cast<std::size_t>(random_int(rng, 0, 64));
                         const Series a = random_series(rng, n);
                         std::vector<Complex> bv(n + 1);
                         bv[0] = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
                         for (std::size_t j = 1; j <= n; ++j) {
                             bv[j] = random_disk_point(rng, std::pow(0.5, static_cast<double>(j)));
                         }
                         const Series b(std::move(bv));
                         return within(max_abs_difference(divide(a, b) * b, a), 1e-10);
                     }});

    props.push_back({"series.product_rule", [](Rng& rng) {
                         const std::size_t n = static_cast<std::size_t>(random_int(rng, 1, 64));
                         const Series a = random_series(rng, n), b = random_series(rng, n);
                         const Series lhs = differentiate(a * b);
                         const Series rhs = differentiate(a) * b + a * differentiate(b);
                         return within(max_abs_difference(lhs, rhs.truncated(lhs.order())), 1e-10);
                     }});

    props.push_back({"series.rotate_composition", [](Rng& rng) {
                         const Series a = random_series(rng, static_cast<std::size_t>(random_int(rng, 0, 64)));
                         const double t1 = uniform(rng, -7.0, 7.0), t2 = uniform(rng, -7.0, 7.0);
                         return within(max_abs_difference(rotate(rotate(a, t1), t2), rotate(a, t1 + t2)), 1e-12);
                     }});

    props.push_back({"series.binomial_inverse", [](Rng& rng) {
                         const double c = uniform(rng, -3.0, 3.0);
                         const Series prod = binomial_series(c, 64) * binomial_series(-c, 64);
                         return within(max_abs_difference(prod, Series::constant(1.0, 64)), 1e-10);
                     }});

    props.push_back({"disk.horner_vs_naive", [](Rng& rng) {
                         const Series a = random_series(rng, static_cast<std::size_t>(random_int(rng, 0, 64)));
                         const Complex z = random_disk_point(rng, 0.95);
                         Complex naive{}, zn{1.0, 0.0};
                         for (const auto& c : a.coeffs()) {
                             naive += c * zn;
                             zn *= z;
                         }
                         return within(std::abs(evaluate(a, z) - naive), 1e-13);
                     }});

    props.push_back({"disk.refinement_monotone", [](Rng& rng) {
                         const Series a = random_series(rng, 16);
                         const std::size_t angles = static_cast<std::size_t>(random_int(rng, 8, 90));
                         const DiskGrid coarse = make_grid({0.4, 0.8}, angles);
                         const DiskGrid fine = make_grid({0.4, 0.8}, 2 * angles);
                         // The fine grid contains the coarse one; the two DFT sizes only
                         // disagree in rounding at shared points.
                         const double diff = range_stats(a, coarse).min_real - range_stats(a, fine).min_real;
                         return TrialOutcome{diff >= -1e-12, diff + 1e-12, false};
                     }});

    props.push_back({"classes.gk_matches_rotated_product", [](Rng& rng) {
                         const int k = random_int(rng, 1, 8);
                         const Series g = random_starlike_g(rng, k, 24);
                         const Series gk = build_gk(g, k);
                         // Direct product of the rotated copies, truncated at order 24.
                         Series direct = g;
                         for (int v = 1; v < k; ++v) {
                             direct = direct * rotate(g, 2.0 * std::numbers::pi * v / k);
                         }
                         double err = max_abs_difference(gk.truncated(direct.order()), direct);
                         for (int n = 0; n < k; ++n) {
                             err = std::max(err, std::abs(gk[static_cast<std::size_t>(n)]));
                         }
                         return within(err, 1e-10);
                     }});

    props.push_back({"classes.gk_cyclic_relabel", [](Rng& rng) {
                         const int k = random_int(rng, 1, 8);
                         const int offset = random_int(rng, 0, k - 1);
                         const Series g = random_starlike_g(rng, k, 32);
                         Series shifted = shift(rotate(g, 2.0 * std::numbers::pi * offset / k), -1, 1e-10);
                         for (int v = 1; v < k; ++v) {
                             const int idx = (v + offset) % k;
                             shifted = shifted * shift(rotate(g, 2.0 * std::numbers::pi * idx / k), -1, 1e-10);
                         }
                         return within(max_abs_difference(shift(shifted, k), build_gk(g, k)), 1e-12);
                     }});

    props.push_back({"classes.Gk_starlike", [](Rng& rng) {
                         const int k = random_int(rng, 1, 4);
                         const Series g = random_starlike_g(rng, k, kCertificationOrder);
                         const auto report = certify_starlike_order(to_Gk(build_gk(g, k), k), 0.0, default_grid());
                         return TrialOutcome{report.pass, report.margin, false};
                     }});

    props.push_back({"classes.subordinate_coefficient_majorization", [](Rng& rng) {
                         const int k = random_int(rng, 1, 3);
                         const ClassParams params = random_lattice_params(rng, k);
                         const MoebiusTarget target = random_target(rng);
                         const auto m = synthesize_member(random_witness(rng), random_starlike_g(rng, k, 32), params,
                                                          target, 32);
                         const Series phi = class_ratio(m.f, m.g, params);
                         double worst = std::numeric_limits<double>::infinity();
                         for (std::size_t n = 1; n <= phi.order(); ++n) {
                             worst = std::min(worst, (target.A - target.B) - std::abs(phi[n]));
                         }
                         return TrialOutcome{worst >= -1e-9, worst, false};
                     }});

    props.push_back({"classes.membership_implies_close_to_convex", [](Rng& rng) {
                         const int k = random_int(rng, 1, 3);
                         const ClassParams params = random_lattice_params(rng, k);
                         const MoebiusTarget target = random_target(rng);
                         const auto m = synthesize_member(random_witness(rng, 0.9),
                                                          random_starlike_g(rng, k, kCertificationOrder), params,
                                                          target, kCertificationOrder);
                         const DiskGrid grid = default_grid();
                         const auto member = certify_membership(m.f, m.g, params, target, grid);
                         const auto ctc = certify_close_to_convex(lambda_mu_transform(m.f, params),
                                                                  to_Gk(build_gk(m.g, k), k), grid);
                         return TrialOutcome{member.pass && ctc.pass, std::min(member.margin, ctc.margin), false};
                     }});

    props.push_back({"synthesis.recurrence_roundtrip", [](Rng& rng) {
                         const int k = random_int(rng, 1, 3);
                         const ClassParams params = random_lattice_params(rng, k);
                         const auto m = synthesize_member(random_witness(rng), random_starlike_g(rng, k, 32), params,
                                                          random_target(rng), 32);
                         const Series phi = class_ratio(m.f, m.g, params);
                         return within(max_abs_difference(phi, m.p.truncated(phi.order())), 1e-10);
                     }});

    props.push_back({"synthesis.invert_lambda_mu", [](Rng& rng) {
                         const ClassParams params{1, 0.0, 0.0};
                         const double lam = uniform(rng, 0.0, 1.0);
                         const ClassParams p{params.k, lam, uniform(rng, 0.0, lam)};
                         const Series f = random_normalized(rng, 32);
                         return within(max_abs_difference(invert_lambda_mu(lambda_mu_transform(f, p), p), f), 1e-12);
                     }});

    props.push_back({"synthesis.delta_nu_vieta", [](Rng& rng) {
                         const double lam = uniform(rng, 0.0, 0.99);
                         const ClassParams p{1, lam, uniform(rng, 0.0, lam)};
                         const auto d = decompose_delta_nu(p);
                         double err = std::max(std::abs(d.delta + d.nu - (d.alpha - d.beta)),
                                               std::abs(d.delta * d.nu - d.beta));
                         if (d.real_nonneg) {
                             const Series f = generalized_koebe(uniform(rng, 0.0, 1.0), 24);
                             err = std::max(err, max_abs_difference(apply_delta_nu_chain(lambda_mu_transform(f, p), d), f));
                         }
                         return within(err, 1e-12 * std::max(1.0, std::abs(d.alpha)) + (d.real_nonneg ? 1e-9 : 0.0));
                     }});

    props.push_back({"synthesis.bernardi_preserves_close_to_convex", [](Rng& rng) {
                         const double gamma = uniform(rng, 0.0, 5.0);
                         const Series t = bernardi_transform(catalog("koebe", kCertificationOrder), gamma);
                         const auto report = certify_close_to_convex(t, t, default_grid());
                         return TrialOutcome{report.pass, report.margin, false};
                     }});

    props.push_back({"bounds.coefficient_domination", [](Rng& rng) {
                         const int k = random_int(rng, 1, 3);
                         const ClassParams params = random_lattice_params(rng, k);
                         const MoebiusTarget target = random_target(rng);
                         const auto m = synthesize_member(random_witness(rng), random_starlike_g(rng, k, 16), params,
                                                          target, 16);
                         const auto r = verify_coefficient_bounds(m.f, params, PhiExpansion::from_target(target), 16);
                         return TrialOutcome{r.pass, r.worst_slack, false};
                     }});

    props.push_back({"bounds.bound_monotone_and_corollaries", [](Rng& rng) {
                         const std::size_t n = static_cast<std::size_t>(random_int(rng, 2, 64));
                         const double lam = uniform(rng, 0.0, 1.0), mu = uniform(rng, 0.0, lam);
                         const double eps = uniform(rng, 0.0, 1.0 - lam);
                         const PhiExpansion phi{uniform(rng, 0.01, 2.0), 0.0};
                         const double nm1 = static_cast<double>(n - 1);
                         const double b = coefficient_bound({1, lam, mu}, phi, n);
                         const double b_lam_up = coefficient_bound({1, lam + eps, mu}, phi, n);
                         const double cor21 = (1.0 + phi.Q1 * nm1 / 2.0) / (1.0 + lam * nm1);
                         const double cor22 = 1.0 + phi.Q1 * nm1 / 2.0;
                         double slack = b - b_lam_up;
                         bool ok = slack >= 0.0;
                         ok = ok && std::abs(coefficient_bound({1, lam, 0.0}, phi, n) - cor21) <= 1e-12 * cor21;
                         ok = ok && std::abs(coefficient_bound({1, 0.0, 0.0}, phi, n) - cor22) <= 1e-12 * cor22;
                         // d/dmu of the multiplier is (n - 1)(n lambda - 1): the bound grows
                         // with mu only while n lambda <= 1.
                         const double mu_up = std::min(lam, mu + eps);
                         const double m_change =
                             lambda_mu_multiplier(n, {1, lam, mu_up}) - lambda_mu_multiplier(n, {1, lam, mu});
                         const double expected = (mu_up - mu) * nm1 * (static_cast<double>(n) * lam - 1.0);
                         ok = ok && std::abs(m_change - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
                         return TrialOutcome{ok, slack, false};
                     }});

    props.push_back({"bounds.lemma21_domination", [](Rng& rng) {
                         const Series p = herglotz(random_witness(rng).series(4));
                         double worst = std::numeric_limits<double>::infinity();
                         for (const double w : {0.0, 0.25, 0.5, 1.0}) {
                             worst = std::min(worst, lemma21_bound(w) - std::abs(p[2] - w * p[1] * p[1]));
                         }
                         return TrialOutcome{worst >= -1e-9, worst, false};
                     }});

    props.push_back({"bounds.lemma22_domination", [](Rng& rng) {
                         const int which = random_int(rng, 0, 2);
                         Series g = which == 0   ? catalog("koebe", 4)
                                    : which == 1 ? catalog("koebe_sqrt2", 4)
                                                 : generalized_koebe(uniform(rng, 0.0, 1.0), 4);
                         g = rotate(g, uniform(rng, 0.0, 2.0 * std::numbers::pi));
                         double worst = std::numeric_limits<double>::infinity();
                         for (int i = 0; i <= 8; ++i) {
                             const double w = i / 8.0;
                             worst = std::min(worst, lemma22_bound(w) - std::abs(g[3] - w * g[2] * g[2]));
                         }
                         return TrialOutcome{worst >= -1e-9, worst, false};
                     }});

    props.push_back({"bounds.sufficient_condition_implies_membership", [](Rng& rng) {
                         const auto pair = random_sufficient_pair(rng, 128);
                         const auto cond = sufficient_condition(pair.f, pair.g, pair.params, pair.target);
                         const auto cert =
                             certify_membership(pair.f, pair.g, pair.params, pair.target, default_grid());
                         return TrialOutcome{cond.holds && cert.pass, cert.margin, false};
                     }});

    props.push_back({"bounds.fekete_szego_printed_formula", [](Rng& rng) {
                         // Gate: the a2/a3 formulas agree with the recurrence. A sample
                         // exceeding the printed bound is recorded as a finding.
                         const ClassParams params{2, 0.0, 0.0};
                         const MoebiusTarget target{1.0, -1.0};
                         const PhiExpansion phi = PhiExpansion::from_target(target);
                         const double delta = std::array{0.0, 0.5, 1.0}[static_cast<std::size_t>(random_int(rng, 0, 2))];
                         const BlaschkeWitness w = random_witness(rng);
                         const auto m = synthesize_member(w, random_starlike_g(rng, 2, 8), params, target, 8);
                         const Series big_g = to_Gk(build_gk(m.g, 2), 2);
                         const auto [a2, a3] = a2_a3_formulas(big_g[2], big_g[3], phi, w.d1(), w.d2(), params);
                         const double cross = std::max(std::abs(a2 - m.f[2]), std::abs(a3 - m.f[3]));
                         const double bound = fekete_szego_bound(params, phi, {delta, w.d1()}).value;
                         const double slack = bound - fekete_szego_functional(m.f, delta);
                         return TrialOutcome{cross <= 1e-9, slack, slack < -1e-6};
                     }});

    return props;
}

[[nodiscard]] inline SuiteReport run_suite(std::uint64_t seed = kDefaultSeed, std::size_t trials = kDefaultTrials) {
    SuiteReport report;
    report.seed = seed;
    report.trials = trials;
    if (trials == 0) {
        return report;
    }
    const auto props = make_properties();
    for (std::size_t i = 0; i < props.size(); ++i) {
        PropertyRow row;
        row.name = props[i].name;
        row.trials = trials;
        row.worst_slack = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = trial_rng(seed, i, t);
            TrialOutcome out;
            try {
                out = props[i].trial(rng);
            } catch (const Error&) {
                out = {false, -std::numeric_limits<double>::infinity(), false};
            }
            (out.ok ? row.passed : row.failed) += 1;
            row.findings += out.finding ? 1 : 0;
            if (std::isnan(out.slack) || out.slack < row.worst_slack) {
                row.worst_slack = out.slack;
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline nlohmann::json suite_to_json(const SuiteReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json worst = row.worst_slack;
        if (std::isnan(row.worst_slack)) {
            worst = "nan";
        } else if (std::isinf(row.worst_slack)) {
            worst = row.worst_slack > 0 ? "inf" : "-inf";
        }
        rows.push_back({{"name", row.name},
                        {"trials", row.trials},
                        {"passed", row.passed},
                        {"failed", row.failed},
                        {"findings", row.findings},
                        {"worst_slack", std::move(worst)}});
    }
    return {{"seed", r.seed}, {"trials", r.trials}, {"properties", std::move(rows)}, {"all_passed", r.all_passed()}};
}

}  // namespace ctcx
