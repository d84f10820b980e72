#include <gtest/gtest.h>

#include <numbers>

#include "ctcx/classes.hpp"
#include "ctcx/synthesis.hpp"
#include "oracles.hpp"

using namespace ctcx;

namespace {

Series poly(std::initializer_list<Complex> c) { return Series(std::vector<Complex>(c)); }

// Exact polynomials are padded with zeros so the tail estimate sees a
// vanishing top quarter.
Series padded(std::initializer_list<Complex> c, std::size_t order = 64) { return poly(c).truncated(order); }

Series from(const oracle::coeffs& c) { return Series(c); }

const ClassParams kPlain{1, 0.0, 0.0};
const MoebiusTarget kHalfplane{1.0, -1.0};

}  // namespace

TEST(Classes, ParamValidation) {
    EXPECT_NO_THROW(ClassParams({3, 0.5, 0.5}).validate());
    EXPECT_THROW(ClassParams({0, 0.5, 0.0}).validate(), InvariantViolation);
    EXPECT_THROW(ClassParams({17, 0.5, 0.0}).validate(), InvariantViolation);
    EXPECT_THROW(ClassParams({1, 0.5, 0.7}).validate(), InvariantViolation);
    EXPECT_THROW(ClassParams({1, 1.2, 0.0}).validate(), InvariantViolation);
    EXPECT_THROW(ClassParams({1, 0.5, -0.1}).validate(), InvariantViolation);
    EXPECT_THROW(MoebiusTarget({0.5, 0.5}).validate(), InvariantViolation);
    EXPECT_THROW(MoebiusTarget({1.5, 0.0}).validate(), InvariantViolation);
    EXPECT_THROW(MoebiusTarget({0.0, -1.5}).validate(), InvariantViolation);
}

TEST(Classes, MoebiusSeriesMatchesPointValues) {
    const MoebiusTarget t{0.6, -0.3};
    const Series s = t.series(80);
    for (const Complex z : {Complex(0.4, 0.1), Complex(-0.7, 0.3)}) {
        EXPECT_NEAR(std::abs(horner(s, z) - t(z)), 0.0, 1e-12);
    }
}

TEST(Classes, BuildGkExamples) {
    const Series g = catalog("gen_koebe", 12, std::vector<double>{0.3});
    EXPECT_LE(max_abs_difference(build_gk(g, 1), g), 0.0);

    // k = 2, g = z/(1-z): g_2 = z^2/(1-z^2) = -g(z) g(-z).
    const Series g2 = build_gk(catalog("gen_koebe", 20, std::vector<double>{0.5}), 2);
    for (std::size_t n = 0; n <= 20; ++n) {
        const double want = (n >= 2 && n % 2 == 0) ? 1.0 : 0.0;
        EXPECT_NEAR(std::abs(g2[n] - want), 0.0, 1e-12) << n;
    }

    for (int k = 1; k <= 8; ++k) {
        const Series gk = build_gk(Series::monomial(1, 10), k);
        for (std::size_t n = 0; n <= gk.order(); ++n) {
            EXPECT_NEAR(std::abs(gk[n] - (n == static_cast<std::size_t>(k) ? 1.0 : 0.0)), 0.0, 1e-15);
        }
    }
}

TEST(Classes, BuildGkMatchesBruteForceProduct) {
    const auto g = oracle::gen_koebe(0.2, 24);
    for (int k = 1; k <= 6; ++k) {
        const auto want = oracle::naive_gk(g, k, 24);
        const Series got = build_gk(from(g), k);
        for (std::size_t n = 0; n <= 24; ++n) {
            EXPECT_NEAR(std::abs(got[n] - want[n]), 0.0, 1e-9 * std::max(1.0, std::abs(want[n]))) << k << " " << n;
        }
    }
}

TEST(Classes, BuildGkLeadingZerosAndCyclicRelabel) {
    for (const char* name : {"koebe", "koebe_sqrt2", "s_star_half_example", "identity"}) {
        const Series g = catalog(name, 30);
        for (int k = 1; k <= 8; ++k) {
            const Series gk = build_gk(g, k);
            for (int n = 0; n < k; ++n) {
                EXPECT_LE(std::abs(gk[static_cast<std::size_t>(n)]), 1e-10) << name << " " << k;
            }
            EXPECT_NEAR(std::abs(gk[static_cast<std::size_t>(k)] - 1.0), 0.0, 1e-12);
            // Relabeling v -> v + 1 is the same product started from the first rotated copy.
            const Series relabeled = build_gk(rotate(g, 2.0 * std::numbers::pi / k), k);
            EXPECT_LE(max_abs_difference(gk, relabeled), 1e-12 * std::max(1.0, gk.max_abs_coeff())) << name << k;
        }
    }
}

TEST(Classes, ToGkExamples) {
    const Series g = catalog("gen_koebe", 16, std::vector<double>{0.3});
    EXPECT_LE(max_abs_difference(to_Gk(build_gk(g, 1), 1), g), 0.0);

    const Series big_g2 = to_Gk(build_gk(catalog("gen_koebe", 40, std::vector<double>{0.5}), 2), 2);
    for (std::size_t n = 0; n <= 40; ++n) {
        EXPECT_NEAR(std::abs(big_g2[n] - (n % 2 == 1 ? 1.0 : 0.0)), 0.0, 1e-12) << n;
    }

    // z/(1-z)^{2/k} -> z/(1-z^k)^{2/k}.
    for (int k = 2; k <= 4; ++k) {
        const double alpha = 1.0 - 1.0 / k;
        const Series big_g = to_Gk(build_gk(catalog("gen_koebe", 48, std::vector<double>{alpha}), k), k);
        for (std::size_t n = 1; n <= 48; ++n) {
            const bool on_lattice = (n - 1) % static_cast<std::size_t>(k) == 0;
            const double want =
                on_lattice ? oracle::rising_binomial(2.0 / k, static_cast<int>((n - 1) / static_cast<std::size_t>(k))) : 0.0;
            EXPECT_NEAR(std::abs(big_g[n] - want), 0.0, 1e-10) << k << " " << n;
        }
    }
}

TEST(Classes, LambdaMuTransformExamples) {
    const Series f = catalog("koebe", 10);
    EXPECT_EQ(max_abs_difference(lambda_mu_transform(f, kPlain), f), 0.0);
    const Series big_f = lambda_mu_transform(poly({0, 1, 1}), {1, 1.0, 0.0});
    EXPECT_EQ(big_f[2], Complex(2.0));
    for (const auto& p : {ClassParams{1, 0.3, 0.1}, ClassParams{2, 1.0, 1.0}}) {
        EXPECT_EQ(max_abs_difference(lambda_mu_transform(poly({0, 1}), p), poly({0, 1})), 0.0);
    }
    EXPECT_THROW((void)lambda_mu_transform(poly({0, 2}), kPlain), InvariantViolation);
}

TEST(Classes, LambdaMuTransformMatchesDifferentialForm) {
    // (1 - lambda + mu) f + (lambda - mu) z f' + lambda mu z^2 f'' built by hand.
    const ClassParams p{1, 0.8, 0.3};
    const Series f(std::vector<Complex>{0, 1, {0.3, 0.2}, {-0.1, 0.5}, 0.25, {0, -0.4}});
    const Series zf1 = shift(differentiate(f), 1);
    const Series z2f2 = shift(differentiate(differentiate(f)), 2);
    const Series want = add(add(scale(f, Complex(1 - p.lambda + p.mu)), scale(zf1, Complex(p.lambda - p.mu))),
                            scale(z2f2, Complex(p.lambda * p.mu)));
    EXPECT_LE(max_abs_difference(lambda_mu_transform(f, p), want), 1e-15);
}

TEST(Classes, ClassRatioExamples) {
    const Series k = catalog("koebe", 40);
    EXPECT_LE(max_abs_difference(class_ratio(k, k, kPlain), catalog("halfplane", 39)), 1e-12);

    for (int kk = 1; kk <= 4; ++kk) {
        const Series phi = class_ratio(poly({0, 1}), poly({0, 1}), {kk, 0.0, 0.0});
        EXPECT_LE(max_abs_difference(phi, poly({1})), 0.0);
    }

    const ClassParams p2{2, 0.0, 0.0};
    const Series g = catalog("gen_koebe", 40, std::vector<double>{0.5});
    const Series f = solve_coefficients(catalog("halfplane", 40), g, p2, 40);
    EXPECT_NEAR(std::abs(f[2] - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f[3] - 1.0), 0.0, 1e-14);
    EXPECT_LE(max_abs_difference(class_ratio(f, g, p2), catalog("halfplane", 39)), 1e-10);
}

TEST(Classes, CertifyPositiveRealExamples) {
    const DiskGrid grid = default_grid();
    const auto one = certify_positive_real(Series::constant(1.0, 8), grid);
    EXPECT_TRUE(one.pass);
    EXPECT_NEAR(one.margin, 1.0, 1e-15);

    const auto hp = certify_positive_real(catalog("halfplane", kCertificationOrder), grid);
    EXPECT_TRUE(hp.pass);
    EXPECT_NEAR(hp.margin, 0.01 / 1.99, 1e-6);

    const auto bad = certify_positive_real(padded({1, 3}), grid);
    EXPECT_FALSE(bad.pass);
    EXPECT_NEAR(bad.margin, 1.0 - 3.0 * 0.99, 1e-12);
    EXPECT_NEAR(std::abs(bad.witness - Complex(-0.99, 0.0)), 0.0, 1e-12);

    EXPECT_THROW((void)certify_positive_real(padded({2, 1}), grid), InvariantViolation);
}

TEST(Classes, CertifyStarlikeOrderExamples) {
    const DiskGrid grid = default_grid();
    for (const double alpha : {0.0, 0.5, 0.99}) {
        EXPECT_TRUE(certify_starlike_order(padded({0, 1}), alpha, grid).pass);
    }
    const Series k = catalog("koebe", kCertificationOrder);
    EXPECT_TRUE(certify_starlike_order(k, 0.0, grid).pass);
    const auto half = certify_starlike_order(k, 0.5, grid);
    EXPECT_FALSE(half.pass);
    EXPECT_NEAR(half.margin, 0.01 / 1.99 - 0.5, 1e-6);

    EXPECT_TRUE(certify_starlike_order(catalog("s_star_half_example", 64), 0.5, grid).pass);
    EXPECT_THROW((void)certify_starlike_order(k, 1.0, grid), InvariantViolation);
}

TEST(Classes, CertifySubordinateMoebiusExamples) {
    const DiskGrid grid = default_grid();
    for (const MoebiusTarget t : {MoebiusTarget{1, -1}, MoebiusTarget{0.5, -0.5}, MoebiusTarget{0.2, 0.1}}) {
        EXPECT_TRUE(certify_subordinate_moebius(Series::constant(1.0, 8), t, grid).pass);
    }
    const Series hp = catalog("halfplane", kCertificationOrder);
    const auto self = certify_subordinate_moebius(hp, kHalfplane, grid);
    EXPECT_TRUE(self.pass);
    // |Phi - 1| / |A - B Phi| = |z|, so the margin on |z| = 0.99 is
    // min (|2/(1-z)| - |2z/(1-z)|) = 2 (1 - r)/(1 + r).
    EXPECT_NEAR(self.margin, 2.0 * 0.01 / 1.99, 1e-6);
    EXPECT_FALSE(certify_subordinate_moebius(hp, {0.5, -0.5}, grid).pass);
}

TEST(Classes, PrintedPlusSignRejectsSelfSubordination) {
    // With A = 1, B = -1 the sign-flipped criterion |Phi - 1| < |A + B Phi|
    // compares |Phi - 1| with itself and can never hold, so the half-plane
    // map would not be subordinate to itself. The library tests |A - B Phi|.
    for (const Complex z : {Complex(0.5, 0.0), Complex(-0.3, 0.6), Complex(0.0, 0.9)}) {
        const Complex phi = (1.0 + z) / (1.0 - z);
        EXPECT_FALSE(std::abs(phi - 1.0) < std::abs(1.0 + (-1.0) * phi));
        EXPECT_LT(std::abs(phi - 1.0), std::abs(1.0 - (-1.0) * phi));
    }
}

TEST(Classes, CertifySubordinateRegion) {
    // Right half-plane, Re w is 1-Lipschitz.
    const auto r = certify_subordinate_region(catalog("halfplane", kCertificationOrder),
                                              [](Complex w) { return w.real(); }, default_grid());
    EXPECT_TRUE(r.pass);
    const auto bad = certify_subordinate_region(padded({1, 3}), [](Complex w) { return w.real(); }, default_grid());
    EXPECT_FALSE(bad.pass);
}

TEST(Classes, CertifyMembershipExamples) {
    const DiskGrid grid = default_grid();
    const Series k = catalog("koebe", kCertificationOrder);
    const auto koebe = certify_membership(k, k, kPlain, kHalfplane, grid);
    EXPECT_TRUE(koebe.pass);
    EXPECT_EQ(koebe.checks.size(), 2u);

    for (int kk = 1; kk <= 4; ++kk) {
        EXPECT_TRUE(certify_membership(padded({0, 1, 0.5}), padded({0, 1}), {kk, 0.0, 0.0}, kHalfplane, grid).pass)
            << kk;
    }
    const auto bad = certify_membership(padded({0, 1, 2}), padded({0, 1}), kPlain, kHalfplane, grid);
    EXPECT_FALSE(bad.pass);
    // Phi = 1 + 4z leaves the half-plane first on |z| = 0.5 at z = -0.5.
    EXPECT_NEAR(std::abs(bad.witness - Complex(-0.5, 0.0)), 0.0, 1e-12);
}

TEST(Classes, ReportIsBoundByWorstCheck) {
    const DiskGrid grid = default_grid();
    const Series k = catalog("koebe", kCertificationOrder);
    // g = koebe fails S*(1/2) for k = 2, while Phi is fine.
    const auto r = certify_membership(padded({0, 1}), k, {2, 0.0, 0.0}, {0.9, -0.9}, grid);
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.checks.size(), 2u);
    EXPECT_FALSE(r.checks[0].passed);
    EXPECT_EQ(r.margin, std::min(r.checks[0].margin, r.checks[1].margin));
    const auto j = report_to_json(r);
    EXPECT_EQ(j["verdict"], "fail");
    EXPECT_EQ(j["semantics"], "sampled sub-disk certificate");
    EXPECT_EQ(j["checks"].size(), 2u);
    EXPECT_EQ(j["grid"], grid.label);
}

TEST(Classes, CertifyCloseToConvexExamples) {
    const DiskGrid grid = default_grid();
    EXPECT_TRUE(certify_close_to_convex(padded({0, 1}), padded({0, 1}), grid).pass);
    const Series k = catalog("koebe", kCertificationOrder);
    EXPECT_TRUE(certify_close_to_convex(k, k, grid).pass);

    const ClassParams p{2, 0.5, 0.0};
    const Series g = catalog("gen_koebe", kCertificationOrder, std::vector<double>{0.5});
    const auto member = synthesize_member({Complex(0.3, 0.1), Complex(0.0, 1.0)}, g, p, {0.8, -0.4}, 512);
    ASSERT_TRUE(certify_membership(member.f, g, p, member.target, grid).pass);
    const Series big_g = to_Gk(build_gk(g, p.k), p.k);
    EXPECT_TRUE(certify_close_to_convex(lambda_mu_transform(member.f, p), big_g, grid).pass);
}
