#include "mopo/classical.hpp"
#include "mopo/csv.hpp"
#include "mopo/errors.hpp"
#include "support.hpp"

#include <boost/math/special_functions/ellint_rf.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mopo;

namespace {

constexpr double half_pi = std::numbers::pi / 2;

// Carlson form, independent of the quadrature under test.
double k_carlson(double eta) { return boost::math::ellint_rf(0.0, 1.0 - eta, 1.0); }

double efficiency_oracle(double g) {
    double lo = 0.0, hi = 1.0 - 1e-15;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (k_carlson(mid) < g ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(EllipticK, ZeroAndMonotone) {
    EXPECT_DOUBLE_EQ(elliptic_K(0.0), half_pi);
    EXPECT_GT(elliptic_K(0.5), elliptic_K(0.25));
    EXPECT_GT(elliptic_K(0.25), half_pi);
    double prev = half_pi;
    for (double eta = 0.05; eta < 1.0; eta += 0.05) {
        const double k = elliptic_K(eta);
        EXPECT_GT(k, prev);
        prev = k;
    }
}

TEST(EllipticK, AgainstCarlson) {
    EXPECT_NEAR(elliptic_K(0.9), k_carlson(0.9), 1e-10);
    EXPECT_NEAR(elliptic_K(0.9), 2.5780921133481733, 1e-10);
    for (double eta : {0.1, 0.5, 0.99, 0.999999, 1.0 - 1e-12}) EXPECT_NEAR(elliptic_K(eta) / k_carlson(eta), 1.0, 1e-11);
}

TEST(EllipticK, Domain) {
    EXPECT_THROW(elliptic_K(1.0), DomainError);
    EXPECT_THROW(elliptic_K(-0.1), DomainError);
    EXPECT_THROW(elliptic_K(std::nan("")), DomainError);
}

TEST(Efficiency, BelowAndAtThreshold) {
    EXPECT_EQ(efficiency(0.0), 0.0);
    EXPECT_EQ(efficiency(1.0), 0.0);
    EXPECT_EQ(efficiency(half_pi), 0.0);
    EXPECT_THROW(efficiency(-1.0), DomainError);
}

TEST(Efficiency, PinnedAtTwo) {
    EXPECT_NEAR(efficiency(2.0), efficiency_oracle(2.0), 1e-10);
    EXPECT_NEAR(efficiency(2.0), 0.643856219148, 1e-10);
}

TEST(Efficiency, MonotoneAndContinuous) {
    double prev = 0.0;
    for (double g = half_pi + 1e-6; g < 6.0; g += 0.05) {
        const double eta = efficiency(g);
        EXPECT_GT(eta, prev);
        EXPECT_LT(eta, 1.0);
        prev = eta;
    }
    EXPECT_LT(efficiency(half_pi + 1e-8), 1e-7);
    EXPECT_GT(efficiency(half_pi + 1e-8), 0.0);
    EXPECT_GT(efficiency(20.0), 0.999);
    EXPECT_LT(efficiency(40.0), 1.0);
}

TEST(Bvp, BelowThresholdHasNoSolution) {
    EXPECT_THROW(stationary_bvp(1.0), NoSolutionError);
    EXPECT_THROW(stationary_bvp(half_pi - 1e-3), NoSolutionError);
}

TEST(Bvp, AgreesWithEllipticRoute) {
    const MopoSolution s = stationary_bvp(2.0);
    EXPECT_NEAR(s.eta, efficiency(2.0), 1e-6);
    EXPECT_TRUE(s.warnings.empty());
}

TEST(Bvp, JustAboveThreshold) {
    const MopoSolution s = stationary_bvp(half_pi + 0.01);
    EXPECT_GT(s.eta, 0.0);
    EXPECT_LT(s.eta, 0.05);
    EXPECT_NEAR(s.eta, efficiency(half_pi + 0.01), 1e-6);
    for (double bp : s.beta_p) EXPECT_GT(bp, 0.97);
}

TEST(Bvp, BoundaryConditionsAndManleyRowe) {
    for (double g : {1.7, 2.2, 3.0}) {
        const MopoSolution s = stationary_bvp(g, 301, 4e-3);
        ASSERT_EQ(s.z.size(), 301u);
        EXPECT_DOUBLE_EQ(s.z.front(), 0.0);
        EXPECT_DOUBLE_EQ(s.z.back(), 4e-3);
        EXPECT_EQ(s.beta_s.front(), 0.0);
        EXPECT_EQ(s.beta_p.front(), 1.0);
        EXPECT_LT(std::abs(s.beta_i.back()), 1e-9);
        const double c1 = 1.0, c2 = 1.0 - s.beta_i.front() * s.beta_i.front();
        for (std::size_t k = 0; k < s.z.size(); ++k) {
            const double p2 = s.beta_p[k] * s.beta_p[k];
            EXPECT_NEAR(p2 + s.beta_s[k] * s.beta_s[k], c1, 1e-8);
            EXPECT_NEAR(p2 - s.beta_i[k] * s.beta_i[k], c2, 1e-8);
        }
    }
}

TEST(Bvp, RandomGainsMatchEllipticRoute) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> pick(half_pi + 1e-4, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double g = pick(rng);
        EXPECT_NEAR(stationary_bvp(g).eta, efficiency(g), 1e-6) << g;
    }
}

TEST(Bvp, ResidualSigns) {
    EXPECT_GT(shooting_residual(1.0, 0.01), 0.0);
    EXPECT_LT(shooting_residual(2.0, 0.01), 0.0);
    EXPECT_GT(shooting_residual(2.0, 1.0), 0.0);
}

TEST(Threshold, LocatesPiOverTwo) {
    const double thr = threshold_locate();
    EXPECT_NEAR(thr, half_pi, 1e-4);
    EXPECT_EQ(efficiency(thr - 1e-3), 0.0);
    EXPECT_GT(efficiency(thr + 1e-3), 0.0);
}

TEST(ClassicalCsv, Writers) {
    test::TempDir dir("classical");
    const std::vector<double> gains{0.0, 1.0, half_pi, 2.0};
    write_efficiency_csv(gains, dir.path() / "e.csv");
    const CsvTable e = read_csv(dir.path() / "e.csv");
    ASSERT_EQ(e.rows.size(), 4u);
    EXPECT_EQ(e.rows[2][e.column("eta")], 0.0);
    EXPECT_NEAR(e.rows[3][e.column("eta")], efficiency(2.0), 1e-15);

    write_profile_csv(stationary_bvp(2.0, 11), dir.path() / "p.csv");
    const CsvTable p = read_csv(dir.path() / "p.csv");
    EXPECT_EQ(p.schema, "mopo.profile/1");
    EXPECT_EQ(p.rows.back()[p.column("z_over_lc")], 1.0);
}
