#include "mopo/config.hpp"
#include "mopo/dispersion.hpp"
#include "mopo/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mopo;
using mopo::test::ktp;
using mopo::test::toy;

namespace {

// Kato n_z evaluated by hand.
double kato_nz(double l) {
    const double l2 = l * l;
    return std::sqrt(4.59423 + 0.06206 / (l2 - 0.04763) + 110.80672 / (l2 - 86.12171));
}

}  // namespace

TEST(Sellmeier, MatchesHandEvaluation) {
    const CrystalConfig cfg = ktp(0.1);
    for (double l : {0.5, 0.8214, 1.141, 2.0, 2.932, 3.5}) {
        for (Wave w : {Wave::signal, Wave::idler, Wave::pump})
            EXPECT_NEAR(cfg.dispersion.refractive_index(w, l * 1e-6), kato_nz(l), 1e-14) << l;
    }
}

TEST(Sellmeier, DerivativeMatchesFiniteDifference) {
    const auto& idx = std::get<SellmeierIndex>(ktp(0.1).dispersion.index(Wave::signal));
    for (double l : {0.6, 1.141, 2.9}) {
        const double h = 1e-5;
        const double fd = (idx.n(l + h) - idx.n(l - h)) / (2 * h);
        EXPECT_NEAR(idx.dn_dlambda(l), fd, 1e-8);
    }
}

TEST(Sellmeier, OutOfRangeNamesTheWave) {
    const CrystalConfig cfg = ktp(0.1);
    try {
        (void)cfg.dispersion.k(Wave::idler, two_pi * speed_of_light / 4.0e-6);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("idler"), std::string::npos) << e.what();
    }
}

TEST(Crystal, EnergyConservationAndQpm) {
    const CrystalConfig cfg = ktp(0.1);
    EXPECT_NEAR(cfg.omega_p(), cfg.omega_s() + cfg.omega_i(), 1e-6 * cfg.omega_p());
    EXPECT_NEAR(cfg.lambda_i * 1e6, 1.0 / (1.0 / 0.8214 - 1.0 / 1.141), 1e-9);
    EXPECT_NEAR(phase_mismatch(cfg, 0.0), 0.0, 1e-9);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Crystal, KtpScalesPinned) {
    // Values from an independent numpy evaluation of the same Sellmeier set.
    const CrystalConfig cfg = ktp(0.1);
    const DerivedScales sc = derived_scales(cfg);
    EXPECT_NEAR(cfg.poling_period * 1e6, 0.80005, 5e-5);
    EXPECT_NEAR(speed_of_light / sc.v_gs, 1.8659, 1e-4);
    EXPECT_NEAR(speed_of_light / sc.v_gi, 1.8742, 1e-4);
    EXPECT_NEAR(sc.tau_gvs * 1e12, 24.951, 1e-3);
    EXPECT_NEAR(sc.delta_t_a * 1e12, -0.0550, 1e-4);
    EXPECT_TRUE(sc.delta_t_a_small);
}

TEST(Crystal, GroupVelocityAnalyticVsFiniteDifference) {
    const CrystalConfig cfg = ktp(0.1);
    const DerivedScales sc = derived_scales(cfg);
    EXPECT_NEAR(group_velocity_fd(cfg, Wave::signal) / sc.v_gs, 1.0, 1e-8);
    EXPECT_NEAR(group_velocity_fd(cfg, Wave::idler) / sc.v_gi, 1.0, 1e-8);
    EXPECT_NEAR(group_velocity_fd(cfg, Wave::pump) / sc.v_gp, 1.0, 1e-8);
}

TEST(Crystal, LinearModelIsExactlyLinear) {
    const CrystalConfig cfg = toy(0.1);
    const DerivedScales sc = derived_scales(cfg);
    EXPECT_NEAR(sc.tau_gvs, cfg.length * (1.8659 + 1.8742) / (2 * speed_of_light), 1e-24);
    EXPECT_NEAR(sc.delta_t_a, cfg.length * (1.8659 - 1.8742) / (2 * speed_of_light), 1e-24);
    for (double x : {-3.0, -0.5, 0.7, 5.0}) {
        const double omega = x * sc.omega_gvs;
        EXPECT_NEAR(phase_mismatch(cfg, omega), x, 1e-6) << x;
        EXPECT_NEAR(propagation_phase(cfg, omega), sc.delta_t_a * omega, 1e-6) << x;
    }
}

TEST(Crystal, ConstantIndexHasNoWalkOff) {
    const auto model = DispersionModel::constant_index(1.8, 1.8, 1.8);
    const CrystalConfig cfg = CrystalConfig::make(4e-3, 821.4e-9, 1141e-9, 0.1, model);
    EXPECT_NEAR(derived_scales(cfg).delta_t_a, 0.0, 1e-25);
}

TEST(Crystal, ThresholdGuard) {
    EXPECT_NO_THROW(ktp(1.5).validate_below_threshold());
    EXPECT_THROW(ktp(1.6).validate_below_threshold(), ThresholdError);
    EXPECT_THROW(ktp(-0.1).validate_below_threshold(), Error);
}

TEST(Crystal, HashTracksInputs) {
    EXPECT_EQ(ktp(0.1).hash(), ktp(0.1).hash());
    EXPECT_NE(ktp(0.1).hash(), ktp(0.2).hash());
}

TEST(Config, ResolvesToSi) {
    const CrystalConfig cfg = ktp(0.1);
    EXPECT_DOUBLE_EQ(cfg.length, 4e-3);
    EXPECT_NEAR(cfg.lambda_p, 821.4e-9, 1e-18);
    EXPECT_NEAR(cfg.lambda_s, 1141e-9, 1e-18);
    EXPECT_EQ(cfg.dispersion.name, "ktp-z-kato2002");
}

TEST(Config, ExplicitPolingPeriod) {
    const auto f = parse_crystal_config("length_mm = 4\nlambda_p_nm = 821.4\nlambda_s_nm = 1141\ngain = 0.1\n"
                                        "poling_period_nm = 810\ndispersion_set = ktp_z_kato2002.ini\n",
                                        test::data_dir / "dispersion");
    const CrystalConfig cfg = resolve(f);
    EXPECT_NEAR(cfg.poling_period, 810e-9, 1e-18);
    EXPECT_GT(std::abs(phase_mismatch(cfg, 0.0)), 1.0);
}

TEST(Config, MissingAndMalformedKeys) {
    EXPECT_THROW(parse_crystal_config("length_mm = 4\nlambda_p_nm = 821.4\nlambda_s_nm = 1141\n"
                                      "dispersion_set = x.ini\n"),
                 ConfigError);
    EXPECT_THROW(parse_crystal_config("length_mm = four\nlambda_p_nm = 821.4\nlambda_s_nm = 1141\ngain = 0.1\n"
                                      "dispersion_set = x.ini\n"),
                 ConfigError);
    EXPECT_THROW(read_crystal_config("/nonexistent/config.ini"), ConfigError);
}

TEST(Config, DispersionSetErrors) {
    const std::string good_meta = "[meta]\nname = t\n";
    const std::string wave = "form = linear\nreference_um = 1\nphase_index = 1.8\ngroup_index = 1.9\nrange_um = 0.2, 5\n";
    EXPECT_NO_THROW(parse_dispersion_set(good_meta + "[signal]\n" + wave + "[idler]\n" + wave + "[pump]\n" + wave));
    EXPECT_THROW(parse_dispersion_set(good_meta + "[signal]\n" + wave + "[idler]\n" + wave), ConfigError);
    EXPECT_THROW(parse_dispersion_set("[meta]\n[signal]\n" + wave + "[idler]\n" + wave + "[pump]\n" + wave),
                 ConfigError);
    const std::string bad = "form = cubic\nrange_um = 0.2, 5\n";
    EXPECT_THROW(parse_dispersion_set(good_meta + "[signal]\n" + bad + "[idler]\n" + wave + "[pump]\n" + wave),
                 ConfigError);
    const std::string odd = "form = sellmeier\ncoefficients = 1, 2\nrange_um = 0.2, 5\n";
    EXPECT_THROW(parse_dispersion_set(good_meta + "[signal]\n" + odd + "[idler]\n" + wave + "[pump]\n" + wave),
                 ConfigError);
}

TEST(Config, RangeViolationSurfacesAtLoad) {
    test::TempDir dir("disp");
    dir.write("narrow.ini",
              "[meta]\nname = narrow\n"
              "[signal]\nform = sellmeier\ncoefficients = 4.59423, 0.06206, 0.04763, 110.80672, 86.12171\n"
              "range_um = 0.43, 2.0\n"
              "[idler]\nform = sellmeier\ncoefficients = 4.59423, 0.06206, 0.04763, 110.80672, 86.12171\n"
              "range_um = 0.43, 2.0\n"
              "[pump]\nform = sellmeier\ncoefficients = 4.59423, 0.06206, 0.04763, 110.80672, 86.12171\n"
              "range_um = 0.43, 2.0\n");
    const auto cfg = dir.write("c.ini", "length_mm = 4\nlambda_p_nm = 821.4\nlambda_s_nm = 1141\ngain = 0.1\n"
                                        "dispersion_set = narrow.ini\n");
    EXPECT_THROW(load_crystal_config(cfg), DomainError);
}
