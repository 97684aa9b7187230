#include "mopo/errors.hpp"
#include "mopo/grid.hpp"
#include "mopo/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace mopo;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> gaussian(const std::vector<double>& w, double centre = 0.0) {
    std::vector<cplx> f(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) f[k] = std::exp(-0.5 * (w[k] - centre) * (w[k] - centre));
    return f;
}

}  // namespace

TEST(Transform, GaussianBothSigns) {
    const auto w = uniform_grid_points(20.0, 2001);
    const auto f = gaussian(w, 1.0);
    for (auto sign : {FourierSign::negative, FourierSign::positive}) {
        const auto r = to_time(w, f, sign);
        const double s = static_cast<double>(sign);
        for (std::size_t j = 0; j < r.x.size(); j += 37) {
            const double t = r.x[j];
            const cplx expect = std::exp(-0.5 * t * t) * std::polar(1.0, s * t) / std::sqrt(2 * std::numbers::pi);
            EXPECT_NEAR(std::abs(r.y[j] - expect), 0.0, 1e-12) << t;
        }
    }
}

TEST(Transform, TimeGridLayout) {
    const auto w = uniform_grid_points(10.0, 101);
    const auto r = to_time(w, gaussian(w), FourierSign::negative);
    const double dw = w[1] - w[0];
    EXPECT_NEAR(r.x[1] - r.x[0], 2 * std::numbers::pi / (101 * dw), 1e-12);
    EXPECT_DOUBLE_EQ(r.x[50], 0.0);
    EXPECT_TRUE(std::is_sorted(r.x.begin(), r.x.end()));
}

TEST(Transform, OffsetShiftsExactly) {
    const auto w = uniform_grid_points(20.0, 1001);
    const auto f = gaussian(w);
    const double t0 = 0.37;
    const auto shifted = to_time(w, f, FourierSign::negative, t0);
    for (std::size_t j = 0; j < shifted.x.size(); j += 11) {
        const double t = shifted.x[j] + t0;
        EXPECT_NEAR(shifted.y[j].real(), std::exp(-0.5 * t * t) / std::sqrt(2 * std::numbers::pi), 1e-12);
        EXPECT_NEAR(shifted.y[j].imag(), 0.0, 1e-12);
    }
}

TEST(Transform, RoundTrip) {
    const auto w = uniform_grid_points(15.0, 777);
    const auto f = gaussian(w, -2.0);
    for (auto sign : {FourierSign::negative, FourierSign::positive}) {
        const auto t = to_time(w, f, sign);
        const auto back = to_frequency(t.x, t.y, sign, w.front());
        ASSERT_EQ(back.x.size(), w.size());
        for (std::size_t k = 1; k + 1 < w.size(); ++k) {
            EXPECT_NEAR(back.x[k], w[k], 1e-9);
            EXPECT_NEAR(std::abs(back.y[k] - f[k]), 0.0, 1e-12);
        }
    }
}

TEST(Transform, RejectsBadGrids) {
    std::vector<double> w{-1.0, 0.0, 0.5, 1.5};
    std::vector<cplx> f(4, 1.0);
    EXPECT_THROW(to_time(w, f, FourierSign::negative), ConfigError);
    EXPECT_THROW(to_time(std::vector<double>{0.0}, std::vector<cplx>{1.0}, FourierSign::negative), ConfigError);
    EXPECT_THROW(to_time(uniform_grid_points(1.0, 5), f, FourierSign::negative), ConfigError);
    EXPECT_GT(grid_nonuniformity(w), 0.1);
    EXPECT_LT(grid_nonuniformity(uniform_grid_points(3.0, 1001)), 1e-9);
}

TEST(Grid, UniformAndTwoScale) {
    const auto u = uniform_grid(1.0, 0.3);
    EXPECT_EQ(u.size() % 2, 1u);
    EXPECT_DOUBLE_EQ(u[u.size() / 2], 0.0);
    EXPECT_GE(u.back(), 1.0);
    const auto two = two_scale_grid(10.0, 101, 1.0, 201);
    EXPECT_TRUE(std::is_sorted(two.begin(), two.end()));
    for (std::size_t k = 0; k < two.size(); ++k) EXPECT_NEAR(two[k], -two[two.size() - 1 - k], 1e-12);
    EXPECT_EQ(uniform_grid_points(1.0, 10).size(), 11u);
}

TEST(Grid, TransformGridCap) {
    DerivedScales sc;
    sc.tau_gvs = 1.0;
    sc.omega_gvs = 1.0;
    TransformGridOptions opts;
    opts.max_points = 1000;
    try {
        (void)transform_grid(sc, std::numbers::pi / 2 - 1e-3, opts);
        FAIL();
    } catch (const ResolutionError& e) {
        EXPECT_GT(e.suggested_points(), 1000u);
    }
    // low gain: the span does not grow with 1/(g cos g)
    EXPECT_LT(transform_grid(sc, 1e-6).size(), 3000u);
}
