#include "mopo/classical.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace mopo {

namespace {

using State = std::array<double, 3>;  // β_s, β_i, β_p

constexpr double ode_abs_tol = 1e-16;
constexpr double ode_rel_tol = 1e-13;
constexpr double b_min = 1e-6;
constexpr std::size_t scan_points = 160;

struct Rhs {
    double kappa;
    void operator()(const State& x, State& dx, double) const {
        dx[0] = kappa * x[2] * x[1];
        dx[1] = -kappa * x[2] * x[0];
        dx[2] = -kappa * x[0] * x[1];
    }
};

auto stepper() {
    using namespace boost::numeric::odeint;
    return make_dense_output(ode_abs_tol, ode_rel_tol, runge_kutta_dopri5<State>{});
}

State integrate_to(double g, double b, double length) {
    State x{0.0, b, 1.0};
    boost::numeric::odeint::integrate_adaptive(stepper(), Rhs{g / length}, x, 0.0, length, length / 64.0);
    return x;
}

// Residual divided by b: same sign, but O(1) near b → 0.
double scaled_residual(double g, double b) { return integrate_to(g, b, 1.0)[1] / b; }

std::vector<double> scan_grid() {
    std::vector<double> b(scan_points);
    const double lo = std::log(b_min);
    for (std::size_t k = 0; k < scan_points; ++k)
        b[k] = std::exp(lo * (1.0 - static_cast<double>(k) / static_cast<double>(scan_points - 1)));
    return b;
}

}  // namespace

double elliptic_K(double eta) {
    if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("elliptic_K: eta must lie in [0, 1), got " + format_number(eta));
    const double q = 1.0 - eta;
    auto f = [q](double th) {
        const double s = std::sin(th), c = std::cos(th);
        return 1.0 / std::sqrt(c * c + q * s * s);
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2.0, 15, 1e-14);
}

double efficiency(double g) {
    if (!(g >= 0.0)) throw DomainError("efficiency: g must be non-negative");
    if (g <= std::numbers::pi / 2.0) return 0.0;
    double gap = 0.5;
    while (elliptic_K(1.0 - gap) < g) {
        gap *= 0.25;
        // K ≈ ln(4/sqrt(1-η)) once 1-η is below double resolution near 1
        if (gap < 4.0 * std::numeric_limits<double>::epsilon())
            return std::min(1.0 - 16.0 * std::exp(-2.0 * g), std::nextafter(1.0, 0.0));
    }
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve([g](double eta) { return elliptic_K(eta) - g; }, 0.0, 1.0 - gap,
                                                    [](double x, double y) { return std::abs(x - y) < 1e-13; }, iters);
    return 0.5 * (a + b);
}

double shooting_residual(double g, double b) { return integrate_to(g, b, 1.0)[1]; }

MopoSolution stationary_bvp(double g, std::size_t z_points, double length) {
    if (z_points < 2) throw ConfigError("stationary_bvp needs at least 2 z points");
    if (!(length > 0.0)) throw ConfigError("stationary_bvp needs a positive length");

    const std::vector<double> bs = scan_grid();
    std::vector<double> r(bs.size());
    for (std::size_t k = 0; k < bs.size(); ++k) r[k] = scaled_residual(g, bs[k]);

    std::vector<std::size_t> brackets;
    for (std::size_t k = 0; k + 1 < bs.size(); ++k)
        if ((r[k] < 0.0) != (r[k + 1] < 0.0)) brackets.push_back(k);
    if (brackets.empty())
        throw NoSolutionError("no nontrivial stationary solution for g=" + format_number(g) +
                              " (shooting residual keeps its sign on (0, 1])");

    MopoSolution sol;
    sol.gain = g;
    if (brackets.size() > 1)
        sol.warnings.push_back("shooting residual has " + std::to_string(brackets.size()) +
                               " roots; the smallest is used");

    const std::size_t k = brackets.front();
    std::uintmax_t iters = 200;
    auto [lo, hi] = boost::math::tools::toms748_solve([g](double b) { return scaled_residual(g, b); }, bs[k], bs[k + 1],
                                                      r[k], r[k + 1],
                                                      [](double x, double y) { return std::abs(x - y) < 1e-15; }, iters);
    const double b = 0.5 * (lo + hi);
    sol.shooting_parameter = b;

    sol.z.resize(z_points);
    for (std::size_t j = 0; j < z_points; ++j)
        sol.z[j] = length * static_cast<double>(j) / static_cast<double>(z_points - 1);
    sol.beta_s.reserve(z_points);
    sol.beta_i.reserve(z_points);
    sol.beta_p.reserve(z_points);
    State x{0.0, b, 1.0};
    boost::numeric::odeint::integrate_times(stepper(), Rhs{g / length}, x, sol.z.begin(), sol.z.end(), length / 64.0,
                                            [&](const State& s, double) {
                                                sol.beta_s.push_back(s[0]);
                                                sol.beta_i.push_back(s[1]);
                                                sol.beta_p.push_back(s[2]);
                                            });
    sol.residual = sol.beta_i.back();
    sol.eta = 1.0 - sol.beta_p.back() * sol.beta_p.back();
    return sol;
}

double threshold_locate(double tolerance) {
    auto exists = [](double g) { return scaled_residual(g, b_min) < 0.0; };
    double lo = 1.0, hi = 2.5;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (exists(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

void write_efficiency_csv(std::span<const double> gains, const std::filesystem::path& path,
                          const std::vector<std::pair<std::string, std::string>>& meta) {
    CsvWriter csv(path, "mopo.efficiency/1", meta, {"g", "eta"});
    for (double g : gains) csv.row({g, efficiency(g)});
}

void write_profile_csv(const MopoSolution& sol, const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& meta) {
    auto metadata = meta;
    metadata.emplace_back("g", format_number(sol.gain));
    metadata.emplace_back("eta", format_number(sol.eta));
    metadata.emplace_back("beta_i0", format_number(sol.shooting_parameter));
    CsvWriter csv(path, "mopo.profile/1", metadata, {"z_over_lc", "beta_s", "beta_i", "beta_p"});
    const double length = sol.z.back();
    for (std::size_t j = 0; j < sol.z.size(); ++j)
        csv.row({sol.z[j] / length, sol.beta_s[j], sol.beta_i[j], sol.beta_p[j]});
}

}  // namespace mopo
