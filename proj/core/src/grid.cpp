#include "mopo/grid.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mopo {

std::vector<double> uniform_grid(double omega_max, double step) {
    if (!(omega_max > 0.0) || !(step > 0.0)) throw ConfigError("grid needs positive half-width and step");
    const auto half = static_cast<std::size_t>(std::ceil(omega_max / step - 1e-9));
    std::vector<double> grid(2 * half + 1);
    for (std::size_t k = 0; k < grid.size(); ++k)
        grid[k] = (static_cast<double>(k) - static_cast<double>(half)) * step;
    return grid;
}

std::vector<double> uniform_grid_points(double omega_max, std::size_t points) {
    if (points < 3) throw ConfigError("grid needs at least 3 points");
    const std::size_t half = points / 2;
    const double step = omega_max / static_cast<double>(half);
    std::vector<double> grid(2 * half + 1);
    for (std::size_t k = 0; k < grid.size(); ++k)
        grid[k] = (static_cast<double>(k) - static_cast<double>(half)) * step;
    return grid;
}

std::vector<double> two_scale_grid(double broad_max, std::size_t broad_points, double dense_half_width,
                                   std::size_t dense_points) {
    if (!(dense_half_width < broad_max)) return uniform_grid_points(broad_max, broad_points);
    auto broad = uniform_grid_points(broad_max, broad_points);
    auto dense = uniform_grid_points(dense_half_width, dense_points);
    const double broad_step = broad[1] - broad[0];
    std::vector<double> grid;
    grid.reserve(broad.size() + dense.size());
    for (double w : broad)
        if (std::abs(w) > dense_half_width + 0.5 * broad_step) grid.push_back(w);
    grid.insert(grid.end(), dense.begin(), dense.end());
    std::sort(grid.begin(), grid.end());
    return grid;
}

double lorentzian_width(const DerivedScales& scales, double gain) {
    return scales.omega_gvs * gain * std::cos(gain);
}

std::vector<double> transform_grid(const DerivedScales& scales, double gain, const TransformGridOptions& opts) {
    double span = opts.span_low_gain * scales.tau_gvs;
    // The exponential tail matters only on the near-threshold side; at low gain
    // the correlations are compact (width 2τ_gvs) whatever g cos g is.
    const double rate = gain * std::cos(gain);
    if (gain > 1.0 && rate > 0.0) span = std::max(span, opts.span_correlation * scales.tau_gvs / rate);
    const double step = std::numbers::pi / span;
    const double omega_max = opts.omega_max_gvs * scales.omega_gvs;
    const double points = 2.0 * std::ceil(omega_max / step) + 1.0;
    if (!(points <= static_cast<double>(opts.max_points)))
        throw ResolutionError("transform grid needs " + format_number(points) + " points, above the cap of " +
                                  std::to_string(opts.max_points) + "; reduce omega_max or move away from threshold",
                              static_cast<std::size_t>(std::min(points, 1e18)));
    return uniform_grid(omega_max, step);
}

std::vector<double> spectrum_grid(const DerivedScales& scales, double gain, double span_gvs, std::size_t points) {
    const double broad = span_gvs * scales.omega_gvs;
    const double width = lorentzian_width(scales, gain);
    if (gain > 1.0 && 20.0 * width < broad) return two_scale_grid(broad, points, 20.0 * width, 4001);
    return uniform_grid_points(broad, points);
}

}  // namespace mopo
