#pragma once

#include "mopo/dispersion.hpp"

#include <cstddef>
#include <vector>

namespace mopo {

/// Uniform grid Ω_k = (k - h)·step, k = 0..2h, with h = ceil(omega_max/step).
std::vector<double> uniform_grid(double omega_max, double step);

/// Uniform symmetric grid with `points` samples (rounded up to odd) on [-omega_max, omega_max].
std::vector<double> uniform_grid_points(double omega_max, std::size_t points);

/// Broad uniform grid with its points inside |Ω| < dense_half_width replaced by a
/// finer uniform grid. Symmetric, sorted, non-uniform.
std::vector<double> two_scale_grid(double broad_max, std::size_t broad_points, double dense_half_width,
                                   std::size_t dense_points);

struct TransformGridOptions {
    double span_low_gain = 16.0;     // time span ≥ this × τ_gvs
    double span_correlation = 8.0;   // time span ≥ this × τ_gvs/(g cos g), for g > 1
    double omega_max_gvs = 256.0;    // grid half-width in units of Ω_gvs
    std::size_t max_points = std::size_t{1} << 22;
};

/// Uniform grid for Fourier transforms: step ≤ π/span with
/// span = 16 τ_gvs, or max(16 τ_gvs, 8 τ_gvs/(g cos g)) for g > 1. Throws ResolutionError past max_points.
std::vector<double> transform_grid(const DerivedScales& scales, double gain, const TransformGridOptions& opts = {});

/// Spectrum grid: ±8 Ω_gvs with 2^14 + 1 points; for g > 1 a dense window of
/// ±20 ΔΩ_L (ΔΩ_L = Ω_gvs g cos g) is merged in.
std::vector<double> spectrum_grid(const DerivedScales& scales, double gain, double span_gvs = 8.0,
                                  std::size_t points = (std::size_t{1} << 14) + 1);

/// Ω_gvs · g cos g, the Lorentzian half width near threshold.
double lorentzian_width(const DerivedScales& scales, double gain);

}  // namespace mopo
