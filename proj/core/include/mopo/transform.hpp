#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mopo {

/// Sign of the exponent in e^{±iΩt}.
enum class FourierSign { negative = -1, positive = +1 };

struct SampledFunction {
    std::vector<double> x;
    std::vector<std::complex<double>> y;
};

/// (1/2π) ∫ dΩ f(Ω) e^{±iΩ(t + t0)} on a uniform frequency grid with
/// trapezoid end weights, evaluated at t_m = m·2π/(N dΩ), m = -⌊N/2⌋ … ⌈N/2⌉-1.
/// The result is sorted by t. Throws ConfigError when the grid is not uniform.
SampledFunction to_time(std::span<const double> omega, std::span<const std::complex<double>> f, FourierSign sign,
                        double time_offset = 0.0);

/// Inverse of to_time: ∫ dt g(t) e^{∓iΩt} as a Riemann sum on the uniform time
/// grid, evaluated on Ω_k = omega0 + k·2π/(N dt).
SampledFunction to_frequency(std::span<const double> t, std::span<const std::complex<double>> g, FourierSign sign,
                             double omega0);

/// Largest relative deviation of the grid steps from their mean.
double grid_nonuniformity(std::span<const double> x);

}  // namespace mopo
