#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mopo {

/// Stationary above-threshold field profiles. Fields are real with the pump
/// phase set to zero and β_p(0) = 1.
struct MopoSolution {
    std::vector<double> z;  // [0, length]
    std::vector<double> beta_s, beta_i, beta_p;
    double gain = 0.0;
    double eta = 0.0;
    double shooting_parameter = 0.0;  // β_i(0)
    double residual = 0.0;            // β_i(l_c) after the solve
    std::vector<std::string> warnings;
};

/// K(η) = ∫₀^{π/2} dθ / sqrt(1 - η sin²θ) by adaptive Gauss-Kronrod.
/// Throws DomainError outside 0 ≤ η < 1.
double elliptic_K(double eta);

/// Conversion efficiency: 0 for g ≤ π/2, otherwise the root of K(η) = g (to 1e-10).
/// Throws DomainError for g < 0.
double efficiency(double g);

/// Shooting residual β_i(l_c) for a trial β_i(0) = b, with β_s(0) = 0, β_p(0) = 1.
double shooting_residual(double g, double b);

/// Solves dβ_s/dz = κβ_pβ_i, dβ_i/dz = -κβ_pβ_s, dβ_p/dz = -κβ_sβ_i (κ = g/l_c)
/// with β_s(0) = 0, β_p(0) = 1 and β_i(l_c) = 0 by shooting on β_i(0) ∈ (0, 1).
/// Throws NoSolutionError when the residual has no sign change in the bracket.
MopoSolution stationary_bvp(double g, std::size_t z_points = 201, double length = 1.0);

/// Threshold gain from bisection on the existence of a nontrivial shooting solution.
double threshold_locate(double tolerance = 1e-8);

/// Columns: g, eta.
void write_efficiency_csv(std::span<const double> gains, const std::filesystem::path& path,
                          const std::vector<std::pair<std::string, std::string>>& meta = {});

/// Columns: z_over_lc, beta_s, beta_i, beta_p.
void write_profile_csv(const MopoSolution& sol, const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace mopo
