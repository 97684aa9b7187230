#pragma once

#include "mopo/dispersion.hpp"

#include <algorithm>
#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mopo {

using cplx = std::complex<double>;

/// How β(Ω) enters U_s and U_i: full dispersion, or Δt_A·Ω.
enum class PhaseModel { exact, linear };

const char* to_string(PhaseModel m);

/// sin(x)/x, by series for |x| < 1e-4.
double sinc(double x);

/// γ(Ω) = sqrt(g² + (D̄(Ω) l_c/2)²).
double gamma(const CrystalConfig& cfg, double offset);

/// Bogoliubov coefficients of the below-threshold input-output relation on a
/// symmetric frequency grid. The per-point auxiliaries (mismatch D̄ l_c/2, γ, β)
/// are kept so downstream observables need not re-evaluate the dispersion.
struct SpectralTable {
    std::vector<double> omega;  // rad/s offsets, sorted, symmetric about 0
    std::vector<cplx> us, vs, ui, vi;
    std::vector<double> mismatch;
    std::vector<double> gamma;
    std::vector<double> beta;
    double gain = 0.0;
    double pump_phase = 0.0;
    double signal_phase = 0.0;  // k_s l_c reduced to (-π, π]
    double idler_phase = 0.0;   // k_i l_c reduced to (-π, π]
    PhaseModel phase_model = PhaseModel::exact;
    std::string config_hash;

    std::size_t size() const noexcept { return omega.size(); }
    /// Index of -Ω for the point at index k.
    std::size_t mirror(std::size_t k) const noexcept { return omega.size() - 1 - k; }
};

/// True when the grid is strictly increasing and Ω_k = -Ω_{n-1-k} to 1e-12 relative.
bool is_symmetric_grid(std::span<const double> grid);

/// Fills U_s, V_s, U_i, V_i. Throws ThresholdError for g ≥ π/2 and
/// ConfigError for an asymmetric grid; dispersion range errors propagate.
SpectralTable gain_coefficients(const CrystalConfig& cfg, std::span<const double> grid,
                                PhaseModel phase = PhaseModel::exact);
SpectralTable gain_coefficients(const CrystalConfig& cfg, std::span<const double> grid, double pump_phase,
                                PhaseModel phase);

struct UnitarityReport {
    double norm_signal = 0.0;  // max |(|U_s|² - |V_s|²) - 1|
    double norm_idler = 0.0;   // max |(|U_i|² - |V_i|²) - 1|
    double cross = 0.0;        // max |U_s(Ω)V_i(-Ω) - U_i(-Ω)V_s(Ω)|

    double worst() const { return std::max({norm_signal, norm_idler, cross}); }
    bool ok(double tol) const { return worst() < tol; }
};

UnitarityReport check_unitarity(const SpectralTable& table);

/// Columns: Omega_rad_per_s, ReUs, ImUs, ReVs, ImVs, ReUi, ImUi, ReVi, ImVi.
void write_csv(const SpectralTable& table, const std::filesystem::path& path);

}  // namespace mopo
