#pragma once

#include "mopo/gain.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mopo {

enum class Approximation { exact, low_gain_sinc2, lorentzian };

const char* to_string(Approximation a);

/// Photon-number spectral density S(Ω) = |V_s(Ω)|² and, when requested, the
/// spectral correlation density ψ̄(Ω).
struct SpectrumResult {
    std::vector<double> omega;
    std::vector<double> s;
    std::vector<cplx> psi;  // empty unless filled by correlation_density
    Approximation approximation = Approximation::exact;
    double gain = 0.0;
    std::vector<std::string> warnings;
};

SpectrumResult spectrum_exact(const SpectralTable& table);

/// g² sinc²(Ω/Ω_gvs). Warns for g > 0.3.
SpectrumResult spectrum_lowgain(const CrystalConfig& cfg, std::span<const double> grid);

/// g² sin²g / (Ω²/Ω_gvs² + g² cos²g). Warns for π/2 - g > 0.3.
SpectrumResult spectrum_lorentzian(const CrystalConfig& cfg, std::span<const double> grid);

/// ψ̄(Ω) = g sinc γ(Ω) [1 + |V_s(Ω)|²]; S is filled alongside.
SpectrumResult correlation_density(const SpectralTable& table);

/// The two contributions to ψ̄ near threshold.
struct ThresholdTerms {
    std::vector<double> spontaneous;            // g sinc γ(Ω)
    std::vector<double> stimulated;             // g² sin³g / (Ω²/Ω_gvs² + g² cos²g)
    std::vector<double> stimulated_unreplaced;  // g sinc γ(Ω) · g² sin²g / (Ω²/Ω_gvs² + g² cos²g)
    /// max |stimulated - stimulated_unreplaced| / max stimulated.
    double replacement_deviation = 0.0;
};

ThresholdTerms correlation_threshold_terms(const SpectralTable& table, const DerivedScales& scales);

/// Half width at half maximum by linear interpolation between the bracketing
/// samples on each side of the maximum, averaged over both sides. Throws
/// ExtractionError when the peak sits on the boundary or a side never drops
/// below half maximum.
double hwhm(std::span<const double> x, std::span<const double> y);
double hwhm(const SpectrumResult& result);

/// Columns: Omega_over_Omega_gvs, S_exact, S_approx, Re_psi, Im_psi.
/// `approx` must share the grid of `exact`; ψ̄ columns are zero when absent.
void write_spectrum_csv(const SpectrumResult& exact, const SpectrumResult& approx, double omega_gvs,
                        const std::filesystem::path& path, const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace mopo
