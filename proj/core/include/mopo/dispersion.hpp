#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mopo {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Wave { signal = 0, idler = 1, pump = 2 };

const char* to_string(Wave wave);

/// Refractive index of one polarization from a Sellmeier fit,
///   n^2(λ) = a + Σ_k b_k / (λ^2 - c_k) - ir λ^2,   λ in µm.
/// Evaluation outside [min_um, max_um] throws DomainError.
struct SellmeierIndex {
    double a = 1.0;
    std::vector<std::pair<double, double>> poles;  // (b_k, c_k)
    double ir = 0.0;
    double min_um = 0.0;
    double max_um = 0.0;

    double n(double wavelength_um) const;
    /// dn/dλ in 1/µm.
    double dn_dlambda(double wavelength_um) const;
};

/// Dispersion with fixed phase and group index around a reference wavelength:
///   k(ω) = ω_ref n / c + (ω - ω_ref) n_g / c.
/// Every higher derivative vanishes, which makes the linearized formulas exact.
struct LinearIndex {
    double reference_um = 1.0;
    double phase_index = 1.0;
    double group_index = 1.0;
    double min_um = 0.0;
    double max_um = 0.0;
};

using WaveIndex = std::variant<SellmeierIndex, LinearIndex>;

/// Per-wave refractive-index functions for one phase-matching type.
struct DispersionModel {
    std::string name;
    std::string version;
    std::string provenance;
    double temperature_c = 20.0;
    std::array<WaveIndex, 3> waves;               // indexed by Wave
    std::array<std::string, 3> polarization{"e", "e", "e"};

    const WaveIndex& index(Wave wave) const { return waves[static_cast<int>(wave)]; }

    /// Wavenumber k(ω) in 1/m at absolute angular frequency ω (rad/s).
    double k(Wave wave, double omega) const;
    /// dk/dω = 1/v_g in s/m.
    double k_prime(Wave wave, double omega) const;
    /// Phase index n(λ) (dimensionless) at vacuum wavelength λ (m).
    double refractive_index(Wave wave, double wavelength_m) const;

    /// Same linear law on all three waves: constant group velocities.
    static DispersionModel toy_linear(double phase_index_s, double group_index_s, double phase_index_i,
                                      double group_index_i, double phase_index_p, double group_index_p,
                                      double lambda_s_m, double lambda_i_m, double lambda_p_m);
    /// n ≡ const for every wave and wavelength.
    static DispersionModel constant_index(double n_s, double n_i, double n_p);
};

/// Crystal geometry, central wavelengths and gain. All lengths in metres.
struct CrystalConfig {
    double length = 0.0;         // l_c
    double poling_period = 0.0;  // Λ
    double lambda_p = 0.0;
    double lambda_s = 0.0;
    double lambda_i = 0.0;
    double gain = 0.0;           // g
    double pump_phase = 0.0;     // φ_p
    DispersionModel dispersion;

    double omega_p() const { return two_pi * speed_of_light / lambda_p; }
    double omega_s() const { return two_pi * speed_of_light / lambda_s; }
    double omega_i() const { return omega_p() - omega_s(); }
    double omega(Wave wave) const;
    double k_grating() const { return two_pi / poling_period; }

    /// Builds a config from λ_p and λ_s; λ_i follows from energy conservation and
    /// Λ from exact quasi-phase matching unless `poling_period` is given.
    static CrystalConfig make(double length, double lambda_p, double lambda_s, double gain,
                              DispersionModel dispersion, std::optional<double> poling_period = {});

    /// Throws ConfigError when a structural invariant is broken.
    void validate() const;
    /// Additionally requires 0 ≤ g < π/2; throws ThresholdError otherwise.
    void validate_below_threshold() const;

    /// Stable digest of every physical input, for table provenance.
    std::string hash() const;
};

struct DerivedScales {
    double v_gs = 0.0;
    double v_gi = 0.0;
    double v_gp = 0.0;
    double tau_gvs = 0.0;    // (l_c/v_gs + l_c/v_gi)/2
    double omega_gvs = 0.0;  // 1/τ_gvs
    double delta_t_a = 0.0;  // (l_c/v_gs - l_c/v_gi)/2
    double k_grating = 0.0;
    /// |Δt_A| < τ_gvs, else the linear-phase regime is questionable.
    bool delta_t_a_small = true;
};

/// k_j(Ω) = k(ω_j + Ω).
double wavenumber(const CrystalConfig& cfg, Wave wave, double offset);

/// Dimensionless D̄(Ω) l_c / 2 with D̄(Ω) = k_s(Ω) - k_i(-Ω) - k_p + k_G.
double phase_mismatch(const CrystalConfig& cfg, double offset);

/// Linear-phase β(Ω) = [k_s(Ω) + k_i(-Ω) - (k_s + k_i)] l_c / 2.
double propagation_phase(const CrystalConfig& cfg, double offset);

/// Λ = 2π / (k_p + k_i - k_s) for a counterpropagating idler.
double poling_period_for_qpm(const DispersionModel& model, double lambda_p, double lambda_s);

DerivedScales derived_scales(const CrystalConfig& cfg);

/// Group velocity from a central difference of k(ω) with relative step `rel_step`.
double group_velocity_fd(const CrystalConfig& cfg, Wave wave, double rel_step = 1e-6);

}  // namespace mopo
