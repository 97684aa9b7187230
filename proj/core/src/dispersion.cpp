#include "mopo/dispersion.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace mopo {

namespace {

constexpr double um_per_m = 1e6;

double wavelength_of(double omega) { return two_pi * speed_of_light / omega; }

[[noreturn]] void out_of_range(const char* what, double wavelength_um, double lo, double hi) {
    std::ostringstream msg;
    msg << what << " wavelength " << wavelength_um << " um outside validity range [" << lo << ", " << hi
        << "] um";
    throw DomainError(msg.str());
}

void check_range(Wave wave, double wavelength_um, double lo, double hi) {
    if (!(wavelength_um >= lo && wavelength_um <= hi)) out_of_range(to_string(wave), wavelength_um, lo, hi);
}

}  // namespace

const char* to_string(Wave wave) {
    switch (wave) {
        case Wave::signal: return "signal";
        case Wave::idler: return "idler";
        case Wave::pump: return "pump";
    }
    return "?";
}

double SellmeierIndex::n(double wavelength_um) const {
    double l2 = wavelength_um * wavelength_um;
    double n2 = a - ir * l2;
    for (const auto& [b, c] : poles) n2 += b / (l2 - c);
    if (!(n2 > 0.0)) throw DomainError("Sellmeier n^2 non-positive at " + format_number(wavelength_um) + " um");
    return std::sqrt(n2);
}

double SellmeierIndex::dn_dlambda(double wavelength_um) const {
    double l2 = wavelength_um * wavelength_um;
    double dn2 = -2.0 * ir * wavelength_um;
    for (const auto& [b, c] : poles) {
        double d = l2 - c;
        dn2 -= 2.0 * b * wavelength_um / (d * d);
    }
    return dn2 / (2.0 * n(wavelength_um));
}

double DispersionModel::k(Wave wave, double omega) const {
    const double lambda_um = wavelength_of(omega) * um_per_m;
    return std::visit(
        [&](const auto& idx) -> double {
            using T = std::decay_t<decltype(idx)>;
            check_range(wave, lambda_um, idx.min_um, idx.max_um);
            if constexpr (std::is_same_v<T, SellmeierIndex>) {
                return omega * idx.n(lambda_um) / speed_of_light;
            } else {
                const double omega_ref = two_pi * speed_of_light / (idx.reference_um / um_per_m);
                return (omega_ref * idx.phase_index + (omega - omega_ref) * idx.group_index) / speed_of_light;
            }
        },
        index(wave));
}

double DispersionModel::k_prime(Wave wave, double omega) const {
    const double lambda_um = wavelength_of(omega) * um_per_m;
    return std::visit(
        [&](const auto& idx) -> double {
            using T = std::decay_t<decltype(idx)>;
            check_range(wave, lambda_um, idx.min_um, idx.max_um);
            if constexpr (std::is_same_v<T, SellmeierIndex>) {
                // n_g = n - λ dn/dλ
                double ng = idx.n(lambda_um) - lambda_um * idx.dn_dlambda(lambda_um);
                return ng / speed_of_light;
            } else {
                return idx.group_index / speed_of_light;
            }
        },
        index(wave));
}

double DispersionModel::refractive_index(Wave wave, double wavelength_m) const {
    return k(wave, two_pi * speed_of_light / wavelength_m) * wavelength_m / two_pi;
}

DispersionModel DispersionModel::toy_linear(double phase_index_s, double group_index_s, double phase_index_i,
                                            double group_index_i, double phase_index_p, double group_index_p,
                                            double lambda_s_m, double lambda_i_m, double lambda_p_m) {
    DispersionModel m;
    m.name = "toy-linear";
    m.version = "1";
    m.provenance = "constant group velocities, no higher-order dispersion";
    auto wave = [](double lambda_m, double n, double ng) {
        return LinearIndex{lambda_m * um_per_m, n, ng, 0.01, 1000.0};
    };
    m.waves = {wave(lambda_s_m, phase_index_s, group_index_s), wave(lambda_i_m, phase_index_i, group_index_i),
               wave(lambda_p_m, phase_index_p, group_index_p)};
    return m;
}

DispersionModel DispersionModel::constant_index(double n_s, double n_i, double n_p) {
    DispersionModel m;
    m.name = "constant-index";
    m.version = "1";
    m.provenance = "n independent of wavelength";
    auto wave = [](double n) { return SellmeierIndex{n * n, {}, 0.0, 0.01, 1000.0}; };
    m.waves = {wave(n_s), wave(n_i), wave(n_p)};
    return m;
}

double CrystalConfig::omega(Wave wave) const {
    switch (wave) {
        case Wave::signal: return omega_s();
        case Wave::idler: return omega_i();
        case Wave::pump: return omega_p();
    }
    return 0.0;
}

CrystalConfig CrystalConfig::make(double length, double lambda_p, double lambda_s, double gain,
                                  DispersionModel dispersion, std::optional<double> poling_period) {
    CrystalConfig cfg;
    cfg.length = length;
    cfg.lambda_p = lambda_p;
    cfg.lambda_s = lambda_s;
    if (!(lambda_s > lambda_p)) throw ConfigError("signal wavelength must exceed pump wavelength");
    cfg.lambda_i = 1.0 / (1.0 / lambda_p - 1.0 / lambda_s);
    cfg.gain = gain;
    cfg.dispersion = std::move(dispersion);
    cfg.poling_period = poling_period ? *poling_period
                                      : poling_period_for_qpm(cfg.dispersion, lambda_p, lambda_s);
    cfg.validate();
    return cfg;
}

void CrystalConfig::validate() const {
    if (!(length > 0.0)) throw ConfigError("crystal length must be positive");
    if (!(poling_period > 0.0)) throw ConfigError("poling period must be positive");
    if (!(lambda_p > 0.0 && lambda_s > 0.0 && lambda_i > 0.0)) throw ConfigError("wavelengths must be positive");
    double lhs = 1.0 / lambda_p;
    double rhs = 1.0 / lambda_s + 1.0 / lambda_i;
    if (std::abs(lhs - rhs) > 1e-9 * lhs) throw ConfigError("central wavelengths violate energy conservation");
    if (!(gain >= 0.0) || !std::isfinite(gain)) throw ConfigError("gain must be a finite non-negative number");
}

void CrystalConfig::validate_below_threshold() const {
    validate();
    if (!(gain < std::numbers::pi / 2.0))
        throw ThresholdError("gain g=" + format_number(gain) +
                             " is at or above the MOPO threshold pi/2; the linearized model diverges");
}

std::string CrystalConfig::hash() const {
    std::ostringstream s;
    s << format_number(length) << '|' << format_number(poling_period) << '|' << format_number(lambda_p) << '|'
      << format_number(lambda_s) << '|' << format_number(gain) << '|' << format_number(pump_phase) << '|'
      << dispersion.name << '|' << dispersion.version;
    for (const auto& w : dispersion.waves) {
        std::visit(
            [&](const auto& idx) {
                using T = std::decay_t<decltype(idx)>;
                if constexpr (std::is_same_v<T, SellmeierIndex>) {
                    s << "|S" << format_number(idx.a) << ',' << format_number(idx.ir);
                    for (const auto& [b, c] : idx.poles) s << ',' << format_number(b) << ',' << format_number(c);
                } else {
                    s << "|L" << format_number(idx.reference_um) << ',' << format_number(idx.phase_index) << ','
                      << format_number(idx.group_index);
                }
            },
            w);
    }
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s.str()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double wavenumber(const CrystalConfig& cfg, Wave wave, double offset) {
    return cfg.dispersion.k(wave, cfg.omega(wave) + offset);
}

double phase_mismatch(const CrystalConfig& cfg, double offset) {
    const double ks = wavenumber(cfg, Wave::signal, offset);
    const double ki = wavenumber(cfg, Wave::idler, -offset);
    const double kp = wavenumber(cfg, Wave::pump, 0.0);
    return ((ks - kp) + (cfg.k_grating() - ki)) * cfg.length / 2.0;
}

double propagation_phase(const CrystalConfig& cfg, double offset) {
    const double ks = wavenumber(cfg, Wave::signal, offset) - wavenumber(cfg, Wave::signal, 0.0);
    const double ki = wavenumber(cfg, Wave::idler, -offset) - wavenumber(cfg, Wave::idler, 0.0);
    return (ks + ki) * cfg.length / 2.0;
}

double poling_period_for_qpm(const DispersionModel& model, double lambda_p, double lambda_s) {
    if (!(lambda_s > lambda_p)) throw ConfigError("signal wavelength must exceed pump wavelength");
    const double lambda_i = 1.0 / (1.0 / lambda_p - 1.0 / lambda_s);
    const double kp = model.k(Wave::pump, two_pi * speed_of_light / lambda_p);
    const double ks = model.k(Wave::signal, two_pi * speed_of_light / lambda_s);
    const double ki = model.k(Wave::idler, two_pi * speed_of_light / lambda_i);
    const double kg = kp + ki - ks;
    if (!(kg > 0.0))
        throw ConfigError("k_p + k_i - k_s <= 0: no first-order counterpropagating quasi-phase matching");
    return two_pi / kg;
}

DerivedScales derived_scales(const CrystalConfig& cfg) {
    DerivedScales d;
    const double ks1 = cfg.dispersion.k_prime(Wave::signal, cfg.omega_s());
    const double ki1 = cfg.dispersion.k_prime(Wave::idler, cfg.omega_i());
    const double kp1 = cfg.dispersion.k_prime(Wave::pump, cfg.omega_p());
    if (!std::isfinite(ks1) || !std::isfinite(ki1) || !std::isfinite(kp1) || ks1 <= 0 || ki1 <= 0 || kp1 <= 0)
        throw NumericError("non-finite or non-positive group delay");
    d.v_gs = 1.0 / ks1;
    d.v_gi = 1.0 / ki1;
    d.v_gp = 1.0 / kp1;
    d.tau_gvs = (cfg.length / d.v_gs + cfg.length / d.v_gi) / 2.0;
    d.omega_gvs = 1.0 / d.tau_gvs;
    d.delta_t_a = (cfg.length / d.v_gs - cfg.length / d.v_gi) / 2.0;
    d.k_grating = cfg.k_grating();
    d.delta_t_a_small = std::abs(d.delta_t_a) < d.tau_gvs;
    return d;
}

double group_velocity_fd(const CrystalConfig& cfg, Wave wave, double rel_step) {
    const double w = cfg.omega(wave);
    const double h = rel_step * w;
    const double dk = (cfg.dispersion.k(wave, w + h) - cfg.dispersion.k(wave, w - h)) / (2.0 * h);
    if (!std::isfinite(dk) || dk <= 0) throw NumericError("finite-difference group delay not finite");
    return 1.0 / dk;
}

}  // namespace mopo
