#pragma once

#include "mopo/dispersion.hpp"

#include <filesystem>
#include <string>

namespace mopo {

/// Loads a dispersion parameter set. INI layout: a [meta] section (name,
/// version, provenance, temperature_c) and one section per wave ([signal],
/// [idler], [pump]) with
///   form = sellmeier | linear
///   coefficients = A, B1, C1, B2, C2, ...   (sellmeier; n² = A + Σ B/(λ²−C) − ir·λ²)
///   ir_term = D                              (sellmeier, optional)
///   reference_um, phase_index, group_index   (linear)
///   range_um = lo, hi
///   polarization = e | o | z ...             (optional label)
DispersionModel load_dispersion_set(const std::filesystem::path& path);
DispersionModel parse_dispersion_set(const std::string& text);

/// Raw contents of a crystal config file, units as written.
struct CrystalConfigFile {
    double length_mm = 0.0;
    double lambda_p_nm = 0.0;
    double lambda_s_nm = 0.0;
    double gain = 0.0;
    std::string dispersion_set;
    std::optional<double> poling_period_nm;
    double pump_phase_rad = 0.0;
    std::filesystem::path base_dir;  // dispersion_set is resolved against this
};

/// Parses `key = value` lines; throws ConfigError on missing or malformed keys.
CrystalConfigFile parse_crystal_config(const std::string& text, const std::filesystem::path& base_dir = {});
CrystalConfigFile read_crystal_config(const std::filesystem::path& path);

/// Converts to SI, loads the dispersion set and computes Λ when absent.
/// Dispersion range violations surface as DomainError.
CrystalConfig resolve(const CrystalConfigFile& file);

inline CrystalConfig load_crystal_config(const std::filesystem::path& path) {
    return resolve(read_crystal_config(path));
}

}  // namespace mopo
