#include "mopo/spectral.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mopo {

const char* to_string(Approximation a) {
    switch (a) {
        case Approximation::exact: return "exact";
        case Approximation::low_gain_sinc2: return "low-gain-sinc2";
        case Approximation::lorentzian: return "lorentzian";
    }
    return "?";
}

SpectrumResult spectrum_exact(const SpectralTable& table) {
    SpectrumResult r;
    r.omega = table.omega;
    r.gain = table.gain;
    r.s.resize(table.size());
    for (std::size_t k = 0; k < table.size(); ++k) r.s[k] = std::norm(table.vs[k]);
    return r;
}

SpectrumResult spectrum_lowgain(const CrystalConfig& cfg, std::span<const double> grid) {
    const DerivedScales sc = derived_scales(cfg);
    const double g = cfg.gain;
    SpectrumResult r;
    r.approximation = Approximation::low_gain_sinc2;
    r.gain = g;
    r.omega.assign(grid.begin(), grid.end());
    r.s.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double sc2 = sinc(grid[k] * sc.tau_gvs);
        r.s[k] = g * g * sc2 * sc2;
    }
    if (g > 0.3) r.warnings.push_back("low-gain approximation used at g=" + format_number(g) + " > 0.3");
    return r;
}

SpectrumResult spectrum_lorentzian(const CrystalConfig& cfg, std::span<const double> grid) {
    const DerivedScales sc = derived_scales(cfg);
    const double g = cfg.gain;
    const double sg = std::sin(g), cg = std::cos(g);
    SpectrumResult r;
    r.approximation = Approximation::lorentzian;
    r.gain = g;
    r.omega.assign(grid.begin(), grid.end());
    r.s.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double x = grid[k] * sc.tau_gvs;
        r.s[k] = g * g * sg * sg / (x * x + g * g * cg * cg);
    }
    const double eps = std::numbers::pi / 2.0 - g;
    if (eps > 0.3) r.warnings.push_back("Lorentzian approximation used at epsilon=" + format_number(eps) + " > 0.3");
    return r;
}

SpectrumResult correlation_density(const SpectralTable& table) {
    SpectrumResult r = spectrum_exact(table);
    r.psi.resize(table.size());
    for (std::size_t k = 0; k < table.size(); ++k)
        r.psi[k] = table.gain * sinc(table.gamma[k]) * (1.0 + r.s[k]);
    return r;
}

ThresholdTerms correlation_threshold_terms(const SpectralTable& table, const DerivedScales& scales) {
    const double g = table.gain;
    const double sg = std::sin(g), cg = std::cos(g);
    ThresholdTerms t;
    t.spontaneous.resize(table.size());
    t.stimulated.resize(table.size());
    t.stimulated_unreplaced.resize(table.size());
    double peak = 0.0, dev = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        const double x = table.omega[k] * scales.tau_gvs;
        const double lorentz = g * g * sg * sg / (x * x + g * g * cg * cg);
        t.spontaneous[k] = g * sinc(table.gamma[k]);
        t.stimulated[k] = lorentz * sg;
        t.stimulated_unreplaced[k] = t.spontaneous[k] * lorentz;
        peak = std::max(peak, t.stimulated[k]);
        dev = std::max(dev, std::abs(t.stimulated[k] - t.stimulated_unreplaced[k]));
    }
    t.replacement_deviation = peak > 0.0 ? dev / peak : 0.0;
    return t;
}

double hwhm(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw ExtractionError("hwhm needs matching x/y with >= 3 samples");
    const auto peak_it = std::max_element(y.begin(), y.end());
    const std::size_t peak = static_cast<std::size_t>(peak_it - y.begin());
    if (peak == 0 || peak + 1 == y.size()) throw ExtractionError("peak lies on the grid boundary");
    const double half = *peak_it / 2.0;

    auto crossing = [&](std::size_t inner, std::size_t outer) {
        return x[inner] + (half - y[inner]) * (x[outer] - x[inner]) / (y[outer] - y[inner]);
    };
    std::size_t j = peak;
    while (j + 1 < y.size() && y[j + 1] > half) ++j;
    if (j + 1 == y.size()) throw ExtractionError("no half-maximum crossing right of the peak");
    const double right = crossing(j, j + 1);
    j = peak;
    while (j > 0 && y[j - 1] > half) --j;
    if (j == 0) throw ExtractionError("no half-maximum crossing left of the peak");
    const double left = crossing(j, j - 1);
    return (right - left) / 2.0;
}

double hwhm(const SpectrumResult& result) { return hwhm(result.omega, result.s); }

void write_spectrum_csv(const SpectrumResult& exact, const SpectrumResult& approx, double omega_gvs,
                        const std::filesystem::path& path,
                        const std::vector<std::pair<std::string, std::string>>& meta) {
    if (approx.omega.size() != exact.omega.size()) throw Error("spectrum CSV: grids differ");
    auto metadata = meta;
    metadata.emplace_back("g", format_number(exact.gain));
    metadata.emplace_back("approximation", to_string(approx.approximation));
    metadata.emplace_back("omega_gvs_rad_per_s", format_number(omega_gvs));
    CsvWriter csv(path, "mopo.spectrum/1", metadata, {"Omega_over_Omega_gvs", "S_exact", "S_approx", "Re_psi", "Im_psi"});
    for (std::size_t k = 0; k < exact.omega.size(); ++k) {
        const cplx psi = exact.psi.empty() ? cplx{} : exact.psi[k];
        csv.row({exact.omega[k] / omega_gvs, exact.s[k], approx.s[k], psi.real(), psi.imag()});
    }
}

}  // namespace mopo
