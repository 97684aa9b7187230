#include "mopo/gain.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"
#include "mopo/parallel.hpp"

#include <cmath>

namespace mopo {

const char* to_string(PhaseModel m) { return m == PhaseModel::exact ? "exact-phase" : "linear-phase"; }

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double gamma(const CrystalConfig& cfg, double offset) {
    return std::hypot(cfg.gain, phase_mismatch(cfg, offset));
}

bool is_symmetric_grid(std::span<const double> grid) {
    const std::size_t n = grid.size();
    if (n == 0) return false;
    double scale = std::max(std::abs(grid.front()), std::abs(grid.back()));
    for (std::size_t k = 0; k < n; ++k) {
        if (k + 1 < n && !(grid[k + 1] > grid[k])) return false;
        if (std::abs(grid[k] + grid[n - 1 - k]) > 1e-12 * scale) return false;
    }
    return true;
}

SpectralTable gain_coefficients(const CrystalConfig& cfg, std::span<const double> grid, PhaseModel phase) {
    return gain_coefficients(cfg, grid, cfg.pump_phase, phase);
}

SpectralTable gain_coefficients(const CrystalConfig& cfg, std::span<const double> grid, double pump_phase,
                                PhaseModel phase) {
    cfg.validate_below_threshold();
    if (!is_symmetric_grid(grid)) throw ConfigError("frequency grid must be increasing and symmetric about 0");

    const std::size_t n = grid.size();
    const double g = cfg.gain;
    SpectralTable t;
    t.omega.assign(grid.begin(), grid.end());
    t.gain = g;
    t.pump_phase = pump_phase;
    t.phase_model = phase;
    t.config_hash = cfg.hash();
    t.signal_phase = std::remainder(wavenumber(cfg, Wave::signal, 0.0) * cfg.length, two_pi);
    t.idler_phase = std::remainder(wavenumber(cfg, Wave::idler, 0.0) * cfg.length, two_pi);
    t.mismatch.resize(n);
    t.gamma.resize(n);
    t.beta.resize(n);

    const double delta_t_a = phase == PhaseModel::linear ? derived_scales(cfg).delta_t_a : 0.0;

    // φ(Ω) and sinc γ(Ω) per point; the idler coefficients read them at -Ω.
    std::vector<cplx> phi(n);
    std::vector<double> sinc_gamma(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double w = grid[k];
            const double d = phase_mismatch(cfg, w);
            const double gm = std::hypot(g, d);
            const double sg = sinc(gm);
            t.mismatch[k] = d;
            t.gamma[k] = gm;
            t.beta[k] = phase == PhaseModel::exact ? propagation_phase(cfg, w) : delta_t_a * w;
            sinc_gamma[k] = sg;
            phi[k] = 1.0 / cplx(std::cos(gm), -d * sg);
            if (!std::isfinite(phi[k].real()) || !std::isfinite(phi[k].imag()))
                throw NumericError("gain coefficient phi not finite at Omega=" + format_number(w));
        }
    });

    const cplx pump = std::polar(1.0, pump_phase);
    const cplx signal_prop = std::polar(1.0, t.signal_phase);
    const cplx idler_prop = std::polar(1.0, t.idler_phase);
    const cplx cross_prop = std::polar(1.0, t.signal_phase - t.idler_phase);

    t.us.resize(n);
    t.vs.resize(n);
    t.ui.resize(n);
    t.vi.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = t.mirror(k);
        t.us[k] = signal_prop * std::polar(1.0, t.beta[k]) * phi[k];
        t.vs[k] = cross_prop * g * pump * sinc_gamma[k] * phi[k];
        t.ui[k] = idler_prop * std::polar(1.0, t.beta[m]) * std::conj(phi[m]);
        t.vi[k] = g * pump * sinc_gamma[m] * std::conj(phi[m]);
    }
    return t;
}

UnitarityReport check_unitarity(const SpectralTable& t) {
    UnitarityReport r;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const std::size_t m = t.mirror(k);
        r.norm_signal = std::max(r.norm_signal, std::abs(std::norm(t.us[k]) - std::norm(t.vs[k]) - 1.0));
        r.norm_idler = std::max(r.norm_idler, std::abs(std::norm(t.ui[k]) - std::norm(t.vi[k]) - 1.0));
        r.cross = std::max(r.cross, std::abs(t.us[k] * t.vi[m] - t.ui[m] * t.vs[k]));
    }
    return r;
}

void write_csv(const SpectralTable& t, const std::filesystem::path& path) {
    CsvWriter csv(path, "mopo.spectral_table/1",
                  {{"g", format_number(t.gain)},
                   {"pump_phase", format_number(t.pump_phase)},
                   {"phase_model", to_string(t.phase_model)},
                   {"config_hash", t.config_hash},
                   {"points", std::to_string(t.size())}},
                  {"Omega_rad_per_s", "ReUs", "ImUs", "ReVs", "ImVs", "ReUi", "ImUi", "ReVi", "ImVi"});
    for (std::size_t k = 0; k < t.size(); ++k)
        csv.row({t.omega[k], t.us[k].real(), t.us[k].imag(), t.vs[k].real(), t.vs[k].imag(), t.ui[k].real(),
                 t.ui[k].imag(), t.vi[k].real(), t.vi[k].imag()});
}

}  // namespace mopo
