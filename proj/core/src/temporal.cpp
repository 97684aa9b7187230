#include "mopo/temporal.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"
#include "mopo/parallel.hpp"
#include "mopo/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mopo {

const char* to_string(SeriesKind k) { return k == SeriesKind::biphoton ? "biphoton" : "coherence"; }

const char* to_string(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::numeric: return "numeric";
        case SeriesMethod::rect: return "rect";
        case SeriesMethod::triangle: return "triangle";
        case SeriesMethod::exponential: return "exponential";
    }
    return "?";
}

double TimeSeries::epsilon() const { return std::numbers::pi / 2.0 - gain; }

std::vector<double> TimeSeries::magnitude() const {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx z) { return std::abs(z); });
    return out;
}

namespace {

void check_wraparound(const SampledFunction& f, std::size_t grid_points) {
    const std::size_t n = f.y.size();
    const std::size_t edge = n / 10;
    double total = 0.0, outer = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(f.y[k]);
        total += e;
        if (k < edge || k >= n - edge) outer += e;
    }
    if (total > 0.0 && outer > aliasing_energy_limit * total)
        throw ResolutionError("time series wraps around the transform window (outer energy fraction " +
                                  format_number(outer / total) + "); use a finer frequency step",
                              2 * grid_points - 1);
}

double global_phase(const CrystalConfig& cfg) {
    return std::remainder(wavenumber(cfg, Wave::signal, 0.0) * cfg.length, two_pi) + cfg.pump_phase;
}

TimeSeries from_sampled(SampledFunction&& f, SeriesKind kind, double gain, std::size_t points) {
    TimeSeries s;
    s.t = std::move(f.x);
    s.v = std::move(f.y);
    s.kind = kind;
    s.gain = gain;
    s.grid_points = points;
    return s;
}

}  // namespace

TimeSeries biphoton_time(const SpectralTable& table, double time_offset) {
    std::vector<cplx> integrand(table.size());
    for (std::size_t k = 0; k < table.size(); ++k) integrand[k] = table.us[k] * table.vi[table.mirror(k)];
    auto f = to_time(table.omega, integrand, FourierSign::negative, time_offset);
    check_wraparound(f, table.size());
    TimeSeries s = from_sampled(std::move(f), SeriesKind::biphoton, table.gain, table.size());
    s.phase_model = table.phase_model;
    s.time_offset = time_offset;
    return s;
}

TimeSeries coherence_time_series(const SpectralTable& table) {
    TimeSeries s = coherence_from_spectrum(spectrum_exact(table));
    s.phase_model = table.phase_model;
    return s;
}

TimeSeries coherence_from_spectrum(const SpectrumResult& spectrum) {
    if (!is_symmetric_grid(spectrum.omega)) throw ConfigError("coherence transform needs a symmetric grid");
    std::vector<cplx> integrand(spectrum.s.begin(), spectrum.s.end());
    auto f = to_time(spectrum.omega, integrand, FourierSign::positive);
    check_wraparound(f, spectrum.omega.size());
    TimeSeries s = from_sampled(std::move(f), SeriesKind::coherence, spectrum.gain, spectrum.omega.size());
    return s;
}

SpectrumResult spectrum_from_coherence(const TimeSeries& series, double omega0) {
    auto f = to_frequency(series.t, series.v, FourierSign::positive, omega0);
    SpectrumResult r;
    r.gain = series.gain;
    r.omega = std::move(f.x);
    r.s.resize(f.y.size());
    for (std::size_t k = 0; k < f.y.size(); ++k) r.s[k] = f.y[k].real();
    return r;
}

std::vector<double> time_grid(double half_span, std::size_t points) {
    if (points < 3 || !(half_span > 0.0)) throw ConfigError("time grid needs >= 3 points and a positive span");
    const std::size_t half = points / 2;
    std::vector<double> t(2 * half + 1);
    for (std::size_t k = 0; k < t.size(); ++k)
        t[k] = half_span * (static_cast<double>(k) - static_cast<double>(half)) / static_cast<double>(half);
    return t;
}

TimeSeries closed_form_rect(const CrystalConfig& cfg, std::span<const double> times) {
    const DerivedScales sc = derived_scales(cfg);
    const cplx amp = std::polar(cfg.gain / (2.0 * sc.tau_gvs), global_phase(cfg));
    TimeSeries s;
    s.kind = SeriesKind::biphoton;
    s.method = SeriesMethod::rect;
    s.gain = cfg.gain;
    s.t.assign(times.begin(), times.end());
    s.v.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double x = std::abs(times[k] - sc.delta_t_a);
        s.v[k] = x < sc.tau_gvs ? amp : (x == sc.tau_gvs ? 0.5 * amp : cplx{});
    }
    return s;
}

TimeSeries closed_form_triangle(const CrystalConfig& cfg, std::span<const double> times) {
    const DerivedScales sc = derived_scales(cfg);
    const double g = cfg.gain;
    TimeSeries s;
    s.kind = SeriesKind::coherence;
    s.method = SeriesMethod::triangle;
    s.gain = g;
    s.t.assign(times.begin(), times.end());
    s.v.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double x = std::abs(times[k]) / (2.0 * sc.tau_gvs);
        s.v[k] = x < 1.0 ? g * g / (2.0 * sc.tau_gvs) * (1.0 - x) : 0.0;
    }
    return s;
}

TimeSeries closed_form_exponential(const CrystalConfig& cfg, SeriesKind kind, std::span<const double> times) {
    const DerivedScales sc = derived_scales(cfg);
    const double g = cfg.gain;
    const double sg = std::sin(g), cg = std::cos(g);
    const double rate = g * cg / sc.tau_gvs;
    TimeSeries s;
    s.kind = kind;
    s.method = SeriesMethod::exponential;
    s.gain = g;
    s.t.assign(times.begin(), times.end());
    s.v.resize(times.size());
    if (kind == SeriesKind::biphoton) {
        const cplx amp = std::polar(g * sg * sg * sg / (2.0 * sc.tau_gvs * cg), global_phase(cfg));
        for (std::size_t k = 0; k < times.size(); ++k)
            s.v[k] = amp * std::exp(-rate * std::abs(times[k] - sc.delta_t_a));
    } else {
        const double amp = g * sg * sg / (2.0 * sc.tau_gvs * cg);
        for (std::size_t k = 0; k < times.size(); ++k) s.v[k] = amp * std::exp(-rate * std::abs(times[k]));
    }
    return s;
}

CorrelationTime correlation_time(const TimeSeries& series) {
    const std::vector<double> mag = series.magnitude();
    CorrelationTime out;
    out.hwhm = hwhm(series.t, mag);
    const auto peak = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    out.peak_time = series.t[peak];

    const double floor = mag[peak] * 1e-13;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        const double d = std::abs(series.t[k] - out.peak_time);
        if (d < out.hwhm || d > 4.0 * out.hwhm || !(mag[k] > floor)) continue;
        const double y = std::log(mag[k]);
        sx += d;
        sy += y;
        sxx += d * d;
        sxy += d * y;
        ++n;
    }
    out.fit_points = n;
    if (n < 50) {
        out.note = "tail window holds " + std::to_string(n) + " usable samples (< 50); no exponential fit";
        return out;
    }
    const double nn = static_cast<double>(n);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    if (!(slope < 0.0)) throw ExtractionError("tail of the series does not decay (slope " + format_number(slope) + ")");
    out.exp_constant = -1.0 / slope;
    return out;
}

std::vector<ScanRow> critical_scan(const CrystalConfig& cfg, std::span<const double> epsilons,
                                   const ScanOptions& options) {
    std::vector<ScanRow> rows(epsilons.size());
    parallel_for(
        epsilons.size(),
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                ScanRow& row = rows[r];
                row.epsilon = epsilons[r];
                row.gain = std::numbers::pi / 2.0 - epsilons[r];
                try {
                    CrystalConfig c = cfg;
                    c.gain = row.gain;
                    const DerivedScales sc = derived_scales(c);
                    const auto grid = transform_grid(sc, c.gain, options.grid);
                    const SpectralTable table = gain_coefficients(c, grid, options.phase);
                    row.grid_points = grid.size();

                    const CorrelationTime corr = correlation_time(biphoton_time(table));
                    const CorrelationTime coh = correlation_time(coherence_time_series(table));
                    if (!corr.exp_constant || !coh.exp_constant)
                        throw ExtractionError("exponential tail fit unavailable: " + corr.note + coh.note);
                    row.tau_corr = *corr.exp_constant;
                    row.tau_coh = *coh.exp_constant;
                    row.tau_corr_hwhm = corr.hwhm;
                    row.tau_coh_hwhm = coh.hwhm;

                    const auto sgrid = spectrum_grid(sc, c.gain);
                    const SpectrumResult spec = spectrum_exact(gain_coefficients(c, sgrid, options.phase));
                    row.lorentz_width = hwhm(spec);
                    row.peak_s = *std::max_element(spec.s.begin(), spec.s.end());
                    row.ok = true;
                    row.status = "ok";
                } catch (const std::exception& e) {
                    row.ok = false;
                    row.status = e.what();
                }
            }
        },
        1);
    return rows;
}

namespace {

std::vector<std::pair<std::string, std::string>> series_meta(const TimeSeries& series,
                                                             std::vector<std::pair<std::string, std::string>> meta) {
    meta.emplace_back("kind", to_string(series.kind));
    meta.emplace_back("method", to_string(series.method));
    meta.emplace_back("phase_model", to_string(series.phase_model));
    meta.emplace_back("g", format_number(series.gain));
    meta.emplace_back("epsilon", format_number(series.epsilon()));
    meta.emplace_back("grid_points", std::to_string(series.grid_points));
    meta.emplace_back("time_offset_ps", format_number(series.time_offset * 1e12));
    return meta;
}

}  // namespace

void write_csv(const TimeSeries& series, const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::string>>& meta) {
    const auto metadata = series_meta(series, meta);
    CsvWriter csv(path, "mopo.time_series/1", metadata, {"dt_ps", "abs_value", "re", "im"});
    for (std::size_t k = 0; k < series.t.size(); ++k)
        csv.row({series.t[k] * 1e12, std::abs(series.v[k]), series.v[k].real(), series.v[k].imag()});
}

void write_csv(const TimeSeries& numeric, const TimeSeries& closed, const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::string>>& meta) {
    if (numeric.t != closed.t) throw Error("time series CSV: numeric and closed form use different times");
    auto metadata = series_meta(numeric, meta);
    metadata.emplace_back("closed_form", to_string(closed.method));
    CsvWriter csv(path, "mopo.time_series_pair/1", metadata,
                  {"dt_ps", "abs_value", "re", "im", "abs_closed_form", "re_closed_form", "im_closed_form"});
    for (std::size_t k = 0; k < numeric.t.size(); ++k) {
        const cplx a = numeric.v[k], b = closed.v[k];
        csv.row({numeric.t[k] * 1e12, std::abs(a), a.real(), a.imag(), std::abs(b), b.real(), b.imag()});
    }
}

}  // namespace mopo
