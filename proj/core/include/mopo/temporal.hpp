#pragma once

#include "mopo/gain.hpp"
#include "mopo/grid.hpp"
#include "mopo/spectral.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mopo {

enum class SeriesKind { biphoton, coherence };
enum class SeriesMethod { numeric, rect, triangle, exponential };

const char* to_string(SeriesKind k);
const char* to_string(SeriesMethod m);

/// Uniform, symmetric time grid with complex values. For biphoton series built
/// with a time offset t0, value k is Ψ(t[k] + t0).
struct TimeSeries {
    std::vector<double> t;  // s
    std::vector<cplx> v;
    SeriesKind kind = SeriesKind::biphoton;
    SeriesMethod method = SeriesMethod::numeric;
    PhaseModel phase_model = PhaseModel::exact;
    double gain = 0.0;
    double time_offset = 0.0;
    std::size_t grid_points = 0;  // frequency samples behind a numeric series

    double epsilon() const;
    std::vector<double> magnitude() const;
};

/// Fraction of Σ|v|² lying in the outer 10 % of the window on each side above
/// which a numeric series is rejected as wrapped around.
inline constexpr double aliasing_energy_limit = 1e-4;

/// Ψ(Δt) = (1/2π) ∫ dΩ e^{-iΩΔt} U_s(Ω) V_i(-Ω). The phase model (full β or
/// Δt_A·Ω) is the one the table was built with. Throws ResolutionError when
/// the series wraps around the periodic time window.
TimeSeries biphoton_time(const SpectralTable& table, double time_offset = 0.0);

/// G⁽¹⁾(Δt) = (1/2π) ∫ dΩ e^{+iΩΔt} |V_s(Ω)|².
TimeSeries coherence_time_series(const SpectralTable& table);

/// Same transform applied to any real spectrum on a uniform symmetric grid.
TimeSeries coherence_from_spectrum(const SpectrumResult& spectrum);

/// Back-transform of a coherence series onto a frequency grid starting at omega0.
SpectrumResult spectrum_from_coherence(const TimeSeries& series, double omega0);

/// Box of height g/(2τ_gvs) on (Δt_A - τ_gvs, Δt_A + τ_gvs) times e^{i(k_s l_c + φ_p)}.
TimeSeries closed_form_rect(const CrystalConfig& cfg, std::span<const double> times);

/// (g²/2τ_gvs) T(Δt/2τ_gvs) with T the unit triangle on (-1, 1).
TimeSeries closed_form_triangle(const CrystalConfig& cfg, std::span<const double> times);

/// Near-threshold exponentials with rate g cos g / τ_gvs: biphoton
/// (1/2τ_gvs)(g sin³g / cos g) centred at Δt_A, coherence (g/2τ_gvs)(sin²g / cos g) at 0.
TimeSeries closed_form_exponential(const CrystalConfig& cfg, SeriesKind kind, std::span<const double> times);

/// Symmetric time grid of `points` samples on [-half_span, half_span].
std::vector<double> time_grid(double half_span, std::size_t points);

struct CorrelationTime {
    double peak_time = 0.0;
    double hwhm = 0.0;
    std::optional<double> exp_constant;  // from the log-linear tail fit
    std::size_t fit_points = 0;
    std::string note;
};

/// HWHM of |series| around its peak, plus an exponential time constant fitted
/// by least squares to ln|v| over |Δt - peak| ∈ [1, 4]·HWHM (both sides,
/// at least 50 samples). Throws ExtractionError when the fitted tail does not
/// decay.
CorrelationTime correlation_time(const TimeSeries& series);

struct ScanRow {
    double epsilon = 0.0;
    double gain = 0.0;
    double tau_corr = 0.0;        // fitted biphoton time constant (s)
    double tau_coh = 0.0;         // fitted coherence time constant (s)
    double lorentz_width = 0.0;   // measured spectrum HWHM (rad/s)
    double peak_s = 0.0;          // max |V_s|²
    double tau_corr_hwhm = 0.0;
    double tau_coh_hwhm = 0.0;
    std::size_t grid_points = 0;
    bool ok = false;
    std::string status;
};

struct ScanOptions {
    TransformGridOptions grid;
    PhaseModel phase = PhaseModel::exact;
};

/// One row per ε = π/2 - g; rows are independent and evaluated concurrently.
/// Failures are reported per row (ok = false, status = message).
std::vector<ScanRow> critical_scan(const CrystalConfig& cfg, std::span<const double> epsilons,
                                   const ScanOptions& options = {});

/// Columns: dt_ps, abs_value, re, im.
void write_csv(const TimeSeries& series, const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::string>>& meta = {});

/// Numeric series next to a closed form on the same times. Columns: dt_ps,
/// abs_value, re, im, abs_closed_form, re_closed_form, im_closed_form.
void write_csv(const TimeSeries& numeric, const TimeSeries& closed, const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace mopo
