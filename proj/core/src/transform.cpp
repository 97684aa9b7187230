#include "mopo/transform.hpp"

#include "mopo/dispersion.hpp"
#include "mopo/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace mopo {

namespace {

using cplx = std::complex<double>;

// FFTW's planner is not thread-safe; execution is.
std::mutex planner_mutex;

class Plan {
public:
    Plan(std::vector<cplx>& data, int direction) {
        std::lock_guard lock(planner_mutex);
        auto* p = reinterpret_cast<fftw_complex*>(data.data());
        plan_ = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, direction, FFTW_ESTIMATE);
        if (!plan_) throw NumericError("FFTW planning failed");
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    void execute() { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

void fft_in_place(std::vector<cplx>& data, int direction) {
    Plan plan(data, direction);
    plan.execute();
}

double uniform_step(std::span<const double> x, const char* what) {
    if (x.size() < 2) throw ConfigError(std::string(what) + " grid needs at least 2 points");
    if (grid_nonuniformity(x) > 1e-9) throw ConfigError(std::string(what) + " grid must be uniform for the transform");
    return (x.back() - x.front()) / static_cast<double>(x.size() - 1);
}

}  // namespace

double grid_nonuniformity(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double mean = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    double worst = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) worst = std::max(worst, std::abs((x[k] - x[k - 1]) - mean));
    return worst / std::abs(mean);
}

SampledFunction to_time(std::span<const double> omega, std::span<const cplx> f, FourierSign sign, double time_offset) {
    if (omega.size() != f.size()) throw ConfigError("transform: grid and values differ in length");
    const double d_omega = uniform_step(omega, "frequency");
    const std::size_t n = omega.size();
    const double s = static_cast<double>(sign);
    const double omega0 = omega.front();

    std::vector<cplx> a(n);
    for (std::size_t k = 0; k < n; ++k) {
        double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        a[k] = w * f[k];
        if (time_offset != 0.0) a[k] *= std::polar(1.0, s * static_cast<double>(k) * d_omega * time_offset);
    }
    fft_in_place(a, sign == FourierSign::negative ? FFTW_FORWARD : FFTW_BACKWARD);

    const double dt = two_pi / (static_cast<double>(n) * d_omega);
    const auto m_lo = -static_cast<long long>(n / 2);
    SampledFunction out;
    out.x.resize(n);
    out.y.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long long m = m_lo + static_cast<long long>(j);
        const auto idx = static_cast<std::size_t>((m % static_cast<long long>(n) + static_cast<long long>(n)) %
                                                  static_cast<long long>(n));
        const double t = static_cast<double>(m) * dt;
        out.x[j] = t;
        out.y[j] = d_omega / two_pi * std::polar(1.0, s * omega0 * (t + time_offset)) * a[idx];
    }
    return out;
}

SampledFunction to_frequency(std::span<const double> t, std::span<const cplx> g, FourierSign sign, double omega0) {
    if (t.size() != g.size()) throw ConfigError("transform: grid and values differ in length");
    const double dt = uniform_step(t, "time");
    const std::size_t n = t.size();
    const double s = static_cast<double>(sign);
    const double t0 = t.front();
    const double d_omega = two_pi / (static_cast<double>(n) * dt);

    std::vector<cplx> a(n);
    for (std::size_t m = 0; m < n; ++m) a[m] = g[m] * std::polar(1.0, -s * omega0 * static_cast<double>(m) * dt);
    fft_in_place(a, sign == FourierSign::negative ? FFTW_BACKWARD : FFTW_FORWARD);

    SampledFunction out;
    out.x.resize(n);
    out.y.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = omega0 + static_cast<double>(k) * d_omega;
        out.x[k] = w;
        out.y[k] = dt * std::polar(1.0, -s * w * t0) * a[k];
    }
    return out;
}

}  // namespace mopo
