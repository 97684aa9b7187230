#pragma once

#include "mopo/dispersion.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mopo {

struct PairEvent {
    double z = 0.0;  // m, in [0, l_c]
    double t = 0.0;  // s
    unsigned generation = 0;
};

/// Histogram of exit-time differences Δt = t_signal - t_idler. The raw samples
/// are kept (in draw order) for goodness-of-fit tests.
struct DelayHistogram {
    std::vector<double> edges;  // s, bins + 1 entries
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    double normalization = 0.0;  // density = count · normalization
    std::vector<double> samples;
    std::uint64_t seed = 0;
    std::uint64_t trees = 0;  // primary pairs drawn
    double rate = 0.0;        // per metre
    unsigned max_generations = 0;

    double bin_width() const { return edges.size() > 1 ? edges[1] - edges[0] : 0.0; }
    std::vector<double> density() const;
    std::vector<double> centers() const;
};

/// Bins samples on [lo, hi]; samples outside the range are clamped into the edge bins.
DelayHistogram make_histogram(std::vector<double> samples, double lo, double hi, std::size_t bins);

/// Δt = (l_c - z)/v_gs - z/v_gi, z = u·l_c.
double spontaneous_delay(double u, double transit_s, double transit_i);

/// Draws n generation points uniformly along the crystal. Work is split into
/// fixed chunks with seeds derived from (seed, chunk), so the result does not
/// depend on the thread count.
DelayHistogram sample_spontaneous(const CrystalConfig& cfg, std::uint64_t n, std::uint64_t seed,
                                  std::size_t bins = 100);

struct KsReport {
    enum class Verdict { pass, fail, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    double d = 0.0;            // sup |F_n - F|
    double statistic = 0.0;    // D·sqrt(n)
    double critical = 1.63;    // α ≈ 0.01
    std::uint64_t n = 0;
    std::uint64_t outside_support = 0;
};

const char* to_string(KsReport::Verdict v);

inline constexpr std::uint64_t ks_min_samples = 100;

/// Kolmogorov-Smirnov test of the samples against Uniform(Δt_A - τ_gvs, Δt_A + τ_gvs).
/// Throws ExtractionError for an empty histogram.
KsReport compare_to_rect(const DelayHistogram& hist, const CrystalConfig& cfg);

/// Σ_bins |density - 1/(2τ_gvs)| · bin width, over a histogram binned on the support.
double l1_distance_to_rect(const DelayHistogram& hist, const CrystalConfig& cfg);

/// Spontaneous pairs plus a stimulated cascade: every photon spawns new pairs
/// along its remaining path as a Poisson process of the given rate (per metre),
/// up to max_generations. Δt is recorded for every signal/idler pairing within
/// a tree. Throws ConfigError when the expected tree size exceeds 1e6.
/// With rate = 0 the result equals sample_spontaneous for the same seed.
DelayHistogram sample_with_stimulation(const CrystalConfig& cfg, std::uint64_t n, double rate,
                                       unsigned max_generations, std::uint64_t seed, std::size_t bins = 100);

/// Fraction of samples with |Δt - Δt_A| > τ_gvs.
double tail_fraction(const DelayHistogram& hist, const CrystalConfig& cfg);

/// Columns: dt_ps_bin_center, density.
void write_csv(const DelayHistogram& hist, const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace mopo
