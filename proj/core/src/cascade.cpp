#include "mopo/cascade.hpp"

#include "mopo/csv.hpp"
#include "mopo/errors.hpp"
#include "mopo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mopo {

namespace {

constexpr std::uint64_t chunk_size = 4096;
constexpr double max_tree_events = 1e6;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ chunk));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Transits {
    double s, i;  // l_c / v_g
    double length;
};

Transits transits(const CrystalConfig& cfg) {
    const DerivedScales sc = derived_scales(cfg);
    return {cfg.length / sc.v_gs, cfg.length / sc.v_gi, cfg.length};
}

// Runs fn(rng, count, out) over fixed chunks and concatenates the outputs in chunk order.
template <class Fn>
std::vector<double> chunked(std::uint64_t n, std::uint64_t seed, Fn fn) {
    const std::uint64_t chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<std::vector<double>> parts(chunks);
    parallel_for(
        chunks,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t c = begin; c < end; ++c) {
                auto rng = chunk_rng(seed, c);
                const std::uint64_t count = std::min(chunk_size, n - c * chunk_size);
                fn(rng, count, parts[c]);
            }
        },
        1);
    std::vector<double> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

struct TreePair {
    double u;  // z / l_c
    double t;
    unsigned generation;
};

}  // namespace

std::vector<double> DelayHistogram::density() const {
    std::vector<double> d(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) d[k] = static_cast<double>(counts[k]) * normalization;
    return d;
}

std::vector<double> DelayHistogram::centers() const {
    std::vector<double> c(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) c[k] = 0.5 * (edges[k] + edges[k + 1]);
    return c;
}

DelayHistogram make_histogram(std::vector<double> samples, double lo, double hi, std::size_t bins) {
    if (bins == 0 || !(hi > lo)) throw ConfigError("histogram needs bins > 0 and hi > lo");
    DelayHistogram h;
    h.edges.resize(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k)
        h.edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double x : samples) {
        const double pos = std::floor((x - lo) / width);
        const auto k = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
        ++h.counts[k];
    }
    h.total = samples.size();
    h.normalization = h.total > 0 ? 1.0 / (static_cast<double>(h.total) * width) : 0.0;
    h.samples = std::move(samples);
    return h;
}

double spontaneous_delay(double u, double transit_s, double transit_i) {
    // Convex combination of the two support ends, so it never leaves [-transit_i, transit_s].
    return (1.0 - u) * transit_s + u * (-transit_i);
}

DelayHistogram sample_spontaneous(const CrystalConfig& cfg, std::uint64_t n, std::uint64_t seed, std::size_t bins) {
    if (n == 0) throw ConfigError("sample_spontaneous needs n >= 1");
    const Transits tr = transits(cfg);
    auto samples = chunked(n, seed, [&](std::mt19937_64& rng, std::uint64_t count, std::vector<double>& out) {
        out.reserve(count);
        for (std::uint64_t j = 0; j < count; ++j) out.push_back(spontaneous_delay(uniform01(rng), tr.s, tr.i));
    });
    DelayHistogram h = make_histogram(std::move(samples), -tr.i, tr.s, bins);
    h.seed = seed;
    h.trees = n;
    return h;
}

const char* to_string(KsReport::Verdict v) {
    switch (v) {
        case KsReport::Verdict::pass: return "pass";
        case KsReport::Verdict::fail: return "fail";
        case KsReport::Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

KsReport compare_to_rect(const DelayHistogram& hist, const CrystalConfig& cfg) {
    if (hist.samples.empty()) throw ExtractionError("KS test on an empty histogram");
    const Transits tr = transits(cfg);
    const double lo = -tr.i, hi = tr.s;
    std::vector<double> x = hist.samples;
    std::sort(x.begin(), x.end());
    KsReport r;
    r.n = x.size();
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < lo || x[k] > hi) ++r.outside_support;
        const double f = std::clamp((x[k] - lo) / (hi - lo), 0.0, 1.0);
        r.d = std::max({r.d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
    }
    r.statistic = r.d * std::sqrt(n);
    if (r.n < ks_min_samples)
        r.verdict = KsReport::Verdict::inconclusive;
    else
        r.verdict = r.statistic < r.critical ? KsReport::Verdict::pass : KsReport::Verdict::fail;
    return r;
}

double l1_distance_to_rect(const DelayHistogram& hist, const CrystalConfig& cfg) {
    const Transits tr = transits(cfg);
    const double level = 1.0 / (tr.s + tr.i);
    const auto d = hist.density();
    double sum = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double a = std::max(hist.edges[k], -tr.i), b = std::min(hist.edges[k + 1], tr.s);
        const double inside = std::max(0.0, b - a);
        sum += std::abs(d[k] - level) * inside + d[k] * (hist.bin_width() - inside);
    }
    return sum;
}

DelayHistogram sample_with_stimulation(const CrystalConfig& cfg, std::uint64_t n, double rate,
                                       unsigned max_generations, std::uint64_t seed, std::size_t bins) {
    if (n == 0) throw ConfigError("sample_with_stimulation needs n >= 1");
    if (!(rate >= 0.0)) throw ConfigError("branching rate must be non-negative");
    if (max_generations < 1) throw ConfigError("max_generations must be >= 1");
    const Transits tr = transits(cfg);

    // Each photon crosses at most l_c, so a pair spawns on average ≤ 2·rate·l_c children.
    const double branching = 2.0 * rate * tr.length;
    double expected = 0.0, term = 1.0;
    for (unsigned k = 0; k <= max_generations; ++k, term *= branching) expected += term;
    if (expected > max_tree_events)
        throw ConfigError("cascade explosion guard: expected tree size " + format_number(expected) + " exceeds 1e6");

    auto samples = chunked(n, seed, [&](std::mt19937_64& rng, std::uint64_t count, std::vector<double>& out) {
        std::vector<TreePair> tree;
        for (std::uint64_t j = 0; j < count; ++j) {
            const double u0 = uniform01(rng);
            if (rate == 0.0) {
                out.push_back(spontaneous_delay(u0, tr.s, tr.i));
                continue;
            }
            tree.assign(1, TreePair{u0, 0.0, 0});
            for (std::size_t p = 0; p < tree.size(); ++p) {
                const TreePair parent = tree[p];
                if (parent.generation >= max_generations) continue;
                // Signal runs from u to 1, idler from u to 0.
                std::poisson_distribution<unsigned> ns(rate * tr.length * (1.0 - parent.u));
                std::poisson_distribution<unsigned> ni(rate * tr.length * parent.u);
                for (unsigned c = ns(rng); c > 0; --c) {
                    const double u = parent.u + (1.0 - parent.u) * uniform01(rng);
                    tree.push_back({u, parent.t + (u - parent.u) * tr.s, parent.generation + 1});
                }
                for (unsigned c = ni(rng); c > 0; --c) {
                    const double u = parent.u * uniform01(rng);
                    tree.push_back({u, parent.t + (parent.u - u) * tr.i, parent.generation + 1});
                }
                if (static_cast<double>(tree.size()) > max_tree_events)
                    throw NumericError("cascade explosion guard: tree exceeded 1e6 events");
            }
            for (const TreePair& a : tree)
                for (const TreePair& b : tree) {
                    const double base = (1.0 - a.u) * tr.s + b.u * (-tr.i);
                    out.push_back(&a == &b ? spontaneous_delay(a.u, tr.s, tr.i) : (a.t - b.t) + base);
                }
        }
    });

    double lo = -tr.i, hi = tr.s;
    for (double x : samples) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    DelayHistogram h = make_histogram(std::move(samples), lo, hi, bins);
    h.seed = seed;
    h.trees = n;
    h.rate = rate;
    h.max_generations = max_generations;
    return h;
}

double tail_fraction(const DelayHistogram& hist, const CrystalConfig& cfg) {
    if (hist.samples.empty()) return 0.0;
    const Transits tr = transits(cfg);
    std::uint64_t tail = 0;
    for (double x : hist.samples)
        if (x < -tr.i || x > tr.s) ++tail;
    return static_cast<double>(tail) / static_cast<double>(hist.samples.size());
}

void write_csv(const DelayHistogram& hist, const std::filesystem::path& path,
               const std::vector<std::pair<std::string, std::string>>& meta) {
    auto metadata = meta;
    metadata.emplace_back("seed", std::to_string(hist.seed));
    metadata.emplace_back("n", std::to_string(hist.trees));
    metadata.emplace_back("samples", std::to_string(hist.total));
    metadata.emplace_back("rate_per_m", format_number(hist.rate));
    metadata.emplace_back("max_generations", std::to_string(hist.max_generations));
    CsvWriter csv(path, "mopo.delay_histogram/1", metadata, {"dt_ps_bin_center", "density"});
    const auto c = hist.centers();
    const auto d = hist.density();
    for (std::size_t k = 0; k < c.size(); ++k) csv.row({c[k] * 1e12, d[k]});
}

}  // namespace mopo
