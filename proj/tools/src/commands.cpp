#include "mopo_cli/commands.hpp"

#include "mopo/cascade.hpp"
#include "mopo/classical.hpp"
#include "mopo/config.hpp"
#include "mopo/csv.hpp"
#include "mopo/errors.hpp"
#include "mopo/grid.hpp"
#include "mopo/spectral.hpp"
#include "mopo/temporal.hpp"
#include "mopo/transform.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>

namespace mopo::cli {

namespace {

using Meta = std::vector<std::pair<std::string, std::string>>;
constexpr double half_pi = std::numbers::pi / 2.0;
constexpr std::size_t default_spectrum_points = (std::size_t{1} << 14) + 1;

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Shared bookkeeping for one command run.
class Run {
public:
    Run(std::string command, const Options& opts) : opts_(opts), start_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.config_path = opts.config.string();
        manifest_.phase_model = to_string(opts.phase);
        manifest_.seed = opts.seed;
        manifest_.grid_points = opts.grid_points;
        manifest_.eps_list = opts.eps_list;
        manifest_.started_at = utc_now();
        std::filesystem::create_directories(opts.out);
    }

    CrystalConfig load() {
        if (opts_.config.empty()) throw ConfigError("--config is required");
        CrystalConfig cfg = load_crystal_config(opts_.config);
        cfg.validate();
        manifest_.config_hash = cfg.hash();
        const DerivedScales sc = derived_scales(cfg);
        manifest_.parameters["tau_gvs_ps"] = sc.tau_gvs * 1e12;
        manifest_.parameters["delta_t_a_ps"] = sc.delta_t_a * 1e12;
        manifest_.parameters["omega_gvs_rad_per_s"] = sc.omega_gvs;
        manifest_.parameters["poling_period_nm"] = cfg.poling_period * 1e9;
        manifest_.parameters["config_gain"] = cfg.gain;
        return cfg;
    }

    std::filesystem::path output(const std::string& name) {
        manifest_.outputs.push_back(name);
        return opts_.out / name;
    }

    Meta meta() const {
        return {{"command", manifest_.command},
                {"config", manifest_.config_path},
                {"config_hash", manifest_.config_hash},
                {"tool_version", tool_version}};
    }

    RunManifest& manifest() { return manifest_; }

    RunManifest finish() {
        manifest_.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_manifest(manifest_, opts_.out / "manifest.json");
        return manifest_;
    }

    const Options& opts() const { return opts_; }

private:
    const Options& opts_;
    RunManifest manifest_;
    std::chrono::steady_clock::time_point start_;
};

CrystalConfig with_gain(CrystalConfig cfg, double g) {
    cfg.gain = g;
    return cfg;
}

std::vector<double> spectrum_points(const Run& run, const CrystalConfig& cfg) {
    return spectrum_grid(derived_scales(cfg), cfg.gain, 8.0, run.opts().grid_points.value_or(default_spectrum_points));
}

void figure2(Run& run) {
    std::vector<double> gains;
    for (int k = 0; k <= 300; ++k) gains.push_back(0.01 * k);
    gains.push_back(half_pi);
    std::sort(gains.begin(), gains.end());

    CsvWriter csv(run.output("fig2_efficiency.csv"), "mopo.efficiency/1", run.meta(), {"g", "eta", "eta_shooting"});
    for (double g : gains) {
        double shooting = 0.0;
        if (g > half_pi) {
            try {
                shooting = stationary_bvp(g).eta;
            } catch (const NoSolutionError&) {
                shooting = 0.0;
            }
        }
        csv.row({g, efficiency(g), shooting});
    }
    write_profile_csv(stationary_bvp(2.0), run.output("fig2_profile_g2.csv"), run.meta());
}

void spectrum_and_biphoton(Run& run, const CrystalConfig& cfg, const std::string& stem, bool density) {
    const DerivedScales sc = derived_scales(cfg);
    const double g = cfg.gain;
    const auto sgrid = spectrum_points(run, cfg);
    const SpectralTable stable = gain_coefficients(cfg, sgrid, run.opts().phase);
    const SpectrumResult approx =
        g < 0.3 ? spectrum_lowgain(cfg, sgrid) : spectrum_lorentzian(cfg, sgrid);
    write_spectrum_csv(density ? correlation_density(stable) : spectrum_exact(stable), approx, sc.omega_gvs,
                       run.output(stem + "_spectrum.csv"), run.meta());

    const TimeSeries psi = biphoton_time(gain_coefficients(cfg, transform_grid(sc, g), run.opts().phase));
    const TimeSeries closed =
        g < 0.3 ? closed_form_rect(cfg, psi.t) : closed_form_exponential(cfg, SeriesKind::biphoton, psi.t);
    write_csv(psi, closed, run.output(stem + "_biphoton.csv"), run.meta());
}

void spectrum_and_coherence(Run& run, const CrystalConfig& cfg, const std::string& stem) {
    const DerivedScales sc = derived_scales(cfg);
    const double g = cfg.gain;
    const auto sgrid = spectrum_points(run, cfg);
    const SpectrumResult exact = spectrum_exact(gain_coefficients(cfg, sgrid, run.opts().phase));
    const SpectrumResult approx = g < 0.3 ? spectrum_lowgain(cfg, sgrid) : spectrum_lorentzian(cfg, sgrid);
    write_spectrum_csv(exact, approx, sc.omega_gvs, run.output(stem + "_spectrum.csv"), run.meta());

    const TimeSeries coh = coherence_time_series(gain_coefficients(cfg, transform_grid(sc, g), run.opts().phase));
    const TimeSeries closed =
        g < 0.3 ? closed_form_triangle(cfg, coh.t) : closed_form_exponential(cfg, SeriesKind::coherence, coh.t);
    write_csv(coh, closed, run.output(stem + "_coherence.csv"), run.meta());
}

std::vector<double> eps_or_default(const Options& opts, std::vector<double> fallback) {
    return opts.eps_list.empty() ? fallback : opts.eps_list;
}

}  // namespace

RunManifest cmd_figure(const std::string& name, const Options& opts) {
    if (std::find(figure_names.begin(), figure_names.end(), name) == figure_names.end())
        throw ConfigError("unknown figure '" + name + "' (expected fig2..fig6)");
    Run run("figure " + name, opts);
    const CrystalConfig cfg = run.load();

    if (name == "fig2") {
        figure2(run);
    } else if (name == "fig3") {
        run.manifest().gain = 1e-3;
        spectrum_and_biphoton(run, with_gain(cfg, 1e-3), "fig3", false);
    } else if (name == "fig4") {
        const double eps = 0.07;
        run.manifest().gain = 1.0;
        run.manifest().epsilon = eps;
        spectrum_and_biphoton(run, with_gain(cfg, 1.0), "fig4_g1", true);
        spectrum_and_biphoton(run, with_gain(cfg, half_pi - eps), "fig4_eps" + shortest(eps), true);
    } else if (name == "fig5") {
        run.manifest().gain = 1e-3;
        spectrum_and_coherence(run, with_gain(cfg, 1e-3), "fig5");
    } else {
        const auto eps_list = eps_or_default(opts, {0.2, 0.1, 0.05, 0.02});
        run.manifest().eps_list = eps_list;
        CsvWriter widths(run.output("fig6_widths.csv"), "mopo.widths/1", run.meta(),
                         {"epsilon", "g", "hwhm_rad_per_s", "lorentz_width_rad_per_s", "peak_s", "tan2_g"});
        for (double eps : eps_list) {
            const CrystalConfig c = with_gain(cfg, half_pi - eps);
            spectrum_and_coherence(run, c, "fig6_eps" + shortest(eps));
            const SpectrumResult s = spectrum_exact(gain_coefficients(c, spectrum_points(run, c), opts.phase));
            widths.row({eps, c.gain, hwhm(s), lorentzian_width(derived_scales(c), c.gain),
                        *std::max_element(s.s.begin(), s.s.end()), std::pow(std::tan(c.gain), 2)});
        }
    }
    return run.finish();
}

RunManifest cmd_scan(const Options& opts, std::vector<std::string>* failures) {
    if (opts.eps_list.empty()) throw ConfigError("scan needs a non-empty --eps-list");
    Run run("scan", opts);
    const CrystalConfig cfg = run.load();
    const DerivedScales sc = derived_scales(cfg);
    ScanOptions so;
    so.phase = opts.phase;
    const auto rows = critical_scan(cfg, opts.eps_list, so);

    CsvWriter csv(run.output("scan.csv"), "mopo.scan/1", run.meta(),
                  {"epsilon", "g", "tau_corr_ps", "tau_coh_ps", "lorentz_width_rad_per_s",
                   "pi_eps_tau_corr_over_2tau_gvs", "tau_coh_gcosg_over_tau_gvs", "grid_points", "ok"});
    for (const ScanRow& r : rows) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (!r.ok && failures) failures->push_back("epsilon=" + shortest(r.epsilon) + ": " + r.status);
        csv.row({r.epsilon, r.gain, r.ok ? r.tau_corr * 1e12 : nan, r.ok ? r.tau_coh * 1e12 : nan,
                 r.ok ? r.lorentz_width : nan,
                 r.ok ? std::numbers::pi * r.epsilon * r.tau_corr / (2.0 * sc.tau_gvs) : nan,
                 r.ok ? r.tau_coh * r.gain * std::cos(r.gain) / sc.tau_gvs : nan, static_cast<double>(r.grid_points),
                 r.ok ? 1.0 : 0.0});
    }
    return run.finish();
}

bool ValidationReport::ok() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

ValidationReport cmd_validate(const Options& opts) {
    ValidationReport report;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    std::optional<CrystalConfig> cfg;
    std::optional<double> file_period;
    try {
        const CrystalConfigFile file = read_crystal_config(opts.config);
        file_period = file.poling_period_nm;
        cfg = resolve(file);
        cfg->validate();
        add("config", true, "loaded " + opts.config.string());
        add("dispersion-domain", true, "central wavelengths inside the dispersion ranges");
    } catch (const DomainError& e) {
        add("config", true, "parsed " + opts.config.string());
        add("dispersion-domain", false, e.what());
    } catch (const Error& e) {
        add("config", false, e.what());
    }

    bool below = false;
    if (cfg) {
        try {
            cfg->validate_below_threshold();
            below = true;
            add("threshold", true, "g=" + shortest(cfg->gain) + " < pi/2");
        } catch (const ThresholdError& e) {
            add("threshold", false, std::string("threshold violation: ") + e.what());
        }
    }

    auto guarded = [&](const std::string& name, bool needs_below, auto body) {
        if (!cfg || (needs_below && !below)) {
            add(name, false, "skipped: no usable below-threshold config");
            return;
        }
        try {
            body();
        } catch (const DomainError& e) {
            add(name, false, std::string("dispersion domain: ") + e.what());
        } catch (const std::exception& e) {
            add(name, false, e.what());
        }
    };

    guarded("unitarity", true, [&] {
        const DerivedScales sc = derived_scales(*cfg);
        const UnitarityReport u = check_unitarity(gain_coefficients(*cfg, spectrum_grid(sc, cfg->gain), opts.phase));
        const double tol = half_pi - cfg->gain < 0.02 ? 1e-8 : 1e-10;
        add("unitarity", u.ok(tol), "worst violation " + format_number(u.worst()) + " (tol " + shortest(tol) + ")");
    });

    guarded("dispersion-roundtrip", false, [&] {
        double worst_n = 0.0, worst_vg = 0.0;
        for (Wave w : {Wave::signal, Wave::idler, Wave::pump}) {
            const double omega = cfg->omega(w);
            const double lambda = two_pi * speed_of_light / omega;
            const double n_from_k = cfg->dispersion.k(w, omega) * speed_of_light / omega;
            worst_n = std::max(worst_n, std::abs(n_from_k / cfg->dispersion.refractive_index(w, lambda) - 1.0));
            const double vg = 1.0 / cfg->dispersion.k_prime(w, omega);
            worst_vg = std::max(worst_vg, std::abs(group_velocity_fd(*cfg, w) / vg - 1.0));
        }
        double mismatch = 0.0;
        if (!file_period) mismatch = std::abs(phase_mismatch(*cfg, 0.0));
        const bool ok = worst_n < 1e-12 && worst_vg < 1e-6 && mismatch < 1e-6;
        add("dispersion-roundtrip", ok,
            "n vs k c/omega " + format_number(worst_n) + ", v_g analytic vs finite difference " +
                format_number(worst_vg) + ", QPM mismatch " + format_number(mismatch));
    });

    guarded("transform-roundtrip", true, [&] {
        const DerivedScales sc = derived_scales(*cfg);
        const SpectralTable table = gain_coefficients(*cfg, transform_grid(sc, cfg->gain), opts.phase);
        const SpectrumResult s = spectrum_exact(table);
        const SpectrumResult back = spectrum_from_coherence(coherence_time_series(table), s.omega.front());
        const double peak = *std::max_element(s.s.begin(), s.s.end());
        double worst = 0.0;
        for (std::size_t k = 1; k + 1 < s.s.size(); ++k) worst = std::max(worst, std::abs(back.s[k] - s.s[k]) / peak);
        add("transform-roundtrip", worst < 1e-9, "max deviation/peak " + format_number(worst));
    });

    try {
        double worst = 0.0;
        for (double g : {1.6, 2.0, 2.5, 3.0}) worst = std::max(worst, std::abs(stationary_bvp(g).eta - efficiency(g)));
        const double thr = threshold_locate();
        add("classical-oracle", worst < 1e-6 && std::abs(thr - half_pi) < 1e-4,
            "max |eta_bvp - eta_K| " + format_number(worst) + ", threshold " + format_number(thr));
    } catch (const std::exception& e) {
        add("classical-oracle", false, e.what());
    }
    return report;
}

RunManifest cmd_cascade(const Options& opts, const CascadeOptions& cascade) {
    Run run("cascade", opts);
    const CrystalConfig cfg = run.load();
    const std::uint64_t seed = opts.seed.value_or(1);
    run.manifest().seed = seed;
    run.manifest().parameters["samples"] = static_cast<double>(cascade.samples);
    run.manifest().parameters["rate_per_m"] = cascade.rate;
    run.manifest().parameters["max_generations"] = cascade.max_generations;

    const DelayHistogram h =
        cascade.rate > 0.0
            ? sample_with_stimulation(cfg, cascade.samples, cascade.rate, cascade.max_generations, seed, cascade.bins)
            : sample_spontaneous(cfg, cascade.samples, seed, cascade.bins);
    write_csv(h, run.output("cascade_histogram.csv"), run.meta());
    run.manifest().parameters["tail_fraction"] = tail_fraction(h, cfg);
    if (cascade.rate == 0.0) {
        const KsReport ks = compare_to_rect(h, cfg);
        run.manifest().parameters["ks_statistic"] = ks.statistic;
        run.manifest().parameters["outside_support"] = static_cast<double>(ks.outside_support);
    }
    return run.finish();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counterpropagating twin-beam and mirrorless OPO model", "mopo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    Options opts;
    std::string eps_csv;
    bool exact = false, linear = false;
    auto common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config, "crystal config file (INI)");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out, "output directory");
        sub->add_option("--seed", opts.seed, "64-bit RNG seed");
        sub->add_option("--grid-points", opts.grid_points, "frequency samples for spectra")->check(CLI::Range(3, 1 << 24));
        sub->add_option("--eps-list", eps_csv, "comma separated epsilon values");
        auto* e = sub->add_flag("--exact-phase", exact, "full dispersion in the propagation phase (default)");
        auto* l = sub->add_flag("--linear-phase", linear, "propagation phase linearized as delta_t_A * Omega");
        e->excludes(l);
    };

    std::string figure;
    auto* fig = app.add_subcommand("figure", "write figure datasets");
    fig->add_option("name", figure, "fig2 | fig3 | fig4 | fig5 | fig6")->required()->check(CLI::IsMember(figure_names));
    common(fig, true);

    auto* scan = app.add_subcommand("scan", "critical slowing-down scan over epsilon");
    common(scan, true);

    auto* validate = app.add_subcommand("validate", "run the self-consistency checks on a config");
    common(validate, true);

    CascadeOptions cascade;
    auto* mc = app.add_subcommand("cascade", "Monte Carlo delay histogram");
    common(mc, true);
    mc->add_option("--samples", cascade.samples, "number of primary pairs")->check(CLI::PositiveNumber);
    mc->add_option("--rate", cascade.rate, "stimulated branching rate per metre")->check(CLI::NonNegativeNumber);
    mc->add_option("--max-generations", cascade.max_generations, "cascade depth limit")->check(CLI::PositiveNumber);
    mc->add_option("--bins", cascade.bins, "histogram bins")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }
    if (linear) opts.phase = PhaseModel::linear;

    try {
        if (!eps_csv.empty()) {
            std::stringstream ss(eps_csv);
            std::string item;
            while (std::getline(ss, item, ',')) {
                double v = 0.0;
                const char* b = item.data();
                while (*b == ' ') ++b;
                auto [p, ec] = std::from_chars(b, item.data() + item.size(), v);
                if (ec != std::errc{} || p != item.data() + item.size() || !(v > 0.0) || !(v < half_pi))
                    throw ConfigError("--eps-list: '" + item + "' is not a number in (0, pi/2)");
                opts.eps_list.push_back(v);
            }
        }

        RunManifest m;
        if (*fig) {
            m = cmd_figure(figure, opts);
        } else if (*scan) {
            std::vector<std::string> failures;
            m = cmd_scan(opts, &failures);
            for (const auto& f : failures) err << "scan row failed: " << f << '\n';
            for (const auto& o : m.outputs) out << (opts.out / o).string() << '\n';
            return failures.empty() ? exit_ok : exit_numeric;
        } else if (*validate) {
            const ValidationReport r = cmd_validate(opts);
            for (const auto& c : r.checks) out << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.detail << '\n';
            if (!opts.out.empty() && opts.out != ".") {
                std::filesystem::create_directories(opts.out);
                nlohmann::json j = nlohmann::json::array();
                for (const auto& c : r.checks) j.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
                std::ofstream(opts.out / "validate.json") << j.dump(2) << '\n';
            }
            return r.ok() ? exit_ok : exit_validation;
        } else {
            m = cmd_cascade(opts, cascade);
        }
        for (const auto& o : m.outputs) out << (opts.out / o).string() << '\n';
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "dispersion domain error: " << e.what() << '\n';
        return exit_config;
    } catch (const ThresholdError& e) {
        err << "threshold error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "file error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    }
}

}  // namespace mopo::cli
