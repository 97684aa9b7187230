#include "mopo/classical.hpp"
#include "mopo/config.hpp"
#include "mopo/csv.hpp"
#include "mopo_cli/commands.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace mopo;
using namespace mopo::cli;

namespace {

const std::string ktp_config = (test::data_dir / "configs/ktp_reference.ini").string();

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mopo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string config_text(double g, const std::string& dispersion) {
    return "length_mm = 4\nlambda_p_nm = 821.4\nlambda_s_nm = 1141\ngain = " + std::to_string(g) +
           "\ndispersion_set = " + dispersion + "\n";
}

}  // namespace

TEST(Manifest, RoundTrip) {
    test::TempDir dir("manifest");
    RunManifest m;
    m.command = "figure fig6";
    m.config_path = "a/b.ini";
    m.config_hash = "abc";
    m.gain = 0.1 + 0.2;
    m.eps_list = {0.2, 0.1, 1.0 / 3.0};
    m.seed = 18446744073709551615ULL;
    m.grid_points = 16385;
    m.phase_model = "exact-phase";
    m.parameters["tau_gvs_ps"] = 24.951231038192276;
    m.outputs = {"x.csv", "y.csv"};
    m.wall_time_s = 1.25;
    m.started_at = "2026-01-01T00:00:00Z";
    write_manifest(m, dir.path() / "m.json");
    EXPECT_EQ(read_manifest(dir.path() / "m.json"), m);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, exit_config);
    EXPECT_EQ(invoke({"figure", "fig9", "--config", ktp_config}).code, exit_config);
    EXPECT_EQ(invoke({"figure", "fig2"}).code, exit_config);
    test::TempDir dir("cli");
    const auto r = invoke({"scan", "--config", ktp_config, "--out", dir.path().string()});
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("eps-list"), std::string::npos);
    EXPECT_EQ(invoke({"scan", "--config", ktp_config, "--eps-list", "0.1,abc"}).code, exit_config);
    EXPECT_EQ(invoke({"figure", "fig2", "--config", ktp_config, "--exact-phase", "--linear-phase"}).code,
              exit_config);
    EXPECT_EQ(invoke({"--help"}).code, exit_ok);
}

TEST(Cli, MissingConfigFile) {
    EXPECT_EQ(invoke({"figure", "fig3", "--config", "/nonexistent.ini"}).code, exit_config);
}

TEST(Cli, Figure2MatchesEfficiency) {
    test::TempDir dir("fig2");
    const auto r = invoke({"figure", "fig2", "--config", ktp_config, "--out", dir.path().string()});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const CsvTable t = read_csv(dir.path() / "fig2_efficiency.csv");
    bool seen_threshold = false;
    for (const auto& row : t.rows) {
        const double g = row[t.column("g")];
        EXPECT_EQ(row[t.column("eta")], efficiency(g));
        EXPECT_NEAR(row[t.column("eta_shooting")], row[t.column("eta")], 1e-6);
        if (g == std::numbers::pi / 2) {
            seen_threshold = true;
            EXPECT_EQ(row[t.column("eta")], 0.0);
        }
    }
    EXPECT_TRUE(seen_threshold);
}

TEST(Cli, Figure3Plateau) {
    test::TempDir dir("fig3");
    ASSERT_EQ(invoke({"figure", "fig3", "--config", ktp_config, "--out", dir.path().string()}).code, exit_ok);
    const CrystalConfig cfg = test::ktp(1e-3);
    const DerivedScales sc = derived_scales(cfg);
    const CsvTable t = read_csv(dir.path() / "fig3_biphoton.csv");
    double sum = 0.0;
    int n = 0;
    for (const auto& row : t.rows) {
        const double dt = row[t.column("dt_ps")] * 1e-12;
        if (std::abs(dt - sc.delta_t_a) < 0.5 * sc.tau_gvs) sum += row[t.column("abs_value")], ++n;
    }
    ASSERT_GT(n, 0);
    EXPECT_NEAR(sum / n / (1e-3 / (2 * sc.tau_gvs)), 1.0, 0.02);
    EXPECT_EQ(read_csv(dir.path() / "fig3_spectrum.csv").schema, "mopo.spectrum/1");
}

TEST(Cli, Figure6WidthsScaleWithEpsilon) {
    test::TempDir dir("fig6");
    ASSERT_EQ(invoke({"figure", "fig6", "--config", ktp_config, "--out", dir.path().string()}).code, exit_ok);
    const CsvTable t = read_csv(dir.path() / "fig6_widths.csv");
    ASSERT_EQ(t.rows.size(), 4u);
    const std::size_t e = t.column("epsilon"), w = t.column("hwhm_rad_per_s");
    for (std::size_t k = 1; k < t.rows.size(); ++k) {
        const double eps_ratio = t.rows[k - 1][e] / t.rows[k][e];
        const double width_ratio = t.rows[k - 1][w] / t.rows[k][w];
        EXPECT_NEAR(width_ratio / eps_ratio, 1.0, 0.1);
    }
    const RunManifest m = read_manifest(dir.path() / "manifest.json");
    EXPECT_EQ(m.outputs.size(), 9u);
    for (const auto& o : m.outputs) EXPECT_TRUE(std::filesystem::exists(dir.path() / o)) << o;
}

TEST(Cli, ScanLastColumn) {
    test::TempDir dir("scan");
    const auto r = invoke({"scan", "--config", ktp_config, "--eps-list", "0.2,0.1,0.05,0.02", "--out",
                           dir.path().string()});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const CsvTable t = read_csv(dir.path() / "scan.csv");
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_DOUBLE_EQ(t.rows[0][t.column("epsilon")], 0.2);
    for (const auto& row : t.rows) {
        EXPECT_EQ(row[t.column("ok")], 1.0);
        if (row[t.column("epsilon")] <= 0.05)
            EXPECT_NEAR(row[t.column("pi_eps_tau_corr_over_2tau_gvs")], 1.0, 0.1);
    }
    EXPECT_EQ(read_manifest(dir.path() / "manifest.json").eps_list, (std::vector<double>{0.2, 0.1, 0.05, 0.02}));
}

TEST(Cli, ValidateDefaultPasses) {
    const auto r = invoke({"validate", "--config", ktp_config});
    EXPECT_EQ(r.code, exit_ok) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, ValidateReportsThresholdViolation) {
    test::TempDir dir("val");
    const auto cfg = dir.write("hot.ini", config_text(1.6, (test::data_dir / "dispersion/ktp_z_kato2002.ini").string()));
    const auto r = invoke({"validate", "--config", cfg.string()});
    EXPECT_EQ(r.code, exit_validation);
    EXPECT_NE(r.out.find("threshold violation"), std::string::npos) << r.out;
}

TEST(Cli, ValidateReportsDispersionDomain) {
    test::TempDir dir("val");
    std::string set = "[meta]\nname = narrow\n";
    for (const char* w : {"signal", "idler", "pump"})
        set += std::string("[") + w +
               "]\nform = sellmeier\ncoefficients = 4.59423, 0.06206, 0.04763, 110.80672, 86.12171\n"
               "range_um = 0.43, 2.0\n";
    dir.write("narrow.ini", set);
    const auto cfg = dir.write("c.ini", config_text(0.1, "narrow.ini"));
    const auto r = invoke({"validate", "--config", cfg.string(), "--out", (dir.path() / "o").string()});
    EXPECT_EQ(r.code, exit_validation);
    EXPECT_NE(r.out.find("FAIL dispersion-domain"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("idler"), std::string::npos) << r.out;
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "o" / "validate.json"));
}

TEST(Cli, CascadeIsReproducible) {
    test::TempDir a("mc"), b("mc");
    for (const auto* d : {&a, &b})
        ASSERT_EQ(invoke({"cascade", "--config", ktp_config, "--seed", "123", "--samples", "20000", "--out",
                          d->path().string()})
                      .code,
                  exit_ok);
    EXPECT_EQ(slurp(a.path() / "cascade_histogram.csv"), slurp(b.path() / "cascade_histogram.csv"));
    const RunManifest m = read_manifest(a.path() / "manifest.json");
    EXPECT_EQ(m.seed, 123u);
    EXPECT_EQ(m.parameters.at("outside_support"), 0.0);
}

TEST(Cli, CascadeExplosionIsConfigError) {
    test::TempDir dir("mc");
    const auto r = invoke({"cascade", "--config", ktp_config, "--rate", "1e5", "--max-generations", "8", "--out",
                           dir.path().string()});
    EXPECT_EQ(r.code, exit_config);
}

TEST(Cli, ThresholdGainInFigureIsConfigError) {
    test::TempDir dir("fig");
    // Figures override g, so only fig2 and the scan depend on config g; an
    // impossible eps list is rejected up front.
    EXPECT_EQ(invoke({"scan", "--config", ktp_config, "--eps-list", "-0.1", "--out", dir.path().string()}).code,
              exit_config);
}
