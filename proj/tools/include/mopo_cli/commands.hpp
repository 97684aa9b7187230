#pragma once

#include "mopo/gain.hpp"
#include "mopo_cli/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mopo::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numeric = 3, exit_validation = 4 };

struct Options {
    std::filesystem::path config;
    std::filesystem::path out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_points;  // spectrum samples
    std::vector<double> eps_list;
    PhaseModel phase = PhaseModel::exact;
};

inline const std::vector<std::string> figure_names{"fig2", "fig3", "fig4", "fig5", "fig6"};

/// Writes the CSVs for one figure plus manifest.json into opts.out.
RunManifest cmd_figure(const std::string& name, const Options& opts);

/// Critical scan over opts.eps_list; writes scan.csv. Rows that failed are kept
/// with ok = 0 and reported in `failures`.
RunManifest cmd_scan(const Options& opts, std::vector<std::string>* failures = nullptr);

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool ok() const;
};

ValidationReport cmd_validate(const Options& opts);

struct CascadeOptions {
    std::uint64_t samples = 100000;
    double rate = 0.0;  // per metre
    unsigned max_generations = 4;
    std::size_t bins = 100;
};

RunManifest cmd_cascade(const Options& opts, const CascadeOptions& cascade);

/// Full command line: parses argv, runs the command, maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mopo::cli
