#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace mopo {

/// CSV file with a versioned schema line, `# key=value` metadata lines and a
/// column header. Numbers are written with 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& schema,
              const std::vector<std::pair<std::string, std::string>>& metadata,
              const std::vector<std::string>& columns);

    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

std::string format_number(double v);

/// Parsed CSV: schema, metadata and numeric rows.
struct CsvTable {
    std::string schema;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
    std::string meta(const std::string& key) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace mopo
