#include "mopo/csv.hpp"

#include "mopo/errors.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace mopo {

std::string format_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& schema,
                     const std::vector<std::pair<std::string, std::string>>& metadata,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
    if (!out_) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out_ << "# schema: " << schema << '\n';
    for (const auto& [key, value] : metadata) out_ << "# " << key << '=' << value << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error("CSV row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw ConfigError("CSV has no column '" + name + "'");
}

std::string CsvTable::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return {};
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    CsvTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# schema: ", 0) == 0) {
            table.schema = line.substr(10);
        } else if (line.rfind("# ", 0) == 0) {
            auto eq = line.find('=');
            if (eq != std::string::npos) table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
        } else if (table.columns.empty()) {
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
        } else {
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace mopo
