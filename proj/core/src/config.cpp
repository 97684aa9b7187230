#include "mopo/config.hpp"

#include "mopo/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <sstream>

namespace mopo {

namespace pt = boost::property_tree;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': cannot parse number from '" + cell + "'");
        }
    }
    return out;
}

double get_number(const pt::ptree& tree, const std::string& key) {
    auto v = tree.get_optional<std::string>(key);
    if (!v) throw ConfigError("missing key '" + key + "'");
    auto list = parse_list(*v, key);
    if (list.size() != 1) throw ConfigError("key '" + key + "' expects a single number");
    return list.front();
}

pt::ptree read_ini_text(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.message() + " (line " +
                          std::to_string(e.line()) + ")");
    }
    return tree;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WaveIndex parse_wave(const pt::ptree& section, const std::string& label) {
    const std::string form = section.get<std::string>("form", "sellmeier");
    auto range_text = section.get_optional<std::string>("range_um");
    if (!range_text) throw ConfigError("[" + label + "] missing range_um");
    auto range = parse_list(*range_text, label + ".range_um");
    if (range.size() != 2 || !(range[0] > 0.0) || !(range[1] > range[0]))
        throw ConfigError("[" + label + "] range_um must be 'lo, hi' with 0 < lo < hi");

    if (form == "sellmeier") {
        auto coeff_text = section.get_optional<std::string>("coefficients");
        if (!coeff_text) throw ConfigError("[" + label + "] missing coefficients");
        auto c = parse_list(*coeff_text, label + ".coefficients");
        if (c.empty() || c.size() % 2 != 1)
            throw ConfigError("[" + label + "] coefficients must be A followed by (B, C) pairs");
        SellmeierIndex idx;
        idx.a = c[0];
        for (std::size_t i = 1; i + 1 < c.size(); i += 2) idx.poles.emplace_back(c[i], c[i + 1]);
        idx.ir = section.get_optional<std::string>("ir_term") ? get_number(section, "ir_term") : 0.0;
        idx.min_um = range[0];
        idx.max_um = range[1];
        return idx;
    }
    if (form == "linear") {
        LinearIndex idx;
        idx.reference_um = get_number(section, "reference_um");
        idx.phase_index = get_number(section, "phase_index");
        idx.group_index = get_number(section, "group_index");
        idx.min_um = range[0];
        idx.max_um = range[1];
        return idx;
    }
    throw ConfigError("[" + label + "] unknown form '" + form + "'");
}

}  // namespace

DispersionModel parse_dispersion_set(const std::string& text) {
    const pt::ptree tree = read_ini_text(text);
    DispersionModel model;
    if (auto meta = tree.get_child_optional("meta")) {
        model.name = meta->get<std::string>("name", "");
        model.version = meta->get<std::string>("version", "");
        model.provenance = meta->get<std::string>("provenance", "");
        if (meta->get_optional<std::string>("temperature_c")) model.temperature_c = get_number(*meta, "temperature_c");
    }
    if (model.name.empty()) throw ConfigError("dispersion set needs [meta] name");
    for (Wave w : {Wave::signal, Wave::idler, Wave::pump}) {
        const std::string label = to_string(w);
        auto section = tree.get_child_optional(label);
        if (!section) throw ConfigError("dispersion set lacks section [" + label + "]");
        model.waves[static_cast<int>(w)] = parse_wave(*section, label);
        model.polarization[static_cast<int>(w)] = section->get<std::string>("polarization", "e");
    }
    return model;
}

DispersionModel load_dispersion_set(const std::filesystem::path& path) {
    return parse_dispersion_set(slurp(path));
}

CrystalConfigFile parse_crystal_config(const std::string& text, const std::filesystem::path& base_dir) {
    const pt::ptree tree = read_ini_text(text);
    CrystalConfigFile f;
    f.length_mm = get_number(tree, "length_mm");
    f.lambda_p_nm = get_number(tree, "lambda_p_nm");
    f.lambda_s_nm = get_number(tree, "lambda_s_nm");
    f.gain = get_number(tree, "gain");
    auto set = tree.get_optional<std::string>("dispersion_set");
    if (!set || set->empty()) throw ConfigError("missing key 'dispersion_set'");
    f.dispersion_set = *set;
    if (tree.get_optional<std::string>("poling_period_nm")) f.poling_period_nm = get_number(tree, "poling_period_nm");
    if (tree.get_optional<std::string>("pump_phase_rad")) f.pump_phase_rad = get_number(tree, "pump_phase_rad");
    f.base_dir = base_dir;
    return f;
}

CrystalConfigFile read_crystal_config(const std::filesystem::path& path) {
    return parse_crystal_config(slurp(path), path.parent_path());
}

CrystalConfig resolve(const CrystalConfigFile& file) {
    std::filesystem::path set_path = file.dispersion_set;
    if (set_path.is_relative() && !file.base_dir.empty()) set_path = file.base_dir / set_path;
    DispersionModel model = load_dispersion_set(set_path);

    std::optional<double> period;
    if (file.poling_period_nm) period = *file.poling_period_nm * 1e-9;
    CrystalConfig cfg = CrystalConfig::make(file.length_mm * 1e-3, file.lambda_p_nm * 1e-9,
                                            file.lambda_s_nm * 1e-9, file.gain, std::move(model), period);
    cfg.pump_phase = file.pump_phase_rad;
    // Touch every central wavenumber so range errors surface at load time.
    for (Wave w : {Wave::signal, Wave::idler, Wave::pump}) (void)cfg.dispersion.k(w, cfg.omega(w));
    return cfg;
}

}  // namespace mopo
