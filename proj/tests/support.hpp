#pragma once

#include "mopo/config.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace mopo::test {

inline const std::filesystem::path data_dir = MOPO_DATA_DIR;

inline CrystalConfig ktp(double g) {
    CrystalConfig cfg = load_crystal_config(data_dir / "configs/ktp_reference.ini");
    cfg.gain = g;
    return cfg;
}

inline CrystalConfig toy(double g) {
    CrystalConfig cfg = load_crystal_config(data_dir / "configs/toy_linear.ini");
    cfg.gain = g;
    return cfg;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("mopo-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return path_ / name;
    }

private:
    std::filesystem::path path_;
};

}  // namespace mopo::test
