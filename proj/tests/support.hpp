#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gplus/fingerprint.hpp"

namespace testsupport {

inline std::filesystem::path fixture_dir() {
    return std::filesystem::path(GPLUS_TEST_DATA_DIR) / "mini";
}

/// Scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (int attempt = 0; attempt < 100; ++attempt) {
            auto candidate = base / ("gplus-test-" + std::to_string(rd()));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create scratch directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Copies the mini fixture into `dir` so individual files can be patched.
inline std::filesystem::path clone_fixture(const TempDir& dir) {
    for (const auto& entry : std::filesystem::directory_iterator(fixture_dir())) {
        std::filesystem::copy_file(entry.path(), dir.path() / entry.path().filename());
    }
    return dir.path();
}

/// Levels quantized to multiples of 0.5 so exact ties occur often.
inline gplus::Fingerprint random_fingerprint(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_int_distribution<int> step(0, 14);
    std::vector<double> levels(dim);
    for (double& v : levels) v = static_cast<double>(step(rng)) * 0.5;
    return gplus::Fingerprint(std::move(levels));
}

}  // namespace testsupport
