#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hdq::testing {

inline std::string fixture_dir() { return HDQ_FIXTURE_DIR; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string read_fixture(const std::string& name) {
    return read_file(fixture_dir() + "/" + name);
}

}  // namespace hdq::testing
