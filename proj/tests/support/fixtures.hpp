#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace fixture {

inline std::string path(const std::string& name) { return std::string(SCENEKGE_FIXTURE_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline const char* const kAll[] = {"scene_example.nt", "literals.nt", "types_and_paths.nt"};

}  // namespace fixture
