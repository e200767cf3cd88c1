#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stutter/fps.hpp"
#include "stutter/lts.hpp"

namespace fixtures {

inline std::string read_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string read(const std::string& name) { return read_path(std::string(STUTTER_DATA_DIR) + "/" + name); }

inline stutter::Lts lts(const std::string& stem) {
    auto l = stutter::parse_aut(read(stem + ".aut"));
    std::ifstream names(std::string(STUTTER_DATA_DIR) + "/" + stem + ".names");
    if (names) l.set_state_names(stutter::parse_state_names(read(stem + ".names"), l.num_states()));
    return l;
}

inline stutter::Fps fps(const std::string& stem) { return stutter::parse_fps(read(stem + ".fps")); }

}  // namespace fixtures
