#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "quantum/composer.hpp"
#include "quantum/native.hpp"
#include "quantum/xmi.hpp"

namespace testing_support {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string model_path(const std::string& name) { return std::string(QUANTUM_MODELS_DIR) + "/" + name; }

inline quantum::QumModel native(const std::string& text) { return quantum::validate_or_throw(quantum::parse_native(text)); }

inline quantum::QumModel airbag() { return native(slurp(model_path("airbag.qum"))); }

inline quantum::QumModel airbag_xmi() { return quantum::validate_or_throw(quantum::parse_xmi(slurp(model_path("airbag.xmi")))); }

/// One component with a single failure transition Ok -> Failed at `rate`.
inline std::string two_state(const std::string& name = "MC", double rate = 0.01) {
    std::ostringstream s;
    s << "model Tiny\ncomponent " << name << " {\n"
      << "  machine normal Behavior { initial Ok state Ok }\n"
      << "  machine failure Broken { initial Failed state Failed tag down OR\n"
      << "    transition fail : failure * -> Failed rate " << rate << " }\n}\n";
    return s.str();
}

}  // namespace testing_support
