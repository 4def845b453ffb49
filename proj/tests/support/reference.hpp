#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

namespace leadix::gen {

/// The committed oracle output (tests/fixtures/reference.json).
inline const nlohmann::json& reference() {
    static const nlohmann::json data = [] {
        std::ifstream in(LEADIX_FIXTURE_DIR "/reference.json");
        if (!in) throw std::runtime_error("cannot open " LEADIX_FIXTURE_DIR "/reference.json");
        return nlohmann::json::parse(in);
    }();
    return data;
}

}  // namespace leadix::gen
