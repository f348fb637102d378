// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bdproof/lmc.hpp"

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name + ".json";
}

inline std::shared_ptr<const bdproof::Lmc> load_fixture(const std::string& name) {
    return bdproof::load_lmc(read_file(fixture_path(name)));
}

inline bdproof::StateId sid(const char* name) {
    return bdproof::StateId::of(std::string(name));
}

inline bdproof::StateId sid(std::uint64_t n) {
    return bdproof::StateId::of(n);
}

inline bdproof::StateId sid(int n) {
    return bdproof::StateId::of(static_cast<std::uint64_t>(n));
}

inline bdproof::Rational rat(const char* text) {
    return bdproof::parse_rational(text);
}
