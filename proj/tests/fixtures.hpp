#pragma once

// Shared test helpers: loading the fixture algebras and parsing string
// literals with hard failure on any mistake in the test itself.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include <fstream>
#include <sstream>

#include "stralg/algebra.hpp"
#include "stralg/bands.hpp"
#include "stralg/str.hpp"

#ifndef STRALG_FIXTURE_DIR
#error "STRALG_FIXTURE_DIR must be defined by the build"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(STRALG_FIXTURE_DIR) + "/" + name + ".alg";
}

inline const stralg::AlgebraSpec& fixture(const std::string& name) {
    static std::map<std::string, std::unique_ptr<stralg::AlgebraSpec>> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return *it->second;
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    auto res = stralg::parse_algebra(ss.str());
    if (!res.ok()) {
        std::string msg = "fixture " + name + " failed to parse:";
        for (auto& d : res.diagnostics) msg += "\n  " + d.message;
        throw std::runtime_error(msg);
    }
    auto spec = std::make_unique<stralg::AlgebraSpec>(std::move(*res.spec));
    if (!spec->signs_set && !stralg::solve_signs(*spec))
        throw std::runtime_error("fixture " + name + ": no sign assignment");
    return *cache.emplace(name, std::move(spec)).first->second;
}

// One BandSystem per fixture, shared across tests (construction enumerates
// all prime bands, which is worth caching).
inline stralg::BandSystem& bands(const std::string& name) {
    static std::map<std::string, std::unique_ptr<stralg::BandSystem>> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return *it->second;
    auto bs = std::make_unique<stralg::BandSystem>(fixture(name));
    return *cache.emplace(name, std::move(bs)).first->second;
}

inline stralg::Str lit(const stralg::AlgebraSpec& spec, const std::string& text) {
    std::string err;
    auto s = stralg::parse_str(spec, text, &err);
    if (!s) throw std::runtime_error("bad literal '" + text + "': " + err);
    return *s;
}

inline stralg::Str lit(const std::string& fixture_name, const std::string& text) {
    return lit(fixture(fixture_name), text);
}

}  // namespace testutil
