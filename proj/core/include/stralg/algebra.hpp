#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stralg {

struct Arrow {
    std::string name;
    int source = -1;
    int target = -1;
};

// A syllable: an arrow taken forwards or backwards.  Packed so it can be used
// as an array index and compared cheaply.
struct Letter {
    int code = -1;

    Letter() = default;
    Letter(int arrow, bool inverse) : code(arrow * 2 + (inverse ? 1 : 0)) {}

    int arrow() const { return code / 2; }
    bool inverse() const { return code % 2 != 0; }
    Letter inverted() const { return Letter(arrow(), !inverse()); }

    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

// Quiver plus monomial relations plus the sign maps sigma/epsilon.
// Relations are stored with position 1 (the arrow applied first) at index 0,
// i.e. reversed with respect to the leftmost-last-applied file syntax.
struct AlgebraSpec {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::vector<int>> relations;
    std::vector<int> sigma;    // per arrow, +1 or -1; empty until solved
    std::vector<int> epsilon;  // per arrow
    bool signs_set = false;
    int max_relation_length = 0;

    std::unordered_map<std::string, int> vertex_index;
    std::unordered_map<std::string, int> arrow_index;

    int vertex_id(std::string_view name) const;
    int arrow_id(std::string_view name) const;
    void rebuild_indices();

    // Length of the left window that decides one-letter extensions.
    int window() const {
        return max_relation_length > 1 ? max_relation_length - 1 : 1;
    }

    // Walk endpoints and signs of a single letter.
    int letter_source(Letter l) const {
        const Arrow& a = arrows[l.arrow()];
        return l.inverse() ? a.target : a.source;
    }
    int letter_target(Letter l) const {
        const Arrow& a = arrows[l.arrow()];
        return l.inverse() ? a.source : a.target;
    }
    int letter_sigma(Letter l) const {
        return l.inverse() ? epsilon[l.arrow()] : sigma[l.arrow()];
    }
    int letter_epsilon(Letter l) const {
        return l.inverse() ? sigma[l.arrow()] : epsilon[l.arrow()];
    }
    std::string letter_name(Letter l) const {
        return l.inverse() ? arrows[l.arrow()].name + "'" : arrows[l.arrow()].name;
    }
    // Deterministic letter order: arrow name, direct before inverse.
    bool letter_less(Letter a, Letter b) const;
};

struct Diagnostic {
    int line = 0;  // 0 when the message is not tied to a source line
    std::string message;
};

struct ParseResult {
    std::optional<AlgebraSpec> spec;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return spec.has_value() && diagnostics.empty(); }
};

// Reads the sectioned text format ([vertices] / [arrows] / [relations] /
// optional [signs]).  If [signs] is absent the sign maps are solved for.
ParseResult parse_algebra(std::string_view text);

// Checks every AlgebraSpec invariant and reports all violations.
std::vector<Diagnostic> validate_algebra(const AlgebraSpec& spec);

// Fills sigma/epsilon with the first assignment (in arrow order, sigma before
// epsilon, +1 before -1) satisfying the sign constraints.  Returns false if
// no assignment exists.
bool solve_signs(AlgebraSpec& spec);

// Serializes back to the file format; parse(print(spec)) round-trips.
std::string print_algebra(const AlgebraSpec& spec);

}  // namespace stralg
