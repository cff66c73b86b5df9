#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stralg/algebra.hpp"

namespace stralg {

// A finite string: a word of syllables read right to left (syl[0] is the
// first, i.e. rightmost-written, syllable), or a parity-tagged zero-length
// string 1_{(v,j)}.  Immutable value semantics; equality is structural.
class Str {
public:
    Str() = default;

    static Str zero(const AlgebraSpec& spec, int vertex, int parity);
    // Builds from syllables given in position order (syl[0] first); performs
    // no validation -- use mk_string for untrusted input.
    static Str raw(const AlgebraSpec& spec, std::vector<Letter> syllables);

    const AlgebraSpec* spec = nullptr;
    std::vector<Letter> syl;
    int zero_vertex = -1;
    int zero_parity = 0;

    size_t size() const { return syl.size(); }
    bool is_zero() const { return syl.empty(); }

    // Walk endpoints: source is the right end, target the left end.
    int source() const;
    int target() const;

    // Sign data of the left end; for 1_{(v,j)} the stored parity doubles as
    // epsilon so that "prepend lambda iff sigma(lambda) = -eps_left" holds
    // uniformly for strings of every length.
    int eps_left() const;

    int theta() const;              // requires size() > 0
    int delta() const;              // +1 all inverse, -1 all direct, 0 mixed
    int theta_rel(const Str& base) const;  // theta(x | base), 0 when x == base

    // The left substring of length len (positions 1..len); len 0 yields the
    // zero string this word extends.
    Str left_substring(size_t len) const;
    bool has_left_substring(const Str& y) const;  // y sqsubseteq_l this

    Str inverted() const;

    bool operator==(const Str& o) const {
        return syl == o.syl && (!syl.empty() || (zero_vertex == o.zero_vertex &&
                                                 zero_parity == o.zero_parity));
    }

    std::string to_string() const;  // dot-separated, leftmost token last syllable
    size_t hash() const;
};

struct StrHash {
    size_t operator()(const Str& s) const { return s.hash(); }
};

// Validates a full word; on failure *error names the offending factor.
std::optional<Str> mk_string(const AlgebraSpec& spec,
                             const std::vector<Letter>& syllables,
                             std::string* error = nullptr);

// Parses the literal grammar: dot-separated arrow names written left to
// right (leftmost token is the LAST syllable), ' marks an inverse letter,
// zero strings are 1(v,+) / 1(v,-).
std::optional<Str> parse_str(const AlgebraSpec& spec, std::string_view text,
                             std::string* error = nullptr);

// u . x; revalidates only the junction window.
std::optional<Str> concat_left(const Str& u, const Str& x,
                               std::string* error = nullptr);

// x sqcap_l y; nullopt when the two words do not extend a common base.
std::optional<Str> common_left_substring(const Str& x, const Str& y);

// Single-letter left extension with full validity checking against the
// window; the workhorse behind the extension automaton.
bool can_prepend(const Str& x, Letter l);
Str prepend(const Str& x, Letter l);  // asserts can_prepend

}  // namespace stralg
