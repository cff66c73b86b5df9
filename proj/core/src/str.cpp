#include "stralg/str.hpp"

#include <cassert>
#include <sstream>

namespace stralg {

Str Str::zero(const AlgebraSpec& spec, int vertex, int parity) {
    Str s;
    s.spec = &spec;
    s.zero_vertex = vertex;
    s.zero_parity = parity;
    return s;
}

Str Str::raw(const AlgebraSpec& spec, std::vector<Letter> syllables) {
    Str s;
    s.spec = &spec;
    s.syl = std::move(syllables);
    return s;
}

int Str::source() const {
    return syl.empty() ? zero_vertex : spec->letter_source(syl.front());
}

int Str::target() const {
    return syl.empty() ? zero_vertex : spec->letter_target(syl.back());
}

int Str::eps_left() const {
    return syl.empty() ? zero_parity : spec->letter_epsilon(syl.back());
}

int Str::theta() const {
    assert(!syl.empty());
    return syl.front().inverse() ? 1 : -1;
}

int Str::delta() const {
    bool direct = false, inverse = false;
    for (Letter l : syl) (l.inverse() ? inverse : direct) = true;
    if (inverse && !direct) return 1;
    if (direct && !inverse) return -1;
    return 0;
}

int Str::theta_rel(const Str& base) const {
    if (size() == base.size()) return 0;
    assert(size() > base.size());
    return syl[base.size()].inverse() ? 1 : -1;
}

Str Str::left_substring(size_t len) const {
    assert(len <= size());
    if (len == size()) return *this;
    if (len == 0) {
        // The zero string this word extends: prepending syl[0] must be legal.
        return zero(*spec, source(), -spec->letter_sigma(syl.front()));
    }
    Str s;
    s.spec = spec;
    s.syl.assign(syl.begin(), syl.begin() + len);
    return s;
}

bool Str::has_left_substring(const Str& y) const {
    if (y.size() > size()) return false;
    return left_substring(y.size()) == y;
}

Str Str::inverted() const {
    if (syl.empty()) return zero(*spec, zero_vertex, -zero_parity);
    Str s;
    s.spec = spec;
    s.syl.reserve(syl.size());
    for (size_t k = syl.size(); k-- > 0;) s.syl.push_back(syl[k].inverted());
    return s;
}

std::string Str::to_string() const {
    if (syl.empty()) {
        std::ostringstream out;
        out << "1(" << spec->vertices[zero_vertex] << ","
            << (zero_parity > 0 ? "+" : "-") << ")";
        return out.str();
    }
    std::string out;
    for (size_t k = syl.size(); k-- > 0;) {
        out += spec->letter_name(syl[k]);
        if (k != 0) out += ".";
    }
    return out;
}

size_t Str::hash() const {
    size_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&](size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    if (syl.empty()) {
        mix((size_t)zero_vertex * 2 + (zero_parity > 0));
        mix(0xffffffffull);
    } else {
        for (Letter l : syl) mix((size_t)l.code);
    }
    return h;
}

namespace {

// Does the factor at positions [k+1 .. k+len] (0-based syl[k..k+len-1]) equal
// a relation or an inverse relation?
bool factor_is_relation(const AlgebraSpec& spec, const std::vector<Letter>& syl,
                        size_t k, std::string* error) {
    for (const auto& r : spec.relations) {
        size_t m = r.size();
        if (k + m > syl.size()) continue;
        bool direct_match = true, inverse_match = true;
        for (size_t j = 0; j < m && (direct_match || inverse_match); ++j) {
            Letter l = syl[k + j];
            if (l.inverse() || l.arrow() != r[j]) direct_match = false;
            // Inverse relation: all letters inverse, arrows in reversed order.
            Letter li = syl[k + j];
            if (!li.inverse() || li.arrow() != r[m - 1 - j]) inverse_match = false;
        }
        if (direct_match || inverse_match) {
            if (error) {
                std::string name;
                for (size_t j = m; j-- > 0;) {
                    name += spec.letter_name(syl[k + j]);
                    if (j != 0) name += ".";
                }
                *error = std::string(direct_match ? "relation factor " :
                                                    "inverse relation factor ") + name;
            }
            return true;
        }
    }
    return false;
}

// Checks the junction between positions k and k+1 (syl[k-1], syl[k]).
bool junction_ok(const AlgebraSpec& spec, Letter lo, Letter hi, std::string* error) {
    if (spec.letter_source(hi) != spec.letter_target(lo)) {
        if (error)
            *error = "non-composable pair " + spec.letter_name(hi) + "." +
                     spec.letter_name(lo);
        return false;
    }
    if (hi == lo.inverted()) {
        if (error)
            *error = "cancellation " + spec.letter_name(hi) + "." + spec.letter_name(lo);
        return false;
    }
    if (spec.letter_sigma(hi) != -spec.letter_epsilon(lo)) {
        if (error)
            *error = "sign clash " + spec.letter_name(hi) + "." + spec.letter_name(lo);
        return false;
    }
    return true;
}

}  // namespace

std::optional<Str> mk_string(const AlgebraSpec& spec,
                             const std::vector<Letter>& syllables,
                             std::string* error) {
    for (size_t k = 0; k + 1 < syllables.size(); ++k)
        if (!junction_ok(spec, syllables[k], syllables[k + 1], error)) return std::nullopt;
    for (size_t k = 0; k < syllables.size(); ++k)
        if (factor_is_relation(spec, syllables, k, error)) return std::nullopt;
    return Str::raw(spec, syllables);
}

std::optional<Str> parse_str(const AlgebraSpec& spec, std::string_view text,
                             std::string* error) {
    std::string s(text);
    // Zero strings: 1(v,+) / 1(v,-)
    if (!s.empty() && s[0] == '1' && s.find('(') != std::string::npos) {
        auto open = s.find('(');
        auto comma = s.find(',');
        auto close = s.find(')');
        if (open == std::string::npos || comma == std::string::npos ||
            close == std::string::npos || !(open < comma && comma < close)) {
            if (error) *error = "malformed zero-string literal";
            return std::nullopt;
        }
        std::string vname = s.substr(open + 1, comma - open - 1);
        std::string par = s.substr(comma + 1, close - comma - 1);
        int v = spec.vertex_id(vname);
        if (v < 0) {
            if (error) *error = "unknown vertex " + vname;
            return std::nullopt;
        }
        if (par != "+" && par != "-" && par != "+1" && par != "-1") {
            if (error) *error = "parity must be + or -";
            return std::nullopt;
        }
        return Str::zero(spec, v, par[0] == '+' ? 1 : -1);
    }

    std::vector<Letter> tokens;  // leftmost-first as written
    std::string cur;
    auto flush = [&]() -> bool {
        if (cur.empty()) {
            if (error) *error = "empty syllable token";
            return false;
        }
        bool inv = cur.back() == '\'';
        std::string name = inv ? cur.substr(0, cur.size() - 1) : cur;
        int id = spec.arrow_id(name);
        if (id < 0) {
            if (error) *error = "unknown arrow " + name;
            return false;
        }
        tokens.push_back(Letter(id, inv));
        cur.clear();
        return true;
    };
    for (char c : s) {
        if (c == '.') {
            if (!flush()) return std::nullopt;
        } else if (!isspace((unsigned char)c)) {
            cur += c;
        }
    }
    if (!flush()) return std::nullopt;
    // Written left to right; position order is the reverse.
    std::vector<Letter> syllables(tokens.rbegin(), tokens.rend());
    return mk_string(spec, syllables, error);
}

std::optional<Str> concat_left(const Str& u, const Str& x, std::string* error) {
    const AlgebraSpec& spec = *x.spec;
    if (u.is_zero()) {
        if (u.zero_vertex != x.target() || u.zero_parity != x.eps_left()) {
            if (error) *error = "zero-string factor does not match the left end";
            return std::nullopt;
        }
        return x;
    }
    if (x.is_zero()) {
        Letter first = u.syl.front();
        if (spec.letter_source(first) != x.zero_vertex ||
            spec.letter_sigma(first) != -x.zero_parity) {
            if (error) *error = "word does not extend the zero string";
            return std::nullopt;
        }
        return u;
    }
    std::vector<Letter> joined = x.syl;
    joined.insert(joined.end(), u.syl.begin(), u.syl.end());
    // Only the junction window needs rechecking: pair condition at the seam
    // plus relation factors overlapping it.
    size_t seam = x.size();  // joined[seam-1] | joined[seam]
    if (!junction_ok(spec, joined[seam - 1], joined[seam], error)) return std::nullopt;
    size_t W = (size_t)spec.window();
    size_t lo = seam >= W ? seam - W : 0;
    for (size_t k = lo; k < seam && k < joined.size(); ++k)
        if (factor_is_relation(spec, joined, k, error)) return std::nullopt;
    return Str::raw(spec, std::move(joined));
}

std::optional<Str> common_left_substring(const Str& x, const Str& y) {
    size_t k = 0;
    while (k < x.size() && k < y.size() && x.syl[k] == y.syl[k]) ++k;
    Str mx = x.left_substring(k);
    Str my = y.left_substring(k);
    if (!(mx == my)) return std::nullopt;  // distinct zero-string bases
    return mx;
}

bool can_prepend(const Str& x, Letter l) {
    const AlgebraSpec& spec = *x.spec;
    if (spec.letter_source(l) != x.target()) return false;
    if (spec.letter_sigma(l) != -x.eps_left()) return false;
    if (!x.syl.empty() && l == x.syl.back().inverted()) return false;
    // Relation factors ending at the new position; the window bounds how far
    // back a relation can reach.
    size_t W = (size_t)spec.window();
    size_t keep = std::min(x.size(), W);
    std::vector<Letter> tail(x.syl.end() - keep, x.syl.end());
    tail.push_back(l);
    for (size_t k = 0; k < tail.size(); ++k)
        if (factor_is_relation(spec, tail, k, nullptr)) return false;
    return true;
}

Str prepend(const Str& x, Letter l) {
    assert(can_prepend(x, l));
    Str s;
    s.spec = x.spec;
    s.syl = x.syl;
    s.syl.push_back(l);
    return s;
}

}  // namespace stralg
