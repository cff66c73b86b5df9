#include "stralg/hammock.hpp"

#include <algorithm>
#include <queue>

namespace stralg {

namespace {

// The unique one-letter extension of x of the requested direction, if any.
std::optional<Letter> extension(const Str& x, bool inverse) {
    const AlgebraSpec& spec = *x.spec;
    for (size_t a = 0; a < spec.arrows.size(); ++a) {
        Letter l((int)a, inverse);
        if (can_prepend(x, l)) return l;
    }
    return std::nullopt;
}

Str greedy(const Str& x, bool inverse) {
    Str y = x;
    while (auto l = extension(y, inverse)) y = prepend(y, *l);
    return y;
}

}  // namespace

std::optional<int> compare_l(const Str& x, const Str& y) {
    auto m = common_left_substring(x, y);
    if (!m) return std::nullopt;
    int kx = x.theta_rel(*m);
    int ky = y.theta_rel(*m);
    return kx < ky ? -1 : kx > ky ? 1 : 0;
}

std::pair<Str, Str> extremal_strings(const HammockKey& key) {
    if (key.side > 0) return {key.base, greedy(key.base, true)};
    return {greedy(key.base, false), key.base};
}

std::optional<Str> succ_l(const HammockKey& key, const Str& x) {
    if (key.side < 0 && x == key.base) return std::nullopt;
    if (auto a = extension(x, true)) return greedy(prepend(x, *a), false);
    // Successor is shorter: drop the maximal all-inverse left part plus one
    // direct syllable, staying above the base.
    for (size_t len = x.size(); len-- > key.base.size();)
        if (!x.syl[len].inverse()) return x.left_substring(len);
    return std::nullopt;
}

std::optional<Str> pred_l(const HammockKey& key, const Str& x) {
    if (key.side > 0 && x == key.base) return std::nullopt;
    if (auto b = extension(x, false)) return greedy(prepend(x, *b), true);
    for (size_t len = x.size(); len-- > key.base.size();)
        if (x.syl[len].inverse()) return x.left_substring(len);
    return std::nullopt;
}

std::vector<Str> enumerate_hammock(const HammockKey& key, size_t cap) {
    std::vector<Str> out{key.base};
    std::queue<Str> q;
    q.push(key.base);
    while (!q.empty()) {
        Str y = q.front();
        q.pop();
        if (y.size() >= cap) continue;
        for (bool inv : {false, true}) {
            auto l = extension(y, inv);
            if (!l) continue;
            if (y == key.base) {
                int sign = inv ? 1 : -1;
                if (sign != key.side) continue;
            }
            Str z = prepend(y, *l);
            out.push_back(z);
            q.push(z);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Str& a, const Str& b) { return *compare_l(a, b) < 0; });
    return out;
}

std::optional<Str> interval_pivot(const Str& a, const Str& b) {
    auto c = compare_l(a, b);
    if (!c || *c > 0) return std::nullopt;
    return common_left_substring(a, b);
}

}  // namespace stralg
