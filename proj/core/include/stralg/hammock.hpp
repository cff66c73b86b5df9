#pragma once

#include <optional>
#include <vector>

#include "stralg/str.hpp"

namespace stralg {

// H_l^i(x0): the base string together with the side sign i.
struct HammockKey {
    Str base;
    int side = 1;  // +1 or -1
};

// Three-clause hammock comparison; -1/0/+1 for x <_l y, x = y, x >_l y.
// nullopt when x and y do not extend a common base.
std::optional<int> compare_l(const Str& x, const Str& y);

// (min, max) of H_l^i(x0), computed by greedy one-sided extension.
std::pair<Str, Str> extremal_strings(const HammockKey& key);

// Immediate neighbours within H_l^i(x0); nullopt at the extremes.
std::optional<Str> succ_l(const HammockKey& key, const Str& x);
std::optional<Str> pred_l(const HammockKey& key, const Str& x);

// Every hammock element of total length <= cap (the base always included),
// sorted by compare_l.  Brute-force oracle used by the tests and the CLI.
std::vector<Str> enumerate_hammock(const HammockKey& key, size_t cap);

// The unique minimal-length element of [a, b]; nullopt on a malformed
// interval.
std::optional<Str> interval_pivot(const Str& a, const Str& b);

}  // namespace stralg
