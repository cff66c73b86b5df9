#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stralg/bands.hpp"
#include "stralg/hammock.hpp"

namespace stralg {

// A hammock viewed through one band class B: houses the membership sets
// St/OSt/OST, the condensation maps, the OST-neighbour operators and their
// limits, centers and the beam decomposition.
struct BContext {
    BContext(BandSystem& system, HammockKey k, int cls);

    BandSystem& bs;
    HammockKey key;
    int cls;
    Str min_str, max_str;  // extremal hammock elements m_i, M_i
    size_t cap = 1000000;  // OOM guard for enumerations

    bool in_hammock(const Str& x) const;
    // The class is minimal among reachable_classes(key) under the Q^Ba order.
    bool minimal();
};

struct StOstReport {
    bool st_minus = false, st_plus = false;    // x in St_j(B)
    bool ost_minus = false, ost_plus = false;  // x in OST_j (hammock-relative)
};
StOstReport st_ost_membership(BContext& ctx, const Str& x);

bool ost_member(BContext& ctx, const Str& x, int j);
bool ost_pm1(BContext& ctx, const Str& x);  // OST_1 intersect OST_{-1}
bool stb_pm1(BContext& ctx, const Str& x);  // St_{+-1}(B) intersect hammock

// c_B(x): the longest left substring of x in OST; phi in {-1, 0, +1} locates
// c_B(x) among the one-sided OST parts; C_B (minimal contexts only) walks the
// l_B orbit back to the two-sided element generating it.
struct CondenseResult {
    Str cB;
    int phi = 0;
    std::optional<Str> CB;
};
CondenseResult condense(BContext& ctx, const Str& x, bool with_CB = true);

// l_B(x) = c_B(l(x)) for x in OST_1 (succ) and the dual for OST_{-1} (pred):
// the immediate neighbour of x inside OST.  nullopt at the blocked extreme.
std::optional<Str> ost_neighbor(BContext& ctx, const Str& x, bool succ);

// ^inf(period) . stem: the left N-string obtained by repeating `period`
// (syllables listed bottom-up) on top of the finite string `stem`; `base`
// records the string whose limit this is.
struct AlmostPeriodic {
    Str stem;
    std::vector<Letter> period;
    Str base;

    Str period_str() const;  // the period word as a standalone cyclic string
    std::string to_string() const;
    bool operator==(const AlmostPeriodic& o) const;
};

// Limit of iterating `step` from `start`, detected through ExtState
// recurrence and verified by replaying one further period.  nullopt when no
// periodic tail appears within max_steps (honest partial answer).
std::optional<AlmostPeriodic> iterate_limit(
    const Automaton& aut, const Str& start,
    const std::function<std::optional<Str>(const Str&)>& step,
    size_t max_steps = 4096);

// <1, l_B>(x) (succ) / <1, lbar_B>(x) (pred).
std::optional<AlmostPeriodic> ost_limit(BContext& ctx, const Str& x, bool succ);
// <1, l>(x) / <1, lbar>(x) over the plain hammock operators.
std::optional<AlmostPeriodic> plain_limit(const HammockKey& key, const Str& x,
                                          bool succ);

// Is `band` (any band whose powers feed the class, not necessarily prime) in
// Ba_l (bar = false) resp. Ba_lbar (bar = true): no non-domestic exit by a
// direct (resp. inverse) letter.
bool band_in_ba(BandSystem& bs, int cls, const Str& band, bool bar);

// Exits of the class's bands and the subsets Ba_l / Ba_lbar.
struct BandExit {
    Letter beta;
    Str rotation;  // the cycle b' being exited
    bool nondomestic = false;
};
struct BandEnds {
    std::vector<Str> ba_l, ba_lbar;  // canonical rotations
    std::vector<std::pair<Str, std::vector<BandExit>>> exits;  // per prime
};
BandEnds band_ends(BandSystem& bs, int cls);

// x equiv_B y: the two distinct one-letter extensions agree.
bool b_equivalent(const Str& x, const Str& y);

// The B-center criterion: some syllable gamma with the same left signature
// as x lies in St_{+-1}(B) and both alpha.gamma, beta.gamma in Ext(B), where
// (alpha, beta) are the two extensions of x.  Requires x in StB_{+-1}.
bool is_center(BContext& ctx, const Str& x);

struct CenterClass {
    Letter alpha, beta;  // the defining extension pair
    Str representative;  // shortest hammock witness
};

struct BeamReport {
    std::vector<Str> boundaries;              // OST_{+-1} minus centers, sorted
    std::vector<std::pair<Str, Str>> beams;   // consecutive boundary pairs
    int kB = 0;
    std::vector<CenterClass> centerClasses;
    std::vector<Str> endLow, endHigh;  // c_B of the two finite end segments
};
// Requires ctx minimal for its key.
BeamReport beam_structure(BContext& ctx);

// The finite set OST minus STB (exact; requires ctx minimal), sorted by <_l.
std::vector<Str> ost_minus_stb(BContext& ctx);

}  // namespace stralg
