#include "stralg/condensation.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace stralg {

namespace {

// Orbit walks and recurrence detection are bounded by this many steps; the
// theory guarantees recurrence, the cap only guards against implementation
// bugs turning into hangs.
constexpr size_t kOrbitCap = 100000;

std::vector<Letter> extensions_of(const Str& x) {
    std::vector<Letter> out;
    for (size_t a = 0; a < x.spec->arrows.size(); ++a)
        for (bool inv : {false, true}) {
            Letter l((int)a, inv);
            if (can_prepend(x, l)) out.push_back(l);
        }
    return out;
}

}  // namespace

BContext::BContext(BandSystem& system, HammockKey k, int c)
    : bs(system), key(std::move(k)), cls(c) {
    auto mm = extremal_strings(key);
    min_str = mm.first;
    max_str = mm.second;
}

bool BContext::in_hammock(const Str& x) const {
    if (x == key.base) return true;
    if (x.size() <= key.base.size() || !x.has_left_substring(key.base))
        return false;
    int sign = x.syl[key.base.size()].inverse() ? 1 : -1;
    return sign == key.side;
}

bool BContext::minimal() {
    auto rep = bs.reachable_classes(key.base, key.side);
    return std::find(rep.minimal.begin(), rep.minimal.end(), cls) !=
           rep.minimal.end();
}

bool ost_member(BContext& ctx, const Str& x, int j) {
    if (ctx.bs.ost_membership(ctx.cls, x, j)) return true;
    // Boundary clause: left substrings of the extremal element on the j side.
    const Str& extremal = j > 0 ? ctx.max_str : ctx.min_str;
    return extremal.has_left_substring(x);
}

bool ost_pm1(BContext& ctx, const Str& x) {
    return ost_member(ctx, x, 1) && ost_member(ctx, x, -1);
}

bool stb_pm1(BContext& ctx, const Str& x) {
    return ctx.in_hammock(x) && ctx.bs.st_membership(ctx.cls, x, 1) &&
           ctx.bs.st_membership(ctx.cls, x, -1);
}

StOstReport st_ost_membership(BContext& ctx, const Str& x) {
    StOstReport r;
    r.st_minus = ctx.bs.st_membership(ctx.cls, x, -1);
    r.st_plus = ctx.bs.st_membership(ctx.cls, x, 1);
    r.ost_minus = ost_member(ctx, x, -1);
    r.ost_plus = ost_member(ctx, x, 1);
    return r;
}

namespace {

bool in_ost(BContext& ctx, const Str& x) {
    return ost_member(ctx, x, 1) || ost_member(ctx, x, -1);
}

int phi_of_ost(BContext& ctx, const Str& z) {
    bool p = ost_member(ctx, z, 1), m = ost_member(ctx, z, -1);
    if (p && m) return 0;
    return p ? 1 : -1;
}

// c_B only: the longest left substring of x lying in OST.
Str cb_only(BContext& ctx, const Str& x) {
    assert(ctx.in_hammock(x));
    for (size_t len = x.size() + 1; len-- > ctx.key.base.size();) {
        Str z = x.left_substring(len);
        if (in_ost(ctx, z)) return z;
    }
    return ctx.key.base;  // the base is always in OST_{+-1}
}

// The longest left substring of x lying in OST_j.  The base qualifies for
// either sign: it is a left substring of both extremal elements.
Str cb_sided(BContext& ctx, const Str& x, int j) {
    for (size_t len = x.size() + 1; len-- > ctx.key.base.size();) {
        Str z = x.left_substring(len);
        if (ost_member(ctx, z, j)) return z;
    }
    return ctx.key.base;
}

// One step of l_B (j = +1) or lbar_B (j = -1); requires x in OST_j.  The
// projection is one-sided: l_B lands in OST_1 and lbar_B in OST_{-1}, which
// matters for non-minimal classes whose OST_{-j} part interleaves.
std::optional<Str> directed_step(BContext& ctx, const Str& x, int j) {
    auto next = j > 0 ? succ_l(ctx.key, x) : pred_l(ctx.key, x);
    if (!next) return std::nullopt;
    return cb_sided(ctx, *next, j);
}

// For z in OST with phi(z) = j != 0: the generator y in OST_{+-1} whose
// j-directed orbit contains z, together with that orbit (y first, z last).
std::optional<std::vector<Str>> orbit_to(BContext& ctx, const Str& z, int j) {
    for (size_t len = z.size(); len-- > ctx.key.base.size();) {
        Str y = z.left_substring(len);
        if (!ost_pm1(ctx, y)) continue;
        std::vector<Str> orbit{y};
        bool ok = false;
        for (size_t step = 0; step < kOrbitCap; ++step) {
            auto nx = directed_step(ctx, orbit.back(), j);
            if (!nx) break;
            auto c = compare_l(*nx, z);
            if (!c) break;
            orbit.push_back(*nx);
            if (*c == 0) {
                ok = true;
                break;
            }
            // Overshot: z is not on this orbit.
            if (j > 0 ? *c > 0 : *c < 0) break;
        }
        if (ok) return orbit;
    }
    return std::nullopt;
}

}  // namespace

CondenseResult condense(BContext& ctx, const Str& x, bool with_CB) {
    CondenseResult r;
    r.cB = cb_only(ctx, x);
    r.phi = phi_of_ost(ctx, r.cB);
    if (with_CB) {
        if (r.phi == 0) {
            r.CB = r.cB;
        } else {
            auto orbit = orbit_to(ctx, r.cB, r.phi);
            if (!orbit)
                throw std::runtime_error(
                    "condense: C_B generator walk exceeded its cap");
            r.CB = orbit->front();
        }
    }
    return r;
}

std::optional<Str> ost_neighbor(BContext& ctx, const Str& x, bool succ) {
    int j = succ ? 1 : -1;
    const Str& blocked = succ ? ctx.max_str : ctx.min_str;
    if (x == blocked) return std::nullopt;
    if (ost_member(ctx, x, j)) return directed_step(ctx, x, j);
    // x lies strictly inside a (-j)-directed ray; its j-neighbour is the
    // previous iterate on that ray.
    int phi = phi_of_ost(ctx, x);
    assert(phi == -j);
    auto orbit = orbit_to(ctx, x, -j);
    if (!orbit)
        throw std::runtime_error("ost_neighbor: ray walk exceeded its cap");
    return (*orbit)[orbit->size() - 2];
}

Str AlmostPeriodic::period_str() const { return Str::raw(*stem.spec, period); }

std::string AlmostPeriodic::to_string() const {
    return "^inf(" + period_str().to_string() + ")." + stem.to_string();
}

bool AlmostPeriodic::operator==(const AlmostPeriodic& o) const {
    return stem == o.stem && period == o.period && base == o.base;
}

namespace {

// Shared recurrence detector.  Iterates `step`, finds s < t with equal
// ExtState and iterate[s] sqsubseteq_l iterate[t], then verifies the shifted
// repetition for two further periods before accepting.
struct Recurrence {
    std::vector<Str> iterates;  // [0] = start
    size_t s = 0, p = 0;        // iterates[s + p] = v . iterates[s]
};

std::optional<Recurrence> find_recurrence(
    const Automaton& aut, const Str& start,
    const std::function<std::optional<Str>(const Str&)>& step,
    size_t max_steps) {
    Recurrence rec;
    rec.iterates.push_back(start);
    std::map<int, std::vector<size_t>> by_state;
    by_state[aut.state_of(start)].push_back(0);

    auto extend_to = [&](size_t n) -> bool {
        while (rec.iterates.size() <= n) {
            auto nx = step(rec.iterates.back());
            if (!nx) return false;
            rec.iterates.push_back(*nx);
        }
        return true;
    };

    for (size_t t = 1; t <= max_steps; ++t) {
        if (!extend_to(t)) return std::nullopt;
        int sid = aut.state_of(rec.iterates[t]);
        for (size_t s : by_state[sid]) {
            const Str& xs = rec.iterates[s];
            const Str& xt = rec.iterates[t];
            if (xt.size() <= xs.size() || !xt.has_left_substring(xs)) continue;
            size_t p = t - s;
            std::vector<Letter> v(xt.syl.begin() + (long)xs.size(),
                                  xt.syl.end());
            // Verify two further periods append the same word:
            // x_{s+(m+1)p} = v . x_{s+mp} for m = 1, 2.  (Within a period
            // the appended word may only be a rotation of v.)
            bool ok = true;
            for (size_t m = 1; ok && m <= 2; ++m) {
                if (!extend_to(s + (m + 1) * p)) {
                    ok = false;
                    break;
                }
                std::vector<Letter> want = rec.iterates[s + m * p].syl;
                want.insert(want.end(), v.begin(), v.end());
                ok = want == rec.iterates[s + (m + 1) * p].syl;
            }
            if (ok) {
                rec.s = s;
                rec.p = p;
                return rec;
            }
        }
        by_state[sid].push_back(t);
    }
    return std::nullopt;
}

AlmostPeriodic pack_limit(const Recurrence& rec, const Str& base) {
    const Str& xs = rec.iterates[rec.s];
    const Str& xt = rec.iterates[rec.s + rec.p];
    std::vector<Letter> v(xt.syl.begin() + (long)xs.size(), xt.syl.end());
    // Primitive period of the repeating word.
    size_t d = v.size();
    for (size_t cand = 1; cand < v.size(); ++cand) {
        if (v.size() % cand) continue;
        bool per = true;
        for (size_t q = 0; per && q + cand < v.size(); ++q)
            per = v[q] == v[q + cand];
        if (per) {
            d = cand;
            break;
        }
    }
    // Letters above the base: connector then the period forever.  Minimize
    // the stem: the earliest point from which the tail is d-periodic.
    std::vector<Letter> W(xs.syl.begin() + (long)base.size(), xs.syl.end());
    while (W.size() < xs.size() - base.size() + 3 * d)
        W.push_back(v[(W.size() - (xs.size() - base.size())) % v.size()]);
    size_t m0 = W.size() >= d ? W.size() - d : 0;
    while (m0 > 0 && W[m0 - 1] == W[m0 - 1 + d]) --m0;
    // Also allow the stem to shrink into the connector region fully.
    AlmostPeriodic ap;
    ap.base = base;
    ap.stem = base;
    ap.stem.syl.insert(ap.stem.syl.end(), W.begin(), W.begin() + (long)m0);
    ap.period.assign(W.begin() + (long)m0, W.begin() + (long)(m0 + d));
    return ap;
}

}  // namespace

std::optional<AlmostPeriodic> iterate_limit(
    const Automaton& aut, const Str& start,
    const std::function<std::optional<Str>(const Str&)>& step,
    size_t max_steps) {
    auto rec = find_recurrence(aut, start, step, max_steps);
    if (!rec) return std::nullopt;
    // The stem of the reported limit is canonicalized over the start string.
    return pack_limit(*rec, start);
}

std::optional<AlmostPeriodic> ost_limit(BContext& ctx, const Str& x,
                                        bool succ) {
    auto rec = find_recurrence(
        ctx.bs.aut, x,
        [&](const Str& y) { return directed_step(ctx, y, succ ? 1 : -1); },
        4096);
    if (!rec) return std::nullopt;
    return pack_limit(*rec, x);
}

std::optional<AlmostPeriodic> plain_limit(const HammockKey& key, const Str& x,
                                          bool succ) {
    Automaton aut(*x.spec);
    auto rec = find_recurrence(
        aut, x,
        [&](const Str& y) { return succ ? succ_l(key, y) : pred_l(key, y); },
        4096);
    if (!rec) return std::nullopt;
    return pack_limit(*rec, x);
}

bool band_in_ba(BandSystem& bs, int cls, const Str& band, bool bar) {
    for (const Str& rot : bs.rotations(band)) {
        Letter continuation = rot.syl[0];
        for (size_t a = 0; a < bs.spec.arrows.size(); ++a)
            for (bool inv : {false, true}) {
                Letter beta((int)a, inv);
                if (beta == continuation || !can_prepend(rot, beta)) continue;
                if (beta.inverse() != bar) continue;  // Ba_l: direct exits
                if (bs.ext_membership(prepend(rot, beta), cls)) return false;
            }
    }
    return true;
}

BandEnds band_ends(BandSystem& bs, int cls) {
    BandEnds out;
    for (size_t pid = 0; pid < bs.primes.size(); ++pid) {
        if (bs.class_of_prime((int)pid) != cls) continue;
        const Str& prime = bs.primes[pid].word;
        std::vector<BandExit> exits;
        for (const Str& rot : bs.rotations(prime)) {
            Letter continuation = rot.syl[0];
            for (size_t a = 0; a < bs.spec.arrows.size(); ++a)
                for (bool inv : {false, true}) {
                    Letter beta((int)a, inv);
                    if (beta == continuation || !can_prepend(rot, beta))
                        continue;
                    BandExit e;
                    e.beta = beta;
                    e.rotation = rot;
                    e.nondomestic = bs.ext_membership(prepend(rot, beta), cls);
                    exits.push_back(e);
                }
        }
        if (band_in_ba(bs, cls, prime, false)) out.ba_l.push_back(prime);
        if (band_in_ba(bs, cls, prime, true)) out.ba_lbar.push_back(prime);
        out.exits.emplace_back(prime, std::move(exits));
    }
    return out;
}

bool b_equivalent(const Str& x, const Str& y) {
    auto ex = extensions_of(x);
    auto ey = extensions_of(y);
    int shared = 0;
    for (Letter l : ex)
        if (std::find(ey.begin(), ey.end(), l) != ey.end()) ++shared;
    return shared >= 2;
}

namespace {

// Does the extension pair (alpha, beta) witness a center?  Depends only on
// the pair: the gamma of the criterion attaches exactly where alpha and beta
// do.
bool center_pair(BandSystem& bs, int cls, Letter alpha, Letter beta) {
    for (size_t a = 0; a < bs.spec.arrows.size(); ++a)
        for (bool inv : {false, true}) {
            Letter gamma((int)a, inv);
            auto gs = mk_string(bs.spec, {gamma});
            if (!gs) continue;
            if (!can_prepend(*gs, alpha) || !can_prepend(*gs, beta)) continue;
            if (!bs.st_membership(cls, *gs, 1) ||
                !bs.st_membership(cls, *gs, -1))
                continue;
            if (bs.ext_membership(prepend(*gs, alpha), cls) &&
                bs.ext_membership(prepend(*gs, beta), cls))
                return true;
        }
    return false;
}

}  // namespace

bool is_center(BContext& ctx, const Str& x) {
    if (!stb_pm1(ctx, x))
        throw std::invalid_argument("is_center: x not in StB_{+-1} or hammock");
    auto ex = extensions_of(x);
    if (ex.size() != 2) return false;
    Letter alpha = ex[0].inverse() ? ex[1] : ex[0];
    Letter beta = ex[0].inverse() ? ex[0] : ex[1];
    return center_pair(ctx.bs, ctx.cls, alpha, beta);
}

namespace {

struct Candidates {
    std::vector<Str> elems;  // sorted by <_l, deduplicated
};

// Relatively band-free strings plus the substrings of the two extremal
// elements: a superset of every finite set this module reports.
std::optional<Candidates> candidate_pool(BContext& ctx) {
    auto bf =
        ctx.bs.band_free_relative(ctx.key.base, ctx.key.side, ctx.cap);
    if (!bf) return std::nullopt;
    Candidates c;
    c.elems = *bf;
    for (const Str* ex : {&ctx.min_str, &ctx.max_str})
        for (size_t len = ctx.key.base.size(); len <= ex->size(); ++len)
            c.elems.push_back(ex->left_substring(len));
    std::sort(c.elems.begin(), c.elems.end(),
              [](const Str& a, const Str& b) { return *compare_l(a, b) < 0; });
    c.elems.erase(std::unique(c.elems.begin(), c.elems.end()), c.elems.end());
    return c;
}

}  // namespace

std::vector<Str> ost_minus_stb(BContext& ctx) {
    auto pool = candidate_pool(ctx);
    if (!pool)
        throw std::runtime_error("ost_minus_stb: candidate cap exceeded");
    std::vector<Str> out;
    for (const Str& x : pool->elems) {
        // The reported difference uses the cycle-reachability form of OSt
        // only; substrings of the extremal elements enter OST but carry no
        // band information of their own.
        bool ost = ctx.bs.ost_membership(ctx.cls, x, 1) ||
                   ctx.bs.ost_membership(ctx.cls, x, -1);
        if (!ost) continue;
        auto r = st_ost_membership(ctx, x);
        if (!(r.st_plus || r.st_minus)) out.push_back(x);
    }
    return out;
}

BeamReport beam_structure(BContext& ctx) {
    if (!ctx.minimal())
        throw std::invalid_argument("beam_structure: class not minimal");
    auto pool = candidate_pool(ctx);
    if (!pool)
        throw std::runtime_error("beam_structure: candidate cap exceeded");

    BeamReport br;
    std::vector<Str> interior;  // OST_{+-1} minus centers
    for (const Str& x : pool->elems) {
        if (!ost_pm1(ctx, x)) continue;
        if (stb_pm1(ctx, x) && is_center(ctx, x)) continue;
        interior.push_back(x);
    }
    // The reported boundary list additionally carries the two extremal
    // elements so that consecutive pairs cover the whole hammock.
    br.boundaries = interior;
    br.boundaries.push_back(ctx.min_str);
    br.boundaries.push_back(ctx.max_str);
    std::sort(br.boundaries.begin(), br.boundaries.end(),
              [](const Str& a, const Str& b) { return *compare_l(a, b) < 0; });
    br.boundaries.erase(
        std::unique(br.boundaries.begin(), br.boundaries.end()),
        br.boundaries.end());
    for (size_t i = 0; i + 1 < br.boundaries.size(); ++i)
        br.beams.emplace_back(br.boundaries[i], br.boundaries[i + 1]);

    // Center classes: BFS over hammock-reachable automaton states; a state
    // with both St signs and a qualifying extension pair realizes the class,
    // and the BFS replay gives a shortest representative.
    const Automaton& aut = ctx.bs.aut;
    int start = aut.state_of(ctx.key.base);
    std::vector<char> seen(aut.state_count(), 0);
    std::vector<Str> str_of(aut.state_count());
    std::queue<int> q;
    std::set<std::pair<int, int>> pairs_done;

    auto visit = [&](int sid, const Str& here) {
        if (ctx.bs.st_state(ctx.cls, sid, 1) &&
            ctx.bs.st_state(ctx.cls, sid, -1)) {
            auto ex = aut.left_extensions(sid);
            if (ex.size() == 2) {
                Letter alpha = ex[0].inverse() ? ex[1] : ex[0];
                Letter beta = ex[0].inverse() ? ex[0] : ex[1];
                auto pk = std::make_pair(alpha.code, beta.code);
                if (!pairs_done.count(pk)) {
                    pairs_done.insert(pk);
                    if (center_pair(ctx.bs, ctx.cls, alpha, beta)) {
                        CenterClass cc;
                        cc.alpha = alpha;
                        cc.beta = beta;
                        cc.representative = here;
                        br.centerClasses.push_back(cc);
                    }
                }
            }
        }
    };

    // The base state only admits first steps on the hammock side, yet the
    // same automaton state can recur at deeper strings whose other
    // extensions do stay inside the hammock.  Seed the queue with the
    // restricted first steps and leave the base state unseen so that a later
    // revisit expands it fully.
    visit(start, ctx.key.base);
    for (Letter l : aut.left_extensions(start)) {
        int sign = l.inverse() ? 1 : -1;
        if (sign != ctx.key.side) continue;
        int nid = aut.step(start, l);
        if (nid < 0 || seen[nid]) continue;
        seen[nid] = 1;
        str_of[nid] = prepend(ctx.key.base, l);
        q.push(nid);
    }
    while (!q.empty()) {
        int sid = q.front();
        q.pop();
        const Str here = str_of[sid];
        visit(sid, here);
        for (Letter l : aut.left_extensions(sid)) {
            int nid = aut.step(sid, l);
            if (nid < 0 || seen[nid]) continue;
            seen[nid] = 1;
            str_of[nid] = prepend(here, l);
            q.push(nid);
        }
    }
    // A shortest witness can coincide with an extremal element, whose
    // one-sided orbit inside the hammock is empty.  Replace it with the
    // next witness along the shortest state cycle: the extension stays in
    // the hammock and keeps the automaton state, hence the class.
    for (CenterClass& cc : br.centerClasses) {
        if (!(cc.representative == ctx.min_str) &&
            !(cc.representative == ctx.max_str))
            continue;
        int s0 = aut.state_of(cc.representative);
        auto same_pair = [&](int sid) {
            if (!ctx.bs.st_state(ctx.cls, sid, 1) ||
                !ctx.bs.st_state(ctx.cls, sid, -1))
                return false;
            auto ex = aut.left_extensions(sid);
            if (ex.size() != 2) return false;
            Letter alpha = ex[0].inverse() ? ex[1] : ex[0];
            Letter beta = ex[0].inverse() ? ex[0] : ex[1];
            return alpha.code == cc.alpha.code && beta.code == cc.beta.code;
        };
        std::map<int, std::pair<int, Letter>> via;  // state -> (prev, letter)
        std::queue<int> cq;
        cq.push(s0);
        int found_prev = -1;
        std::optional<Letter> found_letter;
        // When the witness is the zero-length base, the first step must stay
        // on the hammock side; deeper steps are unrestricted.
        bool at_base = cc.representative == ctx.key.base;
        while (!cq.empty() && !found_letter) {
            int sid = cq.front();
            cq.pop();
            bool first = at_base && sid == s0;
            for (Letter l : aut.left_extensions(sid)) {
                if (first && (l.inverse() ? 1 : -1) != ctx.key.side) continue;
                int nid = aut.step(sid, l);
                if (nid < 0) continue;
                if (same_pair(nid)) {
                    found_prev = sid;
                    found_letter = l;
                    break;
                }
                if (nid == s0 || via.count(nid)) continue;
                via[nid] = {sid, l};
                cq.push(nid);
            }
        }
        if (!found_letter)
            throw std::runtime_error(
                "beam_structure: extremal center witness admits no deeper "
                "witness");
        std::vector<Letter> word{*found_letter};
        for (int sid = found_prev; sid != s0;) {
            auto [prev, l] = via.at(sid);
            word.push_back(l);
            sid = prev;
        }
        Str rep = cc.representative;
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            rep = prepend(rep, *it);
        cc.representative = rep;
    }
    br.kB = (int)br.centerClasses.size();
    std::sort(br.centerClasses.begin(), br.centerClasses.end(),
              [](const CenterClass& a, const CenterClass& b) {
                  return std::make_pair(a.alpha.code, a.beta.code) <
                         std::make_pair(b.alpha.code, b.beta.code);
              });

    // End segments: substrings of the extremal elements between the nearest
    // boundary and the extreme, in <_l order.
    if (!interior.empty()) {
        const Str& y0 = interior.front();
        const Str& yn = interior.back();
        for (size_t len = ctx.min_str.size() + 1; len-- > y0.size();)
            br.endLow.push_back(ctx.min_str.left_substring(len));
        for (size_t len = yn.size(); len <= ctx.max_str.size(); ++len)
            br.endHigh.push_back(ctx.max_str.left_substring(len));
    }
    return br;
}

}  // namespace stralg
