#include "stralg/ordertype.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace stralg {

namespace {

// One direction of an OST-neighbour walk out of `start`, stopping either at
// `target` or once the tail is proven periodic (the appended word repeats,
// verified over two further periods).
struct WalkResult {
    bool reached = false;    // hit the target
    std::vector<Str> elems;  // x_1, x_2, ... (start and target excluded)
    size_t s = 0, p = 0;     // when !reached: x_{s+1}..x_{s+p} repeat
};

WalkResult analyze_walk(BContext& ctx, const Str& start, bool succ,
                        const Str* target, size_t max_steps) {
    WalkResult wr;
    std::map<int, std::vector<size_t>> by_state;
    Str x = start;
    for (size_t n = 0; n < max_steps; ++n) {
        auto nx = ost_neighbor(ctx, x, succ);
        if (!nx)
            throw std::runtime_error(
                "order type: neighbour walk blocked at " + x.to_string() +
                " (start " + start.to_string() +
                (succ ? ", ascending" : ", descending") +
                (target ? ", target " + target->to_string() : ", unbounded") +
                ")");
        if (target) {
            int cmp = *compare_l(*nx, *target);
            if ((succ && cmp >= 0) || (!succ && cmp <= 0)) {
                if (cmp != 0)
                    throw std::runtime_error(
                        "order type: neighbour walk overshot the segment end");
                wr.reached = true;
                return wr;
            }
        }
        x = *nx;
        wr.elems.push_back(x);
        size_t t = wr.elems.size() - 1;
        int sid = ctx.bs.aut.state_of(x);
        for (size_t s : by_state[sid]) {
            const Str& xs = wr.elems[s];
            if (x.size() <= xs.size() || !x.has_left_substring(xs)) continue;
            size_t p = t - s;
            std::vector<Letter> v(x.syl.begin() + (long)xs.size(),
                                  x.syl.end());
            // Replay two further periods and require the same appended word.
            bool ok = true;
            Str probe = x;
            std::vector<Str> extra;
            for (size_t m = 1; ok && m <= 2; ++m) {
                for (size_t k = 0; ok && k < p; ++k) {
                    auto e = ost_neighbor(ctx, probe, succ);
                    if (!e) {
                        ok = false;
                        break;
                    }
                    probe = *e;
                }
                if (!ok) break;
                const Str& prev =
                    m == 1 ? x : extra.back();
                std::vector<Letter> want = prev.syl;
                want.insert(want.end(), v.begin(), v.end());
                ok = want == probe.syl;
                extra.push_back(probe);
            }
            if (ok) {
                wr.s = s + 1;  // elems[0..s] is the prefix x_1..x_{s+1}
                wr.p = p;
                wr.elems.resize(t + 1);
                return wr;
            }
        }
        by_state[sid].push_back(t);
    }
    throw std::runtime_error(
        "order type: neighbour walk exceeded max_steps without recurrence");
}

}  // namespace

OrderTypeEngine::OrderTypeEngine(BandSystem& bs, OrderTypeOptions opt)
    : bs_(bs), opt_(opt) {}

LinExprPtr OrderTypeEngine::hammock(const HammockKey& key) {
    return compute(key);
}

LinExprPtr OrderTypeEngine::compute(const HammockKey& key) {
    auto mk = std::make_pair(bs_.aut.state_of(key.base), key.side);
    auto it = memo_.find(mk);
    if (it != memo_.end()) return it->second;
    if (busy_.count(mk))
        throw std::runtime_error(
            "order type: recursive fiber dependency (indeterminate)");
    if (depth_ > opt_.max_depth)
        throw std::runtime_error("order type: fiber recursion too deep");
    busy_.insert(mk);
    ++depth_;
    if (depth_ > max_depth_seen_) max_depth_seen_ = depth_;
    LinExprPtr result;
    try {
        auto rep = bs_.reachable_classes(key.base, key.side);
        if (rep.minimal.empty()) {
            // Band-free hammock: count it.
            auto [mn, mx] = extremal_strings(key);
            size_t n = 1;
            Str x = mn;
            while (!(x == mx)) {
                auto nx = succ_l(key, x);
                if (!nx)
                    throw std::runtime_error(
                        "order type: finite hammock walk broke off");
                x = *nx;
                if (++n > opt_.cap)
                    throw std::runtime_error(
                        "order type: finite hammock exceeds cap");
            }
            result = le_fin((long)n);
        } else {
            int cls = *std::min_element(rep.minimal.begin(),
                                        rep.minimal.end());
            BContext ctx(bs_, key, cls);
            BeamReport br = beam_structure(ctx);
            if (br.boundaries.empty())
                throw std::runtime_error("order type: empty boundary list");
            std::vector<LinExprPtr> parts;
            parts.push_back(fiber(ctx, br.boundaries.front()));
            for (size_t i = 0; i + 1 < br.boundaries.size(); ++i)
                parts.push_back(segment(ctx, br, br.boundaries[i],
                                        br.boundaries[i + 1]));
            result = normalize_expr(le_sum(std::move(parts)));
        }
    } catch (std::runtime_error& re) {
        busy_.erase(mk);
        --depth_;
        throw std::runtime_error(std::string(re.what()) + "\n  in H^" +
                                 (key.side > 0 ? "{+1}" : "{-1}") + "(" +
                                 key.base.to_string() + ")");
    } catch (...) {
        busy_.erase(mk);
        --depth_;
        throw;
    }
    busy_.erase(mk);
    --depth_;
    memo_[mk] = result;
    return result;
}

LinExprPtr OrderTypeEngine::fiber(BContext& ctx, const Str& x) {
    auto c = condense(ctx, x, false);
    if (!(c.cB == x))
        throw std::logic_error("order type: fiber base not condensed");
    if (c.phi == 0) return le_one();
    return compute(HammockKey{x, -c.phi});
}

LinExprPtr OrderTypeEngine::shuffle_middle(BContext& ctx,
                                           const BeamReport& br) {
    if (br.centerClasses.empty()) return le_zero();
    std::vector<LinExprPtr> types;
    for (const CenterClass& cc : br.centerClasses)
        types.push_back(interval_type(ctx, cc.representative));
    return le_shuffle(std::move(types));
}

LinExprPtr OrderTypeEngine::segment(BContext& ctx, const BeamReport& br,
                                    const Str& ylo, const Str& yhi) {
    bool up_ok = ost_member(ctx, ylo, 1);
    bool down_ok = ost_member(ctx, yhi, -1);

    LinExprPtr ray_up = le_zero();
    if (up_ok) {
        WalkResult w = analyze_walk(ctx, ylo, true, &yhi, opt_.max_steps);
        std::vector<LinExprPtr> fs;
        for (const Str& x : w.elems) fs.push_back(fiber(ctx, x));
        if (w.reached) {
            fs.push_back(fiber(ctx, yhi));
            return le_sum(std::move(fs));
        }
        std::vector<LinExprPtr> prefix(fs.begin(), fs.begin() + (long)w.s);
        std::vector<LinExprPtr> block(fs.begin() + (long)w.s,
                                      fs.begin() + (long)(w.s + w.p));
        prefix.push_back(le_prod_omega(le_sum(std::move(block))));
        ray_up = le_sum(std::move(prefix));
    }

    LinExprPtr ray_down = le_zero();
    if (down_ok) {
        WalkResult w = analyze_walk(ctx, yhi, false, &ylo, opt_.max_steps);
        std::vector<LinExprPtr> fs;
        for (const Str& x : w.elems) fs.push_back(fiber(ctx, x));
        if (w.reached) {
            // Only reachable here when the ascending walk was unavailable.
            std::vector<LinExprPtr> asc(fs.rbegin(), fs.rend());
            asc.push_back(fiber(ctx, yhi));
            return le_sum(std::move(asc));
        }
        // Walk order is descending; the region reads ascending as
        // (reversed block).w* followed by the reversed prefix.
        std::vector<LinExprPtr> block(fs.rbegin(),
                                      fs.rbegin() + (long)w.p);
        std::vector<LinExprPtr> asc;
        asc.push_back(le_prod_omega_star(le_sum(std::move(block))));
        for (size_t i = w.s; i-- > 0;) asc.push_back(fs[i]);
        ray_down = le_sum(std::move(asc));
    }

    return le_sum({ray_up, shuffle_middle(ctx, br), ray_down,
                   fiber(ctx, yhi)});
}

LinExprPtr OrderTypeEngine::interval_type(BContext& ctx, const Str& center) {
    WalkResult down =
        analyze_walk(ctx, center, false, nullptr, opt_.max_steps);
    WalkResult up = analyze_walk(ctx, center, true, nullptr, opt_.max_steps);

    std::vector<LinExprPtr> parts;
    {
        std::vector<LinExprPtr> fs;
        for (const Str& x : down.elems) fs.push_back(fiber(ctx, x));
        std::vector<LinExprPtr> block(fs.rbegin(),
                                      fs.rbegin() + (long)down.p);
        parts.push_back(le_prod_omega_star(le_sum(std::move(block))));
        for (size_t i = down.s; i-- > 0;) parts.push_back(fs[i]);
    }
    parts.push_back(le_one());
    {
        std::vector<LinExprPtr> fs;
        for (const Str& x : up.elems) fs.push_back(fiber(ctx, x));
        for (size_t i = 0; i < up.s; ++i) parts.push_back(fs[i]);
        std::vector<LinExprPtr> block(fs.begin() + (long)up.s,
                                      fs.begin() + (long)(up.s + up.p));
        parts.push_back(le_prod_omega(le_sum(std::move(block))));
    }
    return normalize_expr(le_sum(std::move(parts)));
}

std::vector<std::pair<CenterClass, LinExprPtr>>
OrderTypeEngine::center_interval_types(const HammockKey& key) {
    auto rep = bs_.reachable_classes(key.base, key.side);
    if (rep.minimal.empty())
        throw std::runtime_error("center intervals: band-free hammock");
    int cls = *std::min_element(rep.minimal.begin(), rep.minimal.end());
    BContext ctx(bs_, key, cls);
    BeamReport br = beam_structure(ctx);
    std::vector<std::pair<CenterClass, LinExprPtr>> out;
    for (const CenterClass& cc : br.centerClasses)
        out.emplace_back(cc, interval_type(ctx, cc.representative));
    return out;
}

LinExprPtr hammock_order_type(BandSystem& bs, const HammockKey& key,
                              OrderTypeOptions opt) {
    OrderTypeEngine eng(bs, opt);
    return eng.hammock(key);
}

bool prefix_check(const HammockKey& key, const LinExprPtr& e, size_t steps) {
    LinExprPtr n = normalize_expr(e);
    auto [mn, mx] = extremal_strings(key);
    // Walk from the minimum checking succ/pred inversion as we go.
    Str x = mn;
    size_t count = 1;
    for (size_t i = 0; i < steps; ++i) {
        auto s = succ_l(key, x);
        if (!s) break;
        auto back = pred_l(key, *s);
        if (!back || !(*back == x)) return false;
        x = *s;
        ++count;
    }
    bool exhausted = (x == mx);
    if (n->kind == LinExpr::Kind::Zero) return false;  // hammocks are nonempty
    if (n->kind == LinExpr::Kind::One || n->kind == LinExpr::Kind::Fin) {
        long want = n->kind == LinExpr::Kind::One ? 1 : n->n;
        if ((size_t)want <= steps)
            return exhausted && count == (size_t)want;
        return !exhausted;
    }
    // Infinite expression: the walk must not have exhausted the hammock.
    return !exhausted;
}

}  // namespace stralg
