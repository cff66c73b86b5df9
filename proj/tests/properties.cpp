#include "properties.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "stralg/automaton.hpp"
#include "stralg/bands.hpp"
#include "stralg/condensation.hpp"
#include "stralg/hammock.hpp"
#include "stralg/linexpr.hpp"
#include "stralg/ordertype.hpp"
#include "stralg/str.hpp"

namespace props {

using namespace stralg;
using testutil::bands;
using testutil::fixture;
using testutil::lit;

namespace {

using Rng = std::mt19937_64;

const char* kFixtures[] = {"gamma0", "gamma", "gamma_prime", "gamma_dprime"};

int pick(Rng& rng, int n) {
    return (int)std::uniform_int_distribution<int>(0, n - 1)(rng);
}

const AlgebraSpec& random_fixture(Rng& rng, std::string* name = nullptr) {
    const char* f = kFixtures[pick(rng, 4)];
    if (name) *name = f;
    return fixture(f);
}

// Random valid string: a random walk of left extensions from a random zero
// string, length <= max_len.
Str random_str(Rng& rng, const AlgebraSpec& spec, const Automaton& aut,
               int max_len) {
    Str x = Str::zero(spec, pick(rng, (int)spec.vertices.size()),
                      pick(rng, 2) ? 1 : -1);
    int len = pick(rng, max_len + 1);
    for (int i = 0; i < len; ++i) {
        auto exts = aut.left_extensions(aut.state_of(x));
        if (exts.empty()) break;
        x = prepend(x, exts[pick(rng, (int)exts.size())]);
    }
    return x;
}

// Random element of H^side(base): a random extension walk staying on the
// side; nullopt when the sampled walk leaves the hammock immediately.
std::optional<Str> random_hammock_element(Rng& rng, const Automaton& aut,
                                          const HammockKey& key, int max_extra) {
    Str x = key.base;
    int len = pick(rng, max_extra + 1);
    for (int i = 0; i < len; ++i) {
        auto exts = aut.left_extensions(aut.state_of(x));
        std::vector<Letter> good;
        for (Letter l : exts) {
            Str y = prepend(x, l);
            if (y.theta_rel(key.base) == key.side) good.push_back(l);
        }
        if (good.empty()) break;
        x = prepend(x, good[pick(rng, (int)good.size())]);
    }
    return x;
}

std::string describe(const std::string& fix, const HammockKey& key) {
    return fix + " H^" + (key.side > 0 ? "{+1}" : "{-1}") + "(" +
           key.base.to_string() + ")";
}

// A pool of (fixture, key, class) triples covering every fixture and every
// reachable class of a spread of bases.
struct CtxSpec {
    std::string fix;
    HammockKey key;
    int cls;
};

std::vector<CtxSpec> context_pool() {
    std::vector<CtxSpec> pool;
    auto add_key = [&pool](const std::string& fix, const HammockKey& key) {
        BandSystem& bs = bands(fix);
        auto rep = bs.reachable_classes(key.base, key.side);
        for (int cls : rep.classes) pool.push_back({fix, key, cls});
    };
    const AlgebraSpec& g0 = fixture("gamma0");
    add_key("gamma0", {lit(g0, "a0"), 1});
    add_key("gamma0", {lit(g0, "a0"), -1});
    add_key("gamma0", {lit(g0, "e2'.e1'.a2'.a1'.a0"), -1});
    add_key("gamma0", {lit(g0, "d1.c"), 1});
    add_key("gamma0", {lit(g0, "m1"), 1});
    for (const char* f : {"gamma", "gamma_prime", "gamma_dprime"}) {
        const AlgebraSpec& spec = fixture(f);
        for (size_t v = 0; v < spec.vertices.size(); ++v)
            for (int parity : {-1, 1})
                for (int side : {-1, 1})
                    add_key(f, {Str::zero(spec, (int)v, parity), side});
    }
    return pool;
}

std::string fail(const std::string& where, const std::string& what) {
    return where + ": " + what;
}

}  // namespace

PropResult succ_pred_inversion(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    for (int i = 0; i < cases; ++i, ++res.cases) {
        std::string fix;
        const AlgebraSpec& spec = random_fixture(rng, &fix);
        BandSystem& bs = bands(fix);
        HammockKey key{random_str(rng, spec, bs.aut, 5), pick(rng, 2) ? 1 : -1};
        auto x = random_hammock_element(rng, bs.aut, key, 8);
        if (!x) continue;
        auto up = succ_l(key, *x);
        if (up) {
            auto back = pred_l(key, *up);
            if (!back || !(*back == *x)) {
                res.ok = false;
                res.detail = fail(describe(fix, key),
                                  "pred(succ(" + x->to_string() + ")) mismatch");
                return res;
            }
        }
        auto down = pred_l(key, *x);
        if (down) {
            auto back = succ_l(key, *down);
            if (!back || !(*back == *x)) {
                res.ok = false;
                res.detail = fail(describe(fix, key),
                                  "succ(pred(" + x->to_string() + ")) mismatch");
                return res;
            }
        }
        if (up && down && compare_l(*down, *up) != -1) {
            res.ok = false;
            res.detail = fail(describe(fix, key), "pred !< succ at " + x->to_string());
            return res;
        }
    }
    return res;
}

// Independent transcription of the three comparison clauses: y = u.alpha.x
// with alpha inverse puts x below; x = v.beta.y with beta direct puts x
// below; at a fork the direct branch is below the inverse branch.
static std::optional<int> oracle_cmp(const Str& x, const Str& y) {
    if (x == y) return 0;
    auto w = common_left_substring(x, y);
    if (!w) return std::nullopt;
    if (*w == x) return y.syl[x.size()].inverse() ? -1 : 1;
    if (*w == y) return x.syl[y.size()].inverse() ? 1 : -1;
    bool xi = x.syl[w->size()].inverse();
    bool yi = y.syl[w->size()].inverse();
    if (!xi && yi) return -1;
    if (xi && !yi) return 1;
    return std::nullopt;
}

PropResult compare_oracle(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    // A few enumerated hammocks per run; random pairs within each.
    struct Pool {
        std::string fix;
        HammockKey key;
        std::vector<Str> xs;
    };
    std::vector<Pool> pools;
    for (int k = 0; k < 12; ++k) {
        std::string fix;
        const AlgebraSpec& spec = random_fixture(rng, &fix);
        BandSystem& bs = bands(fix);
        HammockKey key{random_str(rng, spec, bs.aut, 4), pick(rng, 2) ? 1 : -1};
        auto xs = enumerate_hammock(key, key.base.size() + 12);
        if (xs.size() >= 2) pools.push_back({fix, key, std::move(xs)});
    }
    if (pools.empty()) {
        res.ok = false;
        res.detail = "no non-trivial hammock sampled";
        return res;
    }
    for (int i = 0; i < cases; ++i, ++res.cases) {
        Pool& p = pools[pick(rng, (int)pools.size())];
        const Str& x = p.xs[pick(rng, (int)p.xs.size())];
        const Str& y = p.xs[pick(rng, (int)p.xs.size())];
        auto got = compare_l(x, y);
        auto want = oracle_cmp(x, y);
        if (got != want) {
            res.ok = false;
            res.detail = fail(describe(p.fix, p.key),
                              "compare_l(" + x.to_string() + ", " + y.to_string() +
                                  ") disagrees with the clause oracle");
            return res;
        }
        if (x == y) continue;
        auto rev = compare_l(y, x);
        if (!got || !rev || *rev != -*got) {
            res.ok = false;
            res.detail = fail(describe(p.fix, p.key), "compare_l not antisymmetric");
            return res;
        }
    }
    return res;
}

PropResult cb_monotone_idempotent(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    auto pool = context_pool();
    for (int i = 0; i < cases; ++i, ++res.cases) {
        const CtxSpec& cs = pool[pick(rng, (int)pool.size())];
        BandSystem& bs = bands(cs.fix);
        BContext ctx(bs, cs.key, cs.cls);
        auto x = random_hammock_element(rng, bs.aut, cs.key, 8);
        auto y = random_hammock_element(rng, bs.aut, cs.key, 8);
        if (!x || !y) continue;
        if (compare_l(*x, *y) == 1) std::swap(x, y);
        Str cx = condense(ctx, *x, false).cB;
        Str cy = condense(ctx, *y, false).cB;
        auto c = compare_l(cx, cy);
        if (!c || *c == 1) {
            res.ok = false;
            res.detail = fail(describe(cs.fix, cs.key),
                              "c_B not monotone on " + x->to_string() + " <= " +
                                  y->to_string());
            return res;
        }
        Str cc = condense(ctx, cx, false).cB;
        if (!(cc == cx)) {
            res.ok = false;
            res.detail = fail(describe(cs.fix, cs.key),
                              "c_B not idempotent at " + x->to_string());
            return res;
        }
    }
    return res;
}

PropResult phi_locates_fibers(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    auto pool = context_pool();
    for (int i = 0; i < cases; ++i, ++res.cases) {
        const CtxSpec& cs = pool[pick(rng, (int)pool.size())];
        BandSystem& bs = bands(cs.fix);
        BContext ctx(bs, cs.key, cs.cls);
        auto x = random_hammock_element(rng, bs.aut, cs.key, 8);
        if (!x) continue;
        auto r = condense(ctx, *x, false);
        bool in1 = ost_member(ctx, *x, 1);
        bool in_1 = ost_member(ctx, *x, -1);
        // c_B fixes exactly the OST elements; phi reads off the sides of
        // c_B(x); off OST phi is never 0 and locates the fiber.
        int want_phi = in1 && in_1 ? 0 : in1 ? 1 : in_1 ? -1 : 2;
        if ((r.cB == *x) != (in1 || in_1) ||
            (want_phi != 2 && r.phi != want_phi) ||
            (want_phi == 2 && r.phi == 0)) {
            res.ok = false;
            res.detail = fail(describe(cs.fix, cs.key),
                              "phi = " + std::to_string(r.phi) +
                                  " disagrees with OST membership of " +
                                  x->to_string());
            return res;
        }
        if (!(r.cB == *x)) {
            if (!x->has_left_substring(r.cB) ||
                x->theta_rel(r.cB) != -r.phi) {
                res.ok = false;
                res.detail = fail(describe(cs.fix, cs.key),
                                  x->to_string() + " not in H^{-phi}(c_B(x))");
                return res;
            }
        }
    }
    return res;
}

PropResult ost_neighbor_gap(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    auto pool = context_pool();
    // Keep only minimal contexts: the neighbour operators assume minimality.
    std::vector<CtxSpec> minimal;
    for (auto& cs : pool) {
        BContext ctx(bands(cs.fix), cs.key, cs.cls);
        if (ctx.minimal()) minimal.push_back(cs);
    }
    for (int i = 0; i < cases && !minimal.empty(); ++i, ++res.cases) {
        const CtxSpec& cs = minimal[pick(rng, (int)minimal.size())];
        BandSystem& bs = bands(cs.fix);
        BContext ctx(bs, cs.key, cs.cls);
        auto xs = enumerate_hammock(cs.key, cs.key.base.size() + 10);
        std::vector<Str> ost;
        for (auto& x : xs)
            if (ost_member(ctx, x, 1) || ost_member(ctx, x, -1)) ost.push_back(x);
        if (ost.empty()) continue;
        const Str& x = ost[pick(rng, (int)ost.size())];
        auto y = ost_neighbor(ctx, x, true);
        if (!y) continue;
        if (compare_l(x, *y) != -1) {
            res.ok = false;
            res.detail = fail(describe(cs.fix, cs.key),
                              "ost_neighbor not above " + x.to_string());
            return res;
        }
        for (auto& z : ost)
            if (compare_l(x, z) == -1 && compare_l(z, *y) == -1) {
                res.ok = false;
                res.detail =
                    fail(describe(cs.fix, cs.key),
                         "OST element " + z.to_string() + " strictly between " +
                             x.to_string() + " and its neighbour");
                return res;
            }
    }
    return res;
}

PropResult rotation_distinctness(std::uint64_t seed, int cases) {
    (void)seed;
    PropResult res;
    while (res.cases < cases) {
        for (const char* f : kFixtures) {
            BandSystem& bs = bands(f);
            for (auto& p : bs.primes) {
                if (res.cases >= cases) break;
                ++res.cases;
                auto rots = bs.rotations(p.word);
                std::set<std::string> seen;
                for (auto& r : rots) {
                    seen.insert(r.to_string());
                    if (!bs.is_band_rotation(r) ||
                        !(bs.canonical_rotation(r) == p.word)) {
                        res.ok = false;
                        res.detail = fail(f, "rotation " + r.to_string() +
                                                 " of prime " + p.word.to_string() +
                                                 " misbehaves");
                        return res;
                    }
                }
                if (seen.size() != p.word.size() || rots.size() != p.word.size()) {
                    res.ok = false;
                    res.detail = fail(f, "prime " + p.word.to_string() +
                                             " has repeated rotations");
                    return res;
                }
                auto root = primitive_root(p.word);
                if (!root || root->second != 1) {
                    res.ok = false;
                    res.detail = fail(f, "prime " + p.word.to_string() +
                                             " is not primitive");
                    return res;
                }
            }
        }
    }
    return res;
}

namespace {
// All valid left-extension words of length 1..8 from a state.
std::set<std::vector<int>> ext_language8(const Automaton& aut, int sid) {
    std::set<std::vector<int>> words;
    struct Item {
        int sid;
        std::vector<int> w;
    };
    std::vector<Item> stack{{sid, {}}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.w.size() >= 8) continue;
        for (Letter l : aut.left_extensions(it.sid)) {
            Item next{aut.step(it.sid, l), it.w};
            next.w.push_back(l.code);
            words.insert(next.w);
            stack.push_back(std::move(next));
        }
    }
    return words;
}
}  // namespace

PropResult h_equivalence_brute(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    for (int i = 0; i < cases; ++i, ++res.cases) {
        std::string fix;
        const AlgebraSpec& spec = random_fixture(rng, &fix);
        BandSystem& bs = bands(fix);
        Str x = random_str(rng, spec, bs.aut, 6);
        Str y;
        switch (pick(rng, 3)) {
            case 0:
                y = x;
                break;
            case 1: {  // an extension of x, sometimes equivalent
                y = x;
                for (int k = 0; k < pick(rng, 5); ++k) {
                    auto exts = bs.aut.left_extensions(bs.aut.state_of(y));
                    if (exts.empty()) break;
                    y = prepend(y, exts[pick(rng, (int)exts.size())]);
                }
                break;
            }
            default:
                y = random_str(rng, spec, bs.aut, 6);
        }
        bool got = bs.aut.h_equivalent(x, y);
        bool brute = ext_language8(bs.aut, bs.aut.state_of(x)) ==
                     ext_language8(bs.aut, bs.aut.state_of(y));
        if (got != brute) {
            res.ok = false;
            res.detail = fail(fix, "h_equivalent(" + x.to_string() + ", " +
                                       y.to_string() + ") = " +
                                       (got ? "true" : "false") +
                                       " but the |u| <= 8 languages " +
                                       (brute ? "agree" : "differ"));
            return res;
        }
    }
    return res;
}

namespace {
LinExprPtr random_expr(Rng& rng, int depth) {
    int k = pick(rng, depth <= 0 ? 6 : 10);
    switch (k) {
        case 0: return le_zero();
        case 1: return le_one();
        case 2: return le_fin(2 + pick(rng, 4));
        case 3: return le_omega();
        case 4: return le_omega_star();
        case 5: return le_zeta();
        case 6: {
            std::vector<LinExprPtr> parts;
            int n = 2 + pick(rng, 3);
            for (int i = 0; i < n; ++i) parts.push_back(random_expr(rng, depth - 1));
            return le_sum(std::move(parts));
        }
        case 7:
            return pick(rng, 2) ? le_prod_omega(random_expr(rng, depth - 1))
                                : le_prod_omega_star(random_expr(rng, depth - 1));
        case 8:
            return le_prod_fin(random_expr(rng, depth - 1), 2 + pick(rng, 3));
        default: {
            std::vector<LinExprPtr> parts;
            int n = 1 + pick(rng, 3);
            for (int i = 0; i < n; ++i) parts.push_back(random_expr(rng, depth - 1));
            return le_shuffle(std::move(parts));
        }
    }
}
}  // namespace

PropResult normalizer_idempotence(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    for (int i = 0; i < cases; ++i, ++res.cases) {
        LinExprPtr e = random_expr(rng, 4);
        LinExprPtr n1 = normalize_expr(e);
        LinExprPtr n2 = normalize_expr(n1);
        if (!le_equal(n1, n2)) {
            res.ok = false;
            res.detail = "normalize not idempotent on " + render_expr(e);
            return res;
        }
        std::string err;
        auto back = parse_expr(render_expr(n1), &err);
        if (!back || !le_equal(normalize_expr(back), n1)) {
            res.ok = false;
            res.detail = "render/parse does not round-trip " + render_expr(n1) +
                         (err.empty() ? "" : " (" + err + ")");
            return res;
        }
    }
    return res;
}

namespace {
std::vector<std::pair<std::string, HammockKey>> key_pool(Rng& rng, int n) {
    std::vector<std::pair<std::string, HammockKey>> keys;
    for (int i = 0; i < n; ++i) {
        std::string fix;
        const AlgebraSpec& spec = random_fixture(rng, &fix);
        BandSystem& bs = bands(fix);
        keys.emplace_back(fix, HammockKey{random_str(rng, spec, bs.aut, 4),
                                          pick(rng, 2) ? 1 : -1});
    }
    return keys;
}
}  // namespace

PropResult ordertype_prefix_check(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    std::map<std::string, std::unique_ptr<OrderTypeEngine>> engines;
    for (const char* f : kFixtures)
        engines.emplace(f, std::make_unique<OrderTypeEngine>(bands(f)));
    auto keys = key_pool(rng, cases);
    for (auto& [fix, key] : keys) {
        ++res.cases;
        LinExprPtr t = engines.at(fix)->hammock(key);
        // The normalizer only applies isomorphism-preserving rewrites, so a
        // second pass must still describe the same hammock.
        if (!prefix_check(key, t) || !prefix_check(key, normalize_expr(t))) {
            res.ok = false;
            res.detail = fail(describe(fix, key),
                              "prefix_check rejects " + render_expr(t));
            return res;
        }
    }
    return res;
}

PropResult recursion_depth_bound(std::uint64_t seed, int cases) {
    Rng rng(seed);
    PropResult res;
    auto keys = key_pool(rng, cases);
    for (auto& [fix, key] : keys) {
        ++res.cases;
        BandSystem& bs = bands(fix);
        OrderTypeEngine engine(bs);
        (void)engine.hammock(key);
        auto reach = bs.reachable_classes(key.base, key.side);
        // One level per consumed class, plus the innermost band-free level.
        int bound = (int)reach.classes.size() + 1;
        if (engine.max_depth_seen() > bound) {
            res.ok = false;
            res.detail = fail(describe(fix, key),
                              "fiber depth " +
                                  std::to_string(engine.max_depth_seen()) +
                                  " exceeds " + std::to_string(bound));
            return res;
        }
    }
    return res;
}

const Suite* all_suites(int* count) {
    static const Suite suites[] = {
        {"succ_pred_inversion", succ_pred_inversion},
        {"compare_oracle", compare_oracle},
        {"cb_monotone_idempotent", cb_monotone_idempotent},
        {"phi_locates_fibers", phi_locates_fibers},
        {"ost_neighbor_gap", ost_neighbor_gap},
        {"rotation_distinctness", rotation_distinctness},
        {"h_equivalence_brute", h_equivalence_brute},
        {"normalizer_idempotence", normalizer_idempotence},
        {"ordertype_prefix_check", ordertype_prefix_check},
        {"recursion_depth_bound", recursion_depth_bound},
    };
    *count = 10;
    return suites;
}

}  // namespace props
