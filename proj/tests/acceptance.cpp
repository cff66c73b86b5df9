// Acceptance gate: ten criteria, one [PASS]/[FAIL] line each, nonzero exit
// when anything fails.  Every check is an exact structural equality against
// the reference fixture results.

#include <chrono>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "properties.hpp"
#include "stralg/bands.hpp"
#include "stralg/completion.hpp"
#include "stralg/condensation.hpp"
#include "stralg/hammock.hpp"
#include "stralg/linexpr.hpp"
#include "stralg/ordertype.hpp"

using namespace stralg;
using testutil::bands;
using testutil::fixture;
using testutil::lit;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

LinExprPtr P(const std::string& text) {
    std::string err;
    auto e = parse_expr(text, &err);
    if (!e) throw std::runtime_error("bad expression '" + text + "': " + err);
    return e;
}

int census_class(BandSystem& bs, const Str& base, int side,
                 const std::string& name) {
    auto sub = bs.census(base, side);
    for (size_t i = 0; i < sub.names.size(); ++i)
        if (sub.names[i] == name) return sub.classes[i];
    throw std::runtime_error("no census class " + name);
}

int class_of_band(BandSystem& bs, const Str& band) {
    Str canon = bs.canonical_rotation(band);
    for (size_t i = 0; i < bs.primes.size(); ++i)
        if (bs.primes[i].word == canon) return bs.class_of_prime((int)i);
    return -1;
}

// 1. Class census of (a0,+1): four classes with the reference membership,
//    domesticity, order B1<B2 / B3<B4, minimal {B1,B3}.
void criterion1(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");
    auto sub = bs.census(lit(g0, "a0"), 1);
    c.expect(sub.classes.size() == 4, "expected 4 classes");
    if (!c.ok) return;
    auto local = [&](const char* band) {
        return sub.index_of(class_of_band(bs, lit(g0, band)));
    };
    int b = local("b4'.b3.b2'.b1"), d = local("d2'.d1");
    int egk = local("e3.e2'.e1'"), m = local("m2'.m1");
    c.expect(b >= 0 && sub.names[b] == "B1", "b-class is not B1");
    c.expect(d >= 0 && sub.names[d] == "B2", "d-class is not B2");
    c.expect(egk >= 0 && sub.names[egk] == "B3", "egk-class is not B3");
    c.expect(m >= 0 && sub.names[m] == "B4", "m-class is not B4");
    c.expect(egk == local("g4.g3'.g2.g1'") && egk == local("k2'.k1"),
             "e, g, k cycles not in one class");
    c.expect(local("d4'.d3") == d, "two d-cycles not in one class");
    c.expect(bs.qba.classes[sub.classes[b]].domestic, "B1 not domestic");
    c.expect(bs.qba.classes[sub.classes[m]].domestic, "B4 not domestic");
    c.expect(!bs.qba.classes[sub.classes[d]].domestic, "B2 domestic");
    c.expect(!bs.qba.classes[sub.classes[egk]].domestic, "B3 domestic");
    std::set<std::pair<int, int>> order(sub.order.begin(), sub.order.end());
    c.expect(order == std::set<std::pair<int, int>>{{b, d}, {egk, m}},
             "order is not exactly B1<B2, B3<B4");
    std::set<int> minimal(sub.minimal.begin(), sub.minimal.end());
    c.expect(minimal == std::set<int>{b, egk}, "minimal != {B1, B3}");
}

// 2. Main result: order type of H^{+1}(a0).
void criterion2(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");
    HammockKey key{lit(g0, "a0"), 1};
    auto t = hammock_order_type(bs, key);
    c.expect(expr_equal(t, P("((w+xi(z)+w*).w+w*).2+w+xi(z,z,w*+(w+w*).w)+w*")),
             "got " + render_expr(t));
    c.expect(prefix_check(key, t), "prefix_check rejected the expression");
}

// 3. Sub-results: H^{-1}(e2'.e1'.a2'.a1'.a0), the three center interval
//    types, and the beam counts k_B3 = 3, k_B2 = 1, k_B1 = 0.
void criterion3(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");
    HammockKey dkey{lit(g0, "e2'.e1'.a2'.a1'.a0"), -1};
    auto t = hammock_order_type(bs, dkey);
    c.expect(expr_equal(t, P("w+xi(z,z,w*+(w+w*).w)+w*")),
             "H^{-1} type: got " + render_expr(t));

    OrderTypeEngine engine(bs);
    auto types = engine.center_interval_types(dkey);
    c.expect(types.size() == 3, "expected 3 center classes");
    std::multiset<std::string> got;
    for (auto& [cc, ty] : types) got.insert(render_expr(ty));
    c.expect(got == std::multiset<std::string>{"z", "z", "z.w"},
             "interval types are not {z, z, z.w}");

    HammockKey key{lit(g0, "a0"), 1};
    BContext c3(bs, key, census_class(bs, key.base, key.side, "B3"));
    BContext c1(bs, key, census_class(bs, key.base, key.side, "B1"));
    c.expect(beam_structure(c3).kB == 3, "k_B3 != 3");
    c.expect(beam_structure(c1).kB == 0, "k_B1 != 0");
    // B2 is not minimal for (a0,+1); its beam count is read off a hammock it
    // is minimal for.
    HammockKey dmin{Str::zero(g0, g0.vertex_id("v9"), 1), 1};
    auto rep = bs.reachable_classes(dmin.base, dmin.side);
    c.expect(rep.minimal.size() == 1, "1(v9,+) has no unique minimal class");
    if (!c.ok) return;
    int dcls_fwd = class_of_band(bs, lit(g0, "d2'.d1"));
    int dcls_bwd = class_of_band(bs, lit(g0, "d2'.d1").inverted());
    c.expect(rep.minimal[0] == dcls_fwd || rep.minimal[0] == dcls_bwd,
             "minimal class of 1(v9,+) is not a d-class orientation");
    BContext c2(bs, dmin, rep.minimal[0]);
    c.expect(beam_structure(c2).kB == 1, "k_B2 != 1");
}

// 4. Finite sets: OST\STB for B1 and B3, the B1 boundary list, n_B1 = 3.
void criterion4(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");
    HammockKey key{lit(g0, "a0"), 1};
    auto strs = [](const std::vector<Str>& xs) {
        std::vector<std::string> out;
        for (auto& x : xs) out.push_back(x.to_string());
        return out;
    };
    BContext c1(bs, key, census_class(bs, key.base, key.side, "B1"));
    c.expect(strs(ost_minus_stb(c1)) ==
                 std::vector<std::string>{"a0", "a3.a1'.a0", "a1'.a0"},
             "OST\\STB for B1 wrong");
    BContext c3(bs, key, census_class(bs, key.base, key.side, "B3"));
    c.expect(strs(ost_minus_stb(c3)) == std::vector<std::string>{"a0", "a1'.a0"},
             "OST\\STB for B3 wrong");
    auto br = beam_structure(c1);
    c.expect(strs(br.boundaries) ==
                 std::vector<std::string>{"a0", "a3.a1'.a0", "a1'.a0",
                                          "h1'.g1'.f'.e2'.e1'.a2'.a1'.a0"},
             "B1 boundary list wrong");
    c.expect(br.beams.size() == 3, "n_B1 != 3");
}

// 5. Limits: the B3 ray out of a2'.a1'.a0 and the plain limits at 1(v5,+-).
void criterion5(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");
    HammockKey key{lit(g0, "a0"), 1};
    BContext ctx(bs, key, census_class(bs, key.base, key.side, "B3"));
    auto up = ost_limit(ctx, lit(g0, "a2'.a1'.a0"), true);
    c.expect(up && up->to_string() == "^inf(e3.e2'.e1').a2'.a1'.a0",
             up ? "got " + up->to_string() : "no limit");

    const AlgebraSpec& g = fixture("gamma");
    Str zp = Str::zero(g, g.vertex_id("v5"), 1);
    auto pl = plain_limit(HammockKey{zp, 1}, zp, true);
    c.expect(pl && pl->to_string() == "^inf(c.b.a.e'.b.a.f.c.b.d').1(v5,+)",
             pl ? "gamma limit: got " + pl->to_string() : "gamma: no limit");
}

// 6. Band ends of the egk class.
void criterion6(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");
    int cls = census_class(bs, lit(g0, "a0"), 1, "B3");
    auto ends = band_ends(bs, cls);
    std::set<std::string> bal, balbar;
    for (auto& b : ends.ba_l) bal.insert(b.to_string());
    for (auto& b : ends.ba_lbar) balbar.insert(b.to_string());
    c.expect(balbar == std::set<std::string>{"k2'.k1"}, "Ba_lbar != {k2'.k1}");
    c.expect(bal == std::set<std::string>{"e3.e2'.e1'", "g4.g3'.g2.g1'"},
             "Ba_l != {e3.e2'.e1', g4.g3'.g2.g1'}");
    // The e-cycle in its valid spelling e3.e2'.e1' is a band, the raw cycle
    // e1.e2.e3' direction is the same cyclic word inverted.
    c.expect(bs.is_band_rotation(lit(g0, "e3.e2'.e1'")), "e3.e2'.e1' not a band");
}

// 7. gamma': b-equivalent but not h-equivalent, witness a.c.f.
void criterion7(Check& c) {
    const AlgebraSpec& gp = fixture("gamma_prime");
    Str x = lit(gp, "f");
    Str y = lit(gp, "f.e.d'.f");
    c.expect(b_equivalent(x, y), "b_equivalent(f, f.e.d'.f) is false");
    Automaton aut(gp);
    c.expect(!aut.h_equivalent(x, y), "h_equivalent(f, f.e.d'.f) is true");
    c.expect(parse_str(gp, "a.c.f").has_value() &&
                 !parse_str(gp, "a.c.f.e.d'.f").has_value(),
             "witness a.c separates the wrong way");
}

// 8. gamma'': a2.a1 lies in St_{+-1}(B) without being a B-center.
void criterion8(Check& c) {
    BandSystem& bs = bands("gamma_dprime");
    const AlgebraSpec& gd = fixture("gamma_dprime");
    Str base = Str::zero(gd, gd.vertex_id("v0"), -1);
    HammockKey key{base, -1};
    BContext ctx(bs, key, census_class(bs, base, -1, "B1"));
    Str x = lit(gd, "a2.a1");
    c.expect(stb_pm1(ctx, x), "a2.a1 not in St_{+-1}(B)");
    c.expect(!is_center(ctx, x), "a2.a1 reported as a center");
}

// 9. Gap classification: PLUS/MINUS tags for the two one-sided limits, no
//    ZERO tag in the domestic B1 census.
void criterion9(Check& c) {
    BandSystem& bs = bands("gamma0");
    const AlgebraSpec& g0 = fixture("gamma0");

    HammockKey key{lit(g0, "a0"), 1};
    BContext up_ctx(bs, key, census_class(bs, key.base, key.side, "B3"));
    auto up = ost_limit(up_ctx, lit(g0, "a2'.a1'.a0"), true);
    c.expect(up && classify_limit_location(up_ctx, *up) == GapLocation::PLUS,
             "ascending limit not PLUS");

    HammockKey dkey{lit(g0, "e2'.e1'.a2'.a1'.a0"), -1};
    BContext dn_ctx(bs, dkey, census_class(bs, dkey.base, dkey.side, "B1"));
    auto down = ost_limit(dn_ctx, dn_ctx.max_str, false);
    c.expect(down && classify_limit_location(dn_ctx, *down) == GapLocation::MINUS,
             "descending limit not MINUS");

    BContext b1(bs, key, census_class(bs, key.base, key.side, "B1"));
    auto census = gap_census(b1);
    c.expect(census.domestic && !census.zero,
             "domestic B1 census carries a ZERO tag");
}

// 10. The randomized invariant suites, 1000 cases each.
void criterion10(Check& c) {
    int count = 0;
    const props::Suite* suites = props::all_suites(&count);
    for (int i = 0; i < count; ++i) {
        auto r = suites[i].run(0x5eed0000u + i, 1000);
        c.expect(r.ok, std::string(suites[i].name) + ": " + r.detail);
        c.expect(r.cases > 0, std::string(suites[i].name) + " ran no cases");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        void (*run)(Check&);
    };
    const Criterion criteria[] = {
        {"1 class census of (a0,+1)", criterion1},
        {"2 order type of H^{+1}(a0)", criterion2},
        {"3 sub-hammock, interval types, beam counts", criterion3},
        {"4 boundary and OST\\STB sets", criterion4},
        {"5 one-sided limits", criterion5},
        {"6 band ends of the egk class", criterion6},
        {"7 b-equivalence vs h-equivalence", criterion7},
        {"8 two-sided non-center", criterion8},
        {"9 gap locations", criterion9},
        {"10 property suites (10 x 1000 cases)", criterion10},
    };
    bool all_ok = true;
    for (const Criterion& cr : criteria) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::printf("[%s] criterion %s (%lld ms)%s%s\n", c.ok ? "PASS" : "FAIL",
                    cr.label, (long long)ms, c.ok ? "" : " -- ",
                    c.ok ? "" : c.detail.c_str());
        all_ok &= c.ok;
    }
    return all_ok ? 0 : 1;
}
