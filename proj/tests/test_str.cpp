#include "doctest.h"
#include "fixtures.hpp"

#include "stralg/str.hpp"

using namespace stralg;
using testutil::fixture;
using testutil::lit;

TEST_CASE("literal parsing and printing") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str x = lit(g0, "a3.a1'.a0");
    CHECK(x.size() == 3);
    CHECK(x.to_string() == "a3.a1'.a0");
    // syl[0] is the first (rightmost-written) syllable.
    CHECK(g0.letter_name(x.syl[0]) == "a0");
    CHECK(g0.letter_name(x.syl[2]) == "a3");

    Str z = lit(g0, "1(v1,-)");
    CHECK(z.is_zero());
    CHECK(z.to_string() == "1(v1,-)");

    CHECK(!parse_str(g0, "a3.a2.a1"));   // relation a3a2 forbidden
    CHECK(!parse_str(g0, "a1.a1'"));     // immediate cancellation
    CHECK(!parse_str(g0, "nosucharrow"));
}

TEST_CASE("theta, delta and relative theta") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str x = lit(g0, "a3.a1'.a0");
    CHECK(x.theta() == -1);  // last syllable a3 is direct
    CHECK(x.delta() == 0);   // mixed signs
    CHECK(lit(g0, "a2'.a1'").delta() == 1);
    CHECK(lit(g0, "b1.a4").delta() == -1);

    Str base = lit(g0, "a1'.a0");
    CHECK(x.theta_rel(base) == -1);
    CHECK(lit(g0, "a2'.a1'.a0").theta_rel(base) == 1);
    CHECK(base.theta_rel(base) == 0);
}

TEST_CASE("left substrings") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str x = lit(g0, "b1.a4.a3.a1'.a0");
    CHECK(x.left_substring(3) == lit(g0, "a3.a1'.a0"));
    CHECK(x.left_substring(0).is_zero());
    CHECK(x.left_substring(0).zero_vertex == x.source());
    CHECK(x.has_left_substring(lit(g0, "a1'.a0")));
    CHECK(!x.has_left_substring(lit(g0, "a2'.a1'.a0")));
    CHECK(x.has_left_substring(x));
}

TEST_CASE("inversion") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str x = lit(g0, "a3.a1'.a0");
    CHECK(x.inverted().to_string() == "a0'.a1.a3'");
    CHECK(x.inverted().inverted() == x);
    CHECK(x.inverted().source() == x.target());
    CHECK(x.inverted().target() == x.source());
}

TEST_CASE("concat_left and common_left_substring") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str lo = lit(g0, "a1'.a0");
    Str u = lit(g0, "a4.a3");
    auto glued = concat_left(u, lo);
    REQUIRE(glued);
    CHECK(*glued == lit(g0, "a4.a3.a1'.a0"));
    CHECK(!concat_left(lit(g0, "a2'"), lit(g0, "a3.a1'.a0")));  // wrong junction

    auto w = common_left_substring(lit(g0, "b1.a4.a3.a1'.a0"),
                                   lit(g0, "a5'.a3.a1'.a0"));
    REQUIRE(w);
    CHECK(*w == lit(g0, "a3.a1'.a0"));
    CHECK(!common_left_substring(lit(g0, "a0"), lit(g0, "m1")));
}

TEST_CASE("mk_string validates whole words") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str good = lit(g0, "a3.a1'.a0");
    std::string err;
    CHECK(mk_string(g0, good.syl, &err));
    std::vector<Letter> bad = lit(g0, "a3").syl;
    bad.insert(bad.begin(), lit(g0, "a2").syl[0]);  // a3.a2 in rho
    CHECK(!mk_string(g0, bad, &err));
    CHECK(!err.empty());
}

TEST_CASE("zero strings carry parity as left sign") {
    const AlgebraSpec& g0 = fixture("gamma0");
    Str plus = Str::zero(g0, g0.vertex_id("v1"), 1);
    Str minus = Str::zero(g0, g0.vertex_id("v1"), -1);
    CHECK(plus.eps_left() == 1);
    CHECK(minus.eps_left() == -1);
    CHECK(plus != minus);
}
