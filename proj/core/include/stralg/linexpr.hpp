#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stralg {

// A finite description of a linear order built from 0, 1, finite orders,
// sums, the products .w / .w* / .n (anti-lexicographic: E.w = E+E+...) and
// the shuffle xi(...).  Values are immutable; share freely.
struct LinExpr;
using LinExprPtr = std::shared_ptr<const LinExpr>;

struct LinExpr {
    enum class Kind {
        Zero,
        One,
        Fin,            // n >= 2 points
        Sum,            // args left to right
        ProdOmega,      // args[0] . w
        ProdOmegaStar,  // args[0] . w*
        ProdFin,        // args[0] . n, n >= 2
        Shuffle,        // xi(args...)
    };
    Kind kind = Kind::Zero;
    long n = 0;  // Fin / ProdFin multiplicity
    std::vector<LinExprPtr> args;
};

LinExprPtr le_zero();
LinExprPtr le_one();
LinExprPtr le_fin(long n);  // 0 -> Zero, 1 -> One
LinExprPtr le_sum(std::vector<LinExprPtr> parts);
LinExprPtr le_prod_omega(LinExprPtr base);
LinExprPtr le_prod_omega_star(LinExprPtr base);
LinExprPtr le_prod_fin(LinExprPtr base, long n);
LinExprPtr le_shuffle(std::vector<LinExprPtr> parts);
LinExprPtr le_omega();       // 1.w
LinExprPtr le_omega_star();  // 1.w*
LinExprPtr le_zeta();        // w* + w

// Structural equality / deterministic total order on raw trees.
bool le_equal(const LinExprPtr& a, const LinExprPtr& b);
int le_compare(const LinExprPtr& a, const LinExprPtr& b);

// Rewrites to the canonical normal form: flattened sums, folded finite
// constants, finite addends absorbed next to w/w* ends, shuffle hygiene,
// the xi collapse rules, and adjacent repeated blocks folded into .n
// products.  Every rule is an order isomorphism; idempotent.
LinExprPtr normalize_expr(const LinExprPtr& e);

// Structural equality of normal forms (sound for isomorphism, not complete).
bool expr_equal(const LinExprPtr& a, const LinExprPtr& b);

// Canonical text form; parse accepts the same grammar:
//   atoms 0, 1, n, w, w*, z (= w* + w);  E + E (left-assoc);
//   E.w / E.w* / E.n;  xi(E, ...);  parentheses.
std::string render_expr(const LinExprPtr& e);
LinExprPtr parse_expr(std::string_view text, std::string* error = nullptr);

// Whether a finite order prepended (appended) on the left (right) is
// absorbed: the expression begins with an w-ray (ends with an w*-ray).
bool begins_with_omega(const LinExprPtr& e);
bool ends_with_omega_star(const LinExprPtr& e);

}  // namespace stralg
