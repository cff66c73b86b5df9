#include "stralg/linexpr.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <stdexcept>

namespace stralg {

namespace {

LinExprPtr make(LinExpr::Kind k, long n, std::vector<LinExprPtr> args) {
    auto e = std::make_shared<LinExpr>();
    e->kind = k;
    e->n = n;
    e->args = std::move(args);
    return e;
}

bool is_finite(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::One || e->kind == LinExpr::Kind::Fin;
}

long fin_value(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::One ? 1 : e->n;
}

}  // namespace

LinExprPtr le_zero() {
    static LinExprPtr z = make(LinExpr::Kind::Zero, 0, {});
    return z;
}

LinExprPtr le_one() {
    static LinExprPtr o = make(LinExpr::Kind::One, 0, {});
    return o;
}

LinExprPtr le_fin(long n) {
    if (n <= 0) return le_zero();
    if (n == 1) return le_one();
    return make(LinExpr::Kind::Fin, n, {});
}

LinExprPtr le_sum(std::vector<LinExprPtr> parts) {
    return make(LinExpr::Kind::Sum, 0, std::move(parts));
}

LinExprPtr le_prod_omega(LinExprPtr base) {
    return make(LinExpr::Kind::ProdOmega, 0, {std::move(base)});
}

LinExprPtr le_prod_omega_star(LinExprPtr base) {
    return make(LinExpr::Kind::ProdOmegaStar, 0, {std::move(base)});
}

LinExprPtr le_prod_fin(LinExprPtr base, long n) {
    return make(LinExpr::Kind::ProdFin, n, {std::move(base)});
}

LinExprPtr le_shuffle(std::vector<LinExprPtr> parts) {
    return make(LinExpr::Kind::Shuffle, 0, std::move(parts));
}

LinExprPtr le_omega() { return le_prod_omega(le_one()); }
LinExprPtr le_omega_star() { return le_prod_omega_star(le_one()); }
LinExprPtr le_zeta() { return le_sum({le_omega_star(), le_omega()}); }

int le_compare(const LinExprPtr& a, const LinExprPtr& b) {
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->n != b->n) return a->n < b->n ? -1 : 1;
    if (a->args.size() != b->args.size())
        return a->args.size() < b->args.size() ? -1 : 1;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (int c = le_compare(a->args[i], b->args[i])) return c;
    return 0;
}

bool le_equal(const LinExprPtr& a, const LinExprPtr& b) {
    return le_compare(a, b) == 0;
}

bool begins_with_omega(const LinExprPtr& e) {
    switch (e->kind) {
        case LinExpr::Kind::Sum:
            return !e->args.empty() && begins_with_omega(e->args.front());
        case LinExpr::Kind::ProdOmega:
            return is_finite(e->args[0]) || begins_with_omega(e->args[0]);
        case LinExpr::Kind::ProdFin:
            return begins_with_omega(e->args[0]);
        default:
            return false;
    }
}

bool ends_with_omega_star(const LinExprPtr& e) {
    switch (e->kind) {
        case LinExpr::Kind::Sum:
            return !e->args.empty() && ends_with_omega_star(e->args.back());
        case LinExpr::Kind::ProdOmegaStar:
            return is_finite(e->args[0]) || ends_with_omega_star(e->args[0]);
        case LinExpr::Kind::ProdFin:
            return ends_with_omega_star(e->args[0]);
        default:
            return false;
    }
}

namespace {

// A finite order vanishes at an interior seam of E + E when the seam is the
// top of an w-ray or the bottom of an w*-ray.
bool seam_absorbs(const LinExprPtr& e) {
    return begins_with_omega(e) || ends_with_omega_star(e);
}

LinExprPtr sum_of(std::vector<LinExprPtr> children) {
    if (children.empty()) return le_zero();
    if (children.size() == 1) return children[0];
    return le_sum(std::move(children));
}

std::vector<LinExprPtr> norm_children(std::vector<LinExprPtr> in);

LinExprPtr norm_sum_list(std::vector<LinExprPtr> in) {
    return sum_of(norm_children(std::move(in)));
}

// Normalized product E.w (base already normalized).
LinExprPtr norm_prod_omega(LinExprPtr base) {
    if (base->kind == LinExpr::Kind::Zero) return le_zero();
    if (is_finite(base)) return le_prod_omega(le_one());
    if (base->kind == LinExpr::Kind::Sum) {
        std::vector<LinExprPtr> c = base->args;
        LinExprPtr lead;
        for (;;) {
            if (c.size() >= 2 && is_finite(c.back()) &&
                seam_absorbs(sum_of(std::vector<LinExprPtr>(c.begin(), c.end() - 1)))) {
                c.pop_back();  // (G + f).w = G.w
                continue;
            }
            if (c.size() >= 2 && is_finite(c.front()) && !lead &&
                seam_absorbs(sum_of(std::vector<LinExprPtr>(c.begin() + 1, c.end())))) {
                lead = c.front();  // (f + G).w = f + G.w
                c.erase(c.begin());
                continue;
            }
            break;
        }
        LinExprPtr prod = le_prod_omega(sum_of(std::move(c)));
        if (lead) return norm_sum_list({lead, prod});
        return prod;
    }
    return le_prod_omega(std::move(base));
}

LinExprPtr norm_prod_omega_star(LinExprPtr base) {
    if (base->kind == LinExpr::Kind::Zero) return le_zero();
    if (is_finite(base)) return le_prod_omega_star(le_one());
    if (base->kind == LinExpr::Kind::Sum) {
        std::vector<LinExprPtr> c = base->args;
        LinExprPtr tail;
        for (;;) {
            if (c.size() >= 2 && is_finite(c.front()) &&
                seam_absorbs(sum_of(std::vector<LinExprPtr>(c.begin() + 1, c.end())))) {
                c.erase(c.begin());  // (f + G).w* = G.w*
                continue;
            }
            if (c.size() >= 2 && is_finite(c.back()) && !tail &&
                seam_absorbs(sum_of(std::vector<LinExprPtr>(c.begin(), c.end() - 1)))) {
                tail = c.back();  // (G + f).w* = G.w* + f
                c.pop_back();
                continue;
            }
            break;
        }
        LinExprPtr prod = le_prod_omega_star(sum_of(std::move(c)));
        if (tail) return norm_sum_list({prod, tail});
        return prod;
    }
    return le_prod_omega_star(std::move(base));
}

LinExprPtr norm_prod_fin(LinExprPtr base, long n) {
    if (n <= 0 || base->kind == LinExpr::Kind::Zero) return le_zero();
    if (n == 1) return base;
    if (is_finite(base)) return le_fin(fin_value(base) * n);
    if (base->kind == LinExpr::Kind::Sum) {
        std::vector<LinExprPtr> c = base->args;
        LinExprPtr lead, tail;
        for (;;) {
            if (c.size() >= 2 && is_finite(c.front()) && !lead &&
                seam_absorbs(sum_of(std::vector<LinExprPtr>(c.begin() + 1, c.end())))) {
                lead = c.front();  // (f + G).n = f + G.n
                c.erase(c.begin());
                continue;
            }
            if (c.size() >= 2 && is_finite(c.back()) && !tail &&
                seam_absorbs(sum_of(std::vector<LinExprPtr>(c.begin(), c.end() - 1)))) {
                tail = c.back();  // (G + f).n = G.n + f
                c.pop_back();
                continue;
            }
            break;
        }
        base = sum_of(std::move(c));
        if (lead || tail) {
            std::vector<LinExprPtr> parts;
            if (lead) parts.push_back(lead);
            parts.push_back(norm_prod_fin(base, n));
            if (tail) parts.push_back(tail);
            return norm_sum_list(std::move(parts));
        }
    }
    // Unfold only when a cross-seam rule fires; otherwise the block folding
    // of the unfolded sum reconstructs the product verbatim.
    if (n <= 16) {
        std::vector<LinExprPtr> copies(n, base);
        LinExprPtr expanded = norm_sum_list(std::move(copies));
        if (!le_equal(expanded, le_prod_fin(base, n))) return expanded;
    }
    return le_prod_fin(std::move(base), n);
}

// Returns the single shuffle child and the flanking segments when base has
// the shape A + xi(...) + B (A, B possibly empty); nullptr otherwise.
const LinExpr* split_around_shuffle(const LinExprPtr& base,
                                    std::vector<LinExprPtr>& before,
                                    std::vector<LinExprPtr>& after,
                                    LinExprPtr& shuffle) {
    if (base->kind == LinExpr::Kind::Shuffle) {
        shuffle = base;
        return base.get();
    }
    if (base->kind != LinExpr::Kind::Sum) return nullptr;
    int pos = -1;
    for (size_t i = 0; i < base->args.size(); ++i) {
        if (base->args[i]->kind == LinExpr::Kind::Shuffle) {
            if (pos >= 0) return nullptr;
            pos = (int)i;
        }
    }
    if (pos < 0) return nullptr;
    before.assign(base->args.begin(), base->args.begin() + pos);
    after.assign(base->args.begin() + pos + 1, base->args.end());
    shuffle = base->args[pos];
    return shuffle.get();
}

bool shuffle_has_arg(const LinExprPtr& shuffle, const LinExprPtr& m) {
    for (const auto& a : shuffle->args)
        if (le_equal(a, m)) return true;
    return false;
}

// Children are individually normalized; applies the sum-level rules.
std::vector<LinExprPtr> norm_children(std::vector<LinExprPtr> in) {
    // Flatten and drop zeros.
    std::vector<LinExprPtr> c;
    for (auto& e : in) {
        if (e->kind == LinExpr::Kind::Zero) continue;
        if (e->kind == LinExpr::Kind::Sum)
            c.insert(c.end(), e->args.begin(), e->args.end());
        else
            c.push_back(e);
    }

    bool changed = true;
    int guard = 0;
    while (changed) {
        changed = false;
        assert(++guard < 10000);

        // Fold runs of finite constants.
        for (size_t i = 0; i + 1 < c.size(); ++i) {
            if (is_finite(c[i]) && is_finite(c[i + 1])) {
                c[i] = le_fin(fin_value(c[i]) + fin_value(c[i + 1]));
                c.erase(c.begin() + i + 1);
                changed = true;
                --i;
            }
        }

        // Absorb finite addends into neighbouring rays: n + w-ray = w-ray,
        // w*-ray + n = w*-ray.
        for (size_t i = 0; i < c.size(); ++i) {
            if (!is_finite(c[i])) continue;
            if ((i + 1 < c.size() && begins_with_omega(c[i + 1])) ||
                (i > 0 && ends_with_omega_star(c[i - 1]))) {
                c.erase(c.begin() + i);
                changed = true;
                --i;
            }
        }
        if (changed) continue;

        // Rotate addends into a neighbouring ray: S + (B_1+..+B_m).w is
        // (B_{m-t+1}+..+B_m+B_1+..+B_{m-t}).w when S matches the last t
        // addends of the base; a full copy (t = m) is absorbed outright.
        // Dually (B_1+..+B_m).w* + S when S matches the first t addends.
        auto addend_list = [](const LinExprPtr& base) {
            if (base->kind == LinExpr::Kind::Sum) return base->args;
            return std::vector<LinExprPtr>{base};
        };
        auto splice_product = [&](size_t at, LinExprPtr np) {
            c.erase(c.begin() + at);
            if (np->kind == LinExpr::Kind::Sum)
                c.insert(c.begin() + at, np->args.begin(), np->args.end());
            else
                c.insert(c.begin() + at, std::move(np));
        };
        for (size_t i = 0; i < c.size() && !changed; ++i) {
            if (c[i]->kind != LinExpr::Kind::ProdOmega) continue;
            std::vector<LinExprPtr> B = addend_list(c[i]->args[0]);
            size_t m = B.size(), t = 0;
            while (t < m && t < i && le_equal(c[i - 1 - t], B[m - 1 - t])) ++t;
            if (t == 0) continue;
            LinExprPtr np = c[i];
            if (t < m) {
                std::vector<LinExprPtr> rot(B.begin() + (m - t), B.end());
                rot.insert(rot.end(), B.begin(), B.begin() + (m - t));
                np = norm_prod_omega(sum_of(std::move(rot)));
            }
            c.erase(c.begin() + (i - t), c.begin() + i);
            splice_product(i - t, std::move(np));
            changed = true;
        }
        if (changed) continue;
        for (size_t i = 0; i < c.size() && !changed; ++i) {
            if (c[i]->kind != LinExpr::Kind::ProdOmegaStar) continue;
            std::vector<LinExprPtr> B = addend_list(c[i]->args[0]);
            size_t m = B.size(), t = 0;
            while (t < m && i + 1 + t < c.size() &&
                   le_equal(c[i + 1 + t], B[t]))
                ++t;
            if (t == 0) continue;
            LinExprPtr np = c[i];
            if (t < m) {
                std::vector<LinExprPtr> rot(B.begin() + t, B.end());
                rot.insert(rot.end(), B.begin(), B.begin() + t);
                np = norm_prod_omega_star(sum_of(std::move(rot)));
            }
            c.erase(c.begin() + i + 1, c.begin() + i + 1 + t);
            splice_product(i, std::move(np));
            changed = true;
        }
        if (changed) continue;

        // xi(L) + M + xi(L) = xi(L) when M is empty or sums to an argument.
        for (size_t i = 0; i < c.size() && !changed; ++i) {
            if (c[i]->kind != LinExpr::Kind::Shuffle) continue;
            for (size_t j = i + 1; j < c.size(); ++j) {
                if (c[j]->kind != LinExpr::Kind::Shuffle) continue;
                if (!le_equal(c[i], c[j])) break;
                LinExprPtr mid = norm_sum_list(
                    std::vector<LinExprPtr>(c.begin() + i + 1, c.begin() + j));
                if (mid->kind == LinExpr::Kind::Zero || shuffle_has_arg(c[i], mid)) {
                    c.erase(c.begin() + i + 1, c.begin() + j + 1);
                    changed = true;
                }
                break;
            }
        }
        if (changed) continue;

        // (A + xi(L) + B).z = xi(L) when B + A sums to an argument of xi(L);
        // the pair E.w* , E.w spells E.z.
        for (size_t i = 0; i + 1 < c.size() && !changed; ++i) {
            if (c[i]->kind != LinExpr::Kind::ProdOmegaStar) continue;
            if (c[i + 1]->kind != LinExpr::Kind::ProdOmega) continue;
            if (!le_equal(c[i]->args[0], c[i + 1]->args[0])) continue;
            std::vector<LinExprPtr> before, after;
            LinExprPtr shuffle;
            if (!split_around_shuffle(c[i]->args[0], before, after, shuffle)) continue;
            std::vector<LinExprPtr> seam = after;
            seam.insert(seam.end(), before.begin(), before.end());
            LinExprPtr m = norm_sum_list(std::move(seam));
            if (m->kind == LinExpr::Kind::Zero || shuffle_has_arg(shuffle, m)) {
                c[i] = shuffle;
                c.erase(c.begin() + i + 1);
                changed = true;
            }
        }
    }

    // Fold adjacent repeated blocks into .k products (smallest block first).
    for (size_t i = 0; i < c.size(); ++i) {
        for (size_t len = 1; i + 2 * len <= c.size(); ++len) {
            size_t k = 1;
            while (i + (k + 1) * len <= c.size() &&
                   std::equal(c.begin() + i, c.begin() + i + len,
                              c.begin() + i + k * len, le_equal)) {
                ++k;
            }
            if (k >= 2) {
                LinExprPtr blk = sum_of(
                    std::vector<LinExprPtr>(c.begin() + i, c.begin() + i + len));
                c.erase(c.begin() + i, c.begin() + i + k * len);
                c.insert(c.begin() + i, le_prod_fin(blk, (long)k));
                break;
            }
        }
    }
    return c;
}

}  // namespace

LinExprPtr normalize_expr(const LinExprPtr& e) {
    switch (e->kind) {
        case LinExpr::Kind::Zero:
        case LinExpr::Kind::One:
            return e;
        case LinExpr::Kind::Fin:
            return le_fin(e->n);
        case LinExpr::Kind::Sum: {
            std::vector<LinExprPtr> c;
            c.reserve(e->args.size());
            for (const auto& a : e->args) c.push_back(normalize_expr(a));
            return norm_sum_list(std::move(c));
        }
        case LinExpr::Kind::ProdOmega:
            return norm_prod_omega(normalize_expr(e->args[0]));
        case LinExpr::Kind::ProdOmegaStar:
            return norm_prod_omega_star(normalize_expr(e->args[0]));
        case LinExpr::Kind::ProdFin:
            return norm_prod_fin(normalize_expr(e->args[0]), e->n);
        case LinExpr::Kind::Shuffle: {
            std::vector<LinExprPtr> c;
            // Flattening a nested shuffle and dropping duplicates are both
            // order isomorphisms of the dense interleaving.
            std::vector<LinExprPtr> flat;
            for (const auto& a : e->args) {
                LinExprPtr na = normalize_expr(a);
                if (na->kind == LinExpr::Kind::Shuffle)
                    flat.insert(flat.end(), na->args.begin(), na->args.end());
                else
                    flat.push_back(std::move(na));
            }
            for (auto& na : flat) {
                if (na->kind == LinExpr::Kind::Zero) continue;
                bool dup = false;
                for (const auto& prev : c)
                    if (le_equal(prev, na)) dup = true;
                if (!dup) c.push_back(na);
            }
            if (c.empty()) return le_zero();
            std::sort(c.begin(), c.end(), [](const LinExprPtr& a, const LinExprPtr& b) {
                return le_compare(a, b) < 0;
            });
            return le_shuffle(std::move(c));
        }
    }
    return e;
}

bool expr_equal(const LinExprPtr& a, const LinExprPtr& b) {
    return le_equal(normalize_expr(a), normalize_expr(b));
}

namespace {

bool is_zeta(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::Sum && e->args.size() == 2 &&
           e->args[0]->kind == LinExpr::Kind::ProdOmegaStar &&
           e->args[0]->args[0]->kind == LinExpr::Kind::One &&
           e->args[1]->kind == LinExpr::Kind::ProdOmega &&
           e->args[1]->args[0]->kind == LinExpr::Kind::One;
}

void render(const LinExprPtr& e, std::string& out, bool parenthesize_sum) {
    if (is_zeta(e)) {
        out += "z";
        return;
    }
    switch (e->kind) {
        case LinExpr::Kind::Zero:
            out += "0";
            break;
        case LinExpr::Kind::One:
            out += "1";
            break;
        case LinExpr::Kind::Fin:
            out += std::to_string(e->n);
            break;
        case LinExpr::Kind::Sum: {
            if (parenthesize_sum) out += "(";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) out += "+";
                render(e->args[i], out, false);
            }
            if (parenthesize_sum) out += ")";
            break;
        }
        case LinExpr::Kind::ProdOmega:
        case LinExpr::Kind::ProdOmegaStar:
        case LinExpr::Kind::ProdFin: {
            const LinExprPtr& b = e->args[0];
            if (b->kind == LinExpr::Kind::One && e->kind != LinExpr::Kind::ProdFin) {
                out += e->kind == LinExpr::Kind::ProdOmega ? "w" : "w*";
                break;
            }
            render(b, out, true);
            out += ".";
            if (e->kind == LinExpr::Kind::ProdOmega)
                out += "w";
            else if (e->kind == LinExpr::Kind::ProdOmegaStar)
                out += "w*";
            else
                out += std::to_string(e->n);
            break;
        }
        case LinExpr::Kind::Shuffle: {
            out += "xi(";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) out += ",";
                render(e->args[i], out, false);
            }
            out += ")";
            break;
        }
    }
}

struct Parser {
    std::string_view s;
    size_t pos = 0;
    std::string err;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    LinExprPtr fail(const std::string& m) {
        if (err.empty()) err = m + " at offset " + std::to_string(pos);
        return nullptr;
    }

    LinExprPtr expr() {
        LinExprPtr t = term();
        if (!t) return nullptr;
        std::vector<LinExprPtr> parts{t};
        while (eat('+')) {
            LinExprPtr u = term();
            if (!u) return nullptr;
            parts.push_back(u);
        }
        return parts.size() == 1 ? parts[0] : le_sum(std::move(parts));
    }

    LinExprPtr term() {
        LinExprPtr f = factor();
        if (!f) return nullptr;
        while (eat('.')) {
            skip();
            if (pos < s.size() && s[pos] == 'w') {
                ++pos;
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    f = le_prod_omega_star(f);
                } else {
                    f = le_prod_omega(f);
                }
            } else if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                f = le_prod_fin(f, number());
            } else {
                return fail("expected w, w* or integer after '.'");
            }
        }
        return f;
    }

    long number() {
        long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
            v = v * 10 + (s[pos++] - '0');
        return v;
    }

    LinExprPtr factor() {
        skip();
        if (pos >= s.size()) return fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            LinExprPtr e = expr();
            if (!e) return nullptr;
            if (!eat(')')) return fail("expected ')'");
            return e;
        }
        if (std::isdigit((unsigned char)c)) return le_fin(number());
        if (c == 'w') {
            ++pos;
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                return le_omega_star();
            }
            return le_omega();
        }
        if (c == 'z') {
            ++pos;
            return le_zeta();
        }
        if (s.substr(pos, 2) == "xi") {
            pos += 2;
            if (!eat('(')) return fail("expected '(' after xi");
            skip();
            if (pos < s.size() && s[pos] == ')')
                return fail("xi() is empty; write 0");
            std::vector<LinExprPtr> parts;
            do {
                LinExprPtr e = expr();
                if (!e) return nullptr;
                parts.push_back(e);
            } while (eat(','));
            if (!eat(')')) return fail("expected ')'");
            return le_shuffle(std::move(parts));
        }
        return fail("unexpected character");
    }
};

}  // namespace

std::string render_expr(const LinExprPtr& e) {
    std::string out;
    render(e, out, false);
    return out;
}

LinExprPtr parse_expr(std::string_view text, std::string* error) {
    Parser p{text};
    LinExprPtr e = p.expr();
    if (e) {
        p.skip();
        if (p.pos != text.size()) {
            e = nullptr;
            p.fail("trailing input");
        }
    }
    if (!e && error) *error = p.err;
    return e;
}

}  // namespace stralg
