#include "stralg/completion.hpp"

#include <algorithm>
#include <stdexcept>

namespace stralg {

std::string to_string(GapLocation g) {
    switch (g) {
        case GapLocation::PLUS: return "PLUS";
        case GapLocation::MINUS: return "MINUS";
        case GapLocation::ZERO: return "ZERO";
    }
    return "?";
}

Str expand_prefix(const AlmostPeriodic& ap, size_t periods) {
    Str x = ap.stem;
    for (size_t m = 0; m < periods; ++m)
        x.syl.insert(x.syl.end(), ap.period.begin(), ap.period.end());
    return x;
}

GapLocation classify_limit_location(BContext& ctx, const AlmostPeriodic& ap) {
    if (!ctx.minimal())
        throw std::invalid_argument(
            "classify_limit_location: class not minimal");
    if (ap.period.empty())
        throw std::invalid_argument("classify_limit_location: empty period");
    auto root = primitive_root(ap.period_str());
    if (!root)
        throw std::invalid_argument(
            "classify_limit_location: period is not a cyclic string");
    std::string why;
    if (!ctx.bs.cyc_membership(root->first, ctx.cls, &why))
        throw std::invalid_argument(
            "classify_limit_location: tail band is not in this class" +
            (why.empty() ? "" : " (" + why + ")"));
    // A long finite prefix must lie in the hammock and carry the class's St
    // membership; otherwise ap does not belong to this hammock's N-St set.
    Str probe = expand_prefix(ap, 2);
    if (!ctx.in_hammock(probe))
        throw std::invalid_argument(
            "classify_limit_location: prefix leaves the hammock");
    auto r = st_ost_membership(ctx, probe);
    if (!(r.st_plus || r.st_minus))
        throw std::invalid_argument(
            "classify_limit_location: prefix lacks the class's St "
            "membership");
    if (band_in_ba(ctx.bs, ctx.cls, root->first, false))
        return GapLocation::PLUS;
    if (band_in_ba(ctx.bs, ctx.cls, root->first, true))
        return GapLocation::MINUS;
    return GapLocation::ZERO;
}

namespace {

bool is_omega(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::ProdOmega &&
           e->args[0]->kind == LinExpr::Kind::One;
}

bool is_omega_star(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::ProdOmegaStar &&
           e->args[0]->kind == LinExpr::Kind::One;
}

bool is_zeta_expr(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::Sum && e->args.size() == 2 &&
           is_omega_star(e->args[0]) && is_omega(e->args[1]);
}

// Matches w + w* (the n = 1 chain).
bool is_beam_pair(const LinExprPtr& e) {
    return e->kind == LinExpr::Kind::Sum && e->args.size() == 2 &&
           is_omega(e->args[0]) && is_omega_star(e->args[1]);
}

// Matches w + xi(z) + w*.
bool is_nondomestic_beam(const LinExprPtr& e) {
    if (e->kind != LinExpr::Kind::Sum || e->args.size() != 3) return false;
    if (!is_omega(e->args[0]) || !is_omega_star(e->args[2])) return false;
    const LinExprPtr& mid = e->args[1];
    if (mid->kind != LinExpr::Kind::Shuffle) return false;
    for (const auto& a : mid->args)
        if (!is_zeta_expr(a)) return false;
    return true;
}

}  // namespace

std::string CompletionReport::describe() const {
    switch (family) {
        case Family::DomesticBeamChain:
            return "C = " + render_expr(completed) + " (" +
                   std::to_string(pointsAdded) + " points added)";
        case Family::NondomesticBeam:
            return symbolic;
        case Family::Unsupported:
            return "UNSUPPORTED";
    }
    return "?";
}

CompletionReport complete_catalog(const LinExprPtr& e) {
    CompletionReport rep;
    LinExprPtr n = normalize_expr(e);

    long chain = 0;
    if (is_beam_pair(n)) chain = 1;
    if (n->kind == LinExpr::Kind::ProdFin && is_beam_pair(n->args[0]))
        chain = n->n;
    if (chain > 0) {
        rep.family = CompletionReport::Family::DomesticBeamChain;
        rep.pointsAdded = chain;
        LinExprPtr beam =
            le_sum({le_omega(), le_one(), le_omega_star()});
        rep.completed = chain == 1 ? beam : le_prod_fin(beam, chain);
        return rep;
    }

    if (is_nondomestic_beam(n)) {
        rep.family = CompletionReport::Family::NondomesticBeam;
        rep.plusEnd = rep.minusEnd = rep.zeroPresent = true;
        // The completion leaves the finite-description class: a real-indexed
        // sum with 1+z+1 at the rational positions and 1 at the irrational
        // ones, sandwiched between the completed end rays.
        rep.symbolic =
            "C = w + 1 + sum_{r in lambda} T_r + 1 + w*, "
            "T_r = 1+z+1 for rational r, 1 for irrational r; "
            "gaps: PLUS at w-ray tops, MINUS at w*-ray bottoms, "
            "ZERO at irrational positions";
        return rep;
    }

    rep.family = CompletionReport::Family::Unsupported;
    return rep;
}

GapCensus gap_census(BContext& ctx) {
    if (!ctx.minimal())
        throw std::invalid_argument("gap_census: class not minimal");
    GapCensus gc;
    gc.domestic = ctx.bs.qba.classes[ctx.cls].domestic;
    if (!gc.domestic) {
        // Non-domestic minimal class: the condensation completes to the
        // real-indexed catalogue entry; all three gap locations occur.
        gc.plus = gc.minus = gc.zero = true;
        return gc;
    }
    // Domestic: the condensation is a finite chain of beams; each infinite
    // beam contributes exactly one gap, reached as the <1,l_B> limit from
    // below and as the <1,lbar_B> limit from above of the same left
    // N-string.
    BeamReport br = beam_structure(ctx);
    for (const auto& [ylo, yhi] : br.beams) {
        if (!ost_member(ctx, ylo, 1)) continue;
        auto up = ost_limit(ctx, ylo, true);
        if (!up) continue;  // the ascending walk reaches yhi: finite beam
        auto down = ost_limit(ctx, yhi, false);
        if (!down)
            throw std::logic_error(
                "gap_census: one-sided limit in a domestic beam");
        // Both limits must denote the same left N-string.
        size_t len = std::max(expand_prefix(*up, 3).size(),
                              expand_prefix(*down, 3).size());
        size_t per = std::max(up->period.size(), down->period.size());
        Str a = expand_prefix(*up, 3 + (len / per)).left_substring(len),
            b = expand_prefix(*down, 3 + (len / per)).left_substring(len);
        if (!(a == b))
            throw std::logic_error(
                "gap_census: the two one-sided limits disagree");
        ++gc.dualLimitGaps;
    }
    gc.plus = gc.minus = gc.dualLimitGaps > 0;
    gc.zero = false;
    return gc;
}

ConvergeResult converge(const Automaton& aut, const std::vector<Str>& xs) {
    if (xs.empty())
        throw std::invalid_argument("converge: empty sequence");
    for (size_t k = 0; k + 1 < xs.size(); ++k) {
        if (!(xs[k].size() < xs[k + 1].size() &&
              xs[k + 1].has_left_substring(xs[k])))
            throw std::invalid_argument(
                "converge: sequence is not strictly increasing under "
                "sqsubset_l");
    }
    ConvergeResult res;
    res.prefix = xs.back();

    const std::vector<Letter>& W = xs.back().syl;
    for (size_t s = 0; s < xs.size(); ++s) {
        for (size_t t = s + 1; t < xs.size(); ++t) {
            if (aut.state_of(xs[s]) != aut.state_of(xs[t])) continue;
            size_t q0 = xs[s].size(), p = xs[t].size() - q0;
            // The whole known tail must repeat with period p, and at least
            // two further full periods must be witnessed.
            if (W.size() < q0 + 3 * p) continue;
            bool ok = true;
            for (size_t q = q0; ok && q + p < W.size(); ++q)
                ok = W[q] == W[q + p];
            if (!ok) continue;
            // Primitive period.
            size_t d = p;
            for (size_t cand = 1; cand < p; ++cand) {
                if (p % cand) continue;
                bool per = true;
                for (size_t q = q0; per && q + cand < q0 + p; ++q)
                    per = W[q] == W[q + cand];
                if (per) {
                    d = cand;
                    break;
                }
            }
            // Minimal stem: roll the periodic start back as far as the
            // known word allows.
            size_t m0 = q0;
            while (m0 > xs.front().size() && W[m0 - 1] == W[m0 - 1 + d]) --m0;
            AlmostPeriodic ap;
            ap.base = xs.front();
            ap.stem = xs.back().left_substring(m0);
            ap.period.assign(W.begin() + (long)m0, W.begin() + (long)(m0 + d));
            res.periodic = true;
            res.ap = ap;
            return res;
        }
    }
    return res;  // NON_PERIODIC with the stabilized prefix
}

}  // namespace stralg
