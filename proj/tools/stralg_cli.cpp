// stralg: command-line front end for the string-algebra hammock toolkit.
//
// Subcommands: check, bands, hammock, condense, ordertype, limits,
// completion.  Results go to stdout, diagnostics to stderr.  Exit codes:
//   0  success
//   1  input error (bad file, bad literal, unknown class, precondition)
//   2  INDETERMINATE (an enumeration or walk guard tripped)
//   3  internal invariant failure
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stralg/algebra.hpp"
#include "stralg/bands.hpp"
#include "stralg/completion.hpp"
#include "stralg/condensation.hpp"
#include "stralg/hammock.hpp"
#include "stralg/linexpr.hpp"
#include "stralg/ordertype.hpp"
#include "stralg/str.hpp"

using json = nlohmann::ordered_json;
using namespace stralg;

namespace {

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

AlgebraSpec load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(1, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    ParseResult pr = parse_algebra(ss.str());
    for (const auto& d : pr.diagnostics) {
        std::cerr << path;
        if (d.line > 0) std::cerr << ":" << d.line;
        std::cerr << ": " << d.message << "\n";
    }
    if (!pr.ok()) throw CliError(1, "algebra file rejected");
    if (!pr.spec->signs_set && !solve_signs(*pr.spec))
        throw CliError(1, "no consistent sign maps exist");
    return *pr.spec;
}

Str parse_literal(const AlgebraSpec& spec, const std::string& text) {
    std::string err;
    auto s = parse_str(spec, text, &err);
    if (!s) throw CliError(1, "bad string literal '" + text + "': " + err);
    return *s;
}

int parse_side(const std::string& text) {
    if (text == "+1" || text == "1" || text == "+") return 1;
    if (text == "-1" || text == "-") return -1;
    throw CliError(1, "side must be +1 or -1, got '" + text + "'");
}

// Class names are relative to the hammock's census (the classes reachable
// from (base, side) relabeled B1..Bk in lex order of least prime).
int resolve_class(BandSystem& bs, const HammockKey& key,
                  const std::string& name) {
    BandSystem::SubPoset sub = bs.census(key.base, key.side);
    for (size_t i = 0; i < sub.names.size(); ++i)
        if (sub.names[i] == name) return sub.classes[i];
    throw CliError(1, "unknown class '" + name + "' for this hammock (census: B1..B" +
                          std::to_string(sub.classes.size()) + ")");
}

std::string format_limit(const std::optional<AlmostPeriodic>& ap) {
    return ap ? ap->to_string() : "(reaches an extreme: no limit)";
}

// ---- subcommand payloads -------------------------------------------------

int cmd_check(const std::string& path, const std::string& fmt) {
    AlgebraSpec spec = load_algebra(path);
    auto diags = validate_algebra(spec);
    for (const auto& d : diags) std::cerr << path << ": " << d.message << "\n";
    if (!diags.empty()) return 1;
    if (fmt == "json") {
        json out{{"ok", true},
                 {"vertices", spec.vertices.size()},
                 {"arrows", spec.arrows.size()},
                 {"relations", spec.relations.size()}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "OK: " << spec.vertices.size() << " vertices, "
                  << spec.arrows.size() << " arrows, " << spec.relations.size()
                  << " relations; sign maps consistent\n";
    }
    return 0;
}

int cmd_bands(const std::string& path, const std::string& str,
              const std::string& side, const std::string& fmt) {
    AlgebraSpec spec = load_algebra(path);
    BandSystem bs(spec);
    if (!str.empty()) {
        // Census view: the sub-poset reachable from (string, side).
        Str x0 = parse_literal(spec, str);
        BandSystem::SubPoset sub = bs.census(x0, parse_side(side));
        if (fmt == "dot") {
            std::cout << bs.dot_census(sub);
            return 0;
        }
        if (fmt == "json") {
            json out;
            out["classes"] = json::array();
            for (size_t i = 0; i < sub.classes.size(); ++i) {
                const GmbClass& c = bs.qba.classes[sub.classes[i]];
                json jc{{"name", sub.names[i]}, {"domestic", c.domestic}};
                jc["primes"] = json::array();
                for (int p : c.prime_ids)
                    jc["primes"].push_back(bs.primes[p].word.to_string());
                out["classes"].push_back(jc);
            }
            out["order"] = json::array();
            for (auto& [a, b] : sub.order)
                out["order"].push_back({sub.names[a], sub.names[b]});
            out["minimal"] = json::array();
            for (int m : sub.minimal) out["minimal"].push_back(sub.names[m]);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        std::cout << "classes reachable from (" << x0.to_string() << ", "
                  << (side == "-1" || side == "-" ? "-1" : "+1") << "): "
                  << sub.classes.size() << "\n";
        for (size_t i = 0; i < sub.classes.size(); ++i) {
            const GmbClass& c = bs.qba.classes[sub.classes[i]];
            std::cout << "  " << sub.names[i] << ": "
                      << (c.domestic ? "domestic" : "non-domestic")
                      << ", primes";
            for (int p : c.prime_ids)
                std::cout << " " << bs.primes[p].word.to_string();
            std::cout << "\n";
        }
        std::cout << "order:\n";
        for (auto& [a, b] : sub.order)
            std::cout << "  " << sub.names[a] << " < " << sub.names[b] << "\n";
        std::cout << "minimal:";
        for (int m : sub.minimal) std::cout << " " << sub.names[m];
        std::cout << "\n";
        return 0;
    }
    if (fmt == "dot") {
        std::cout << bs.dot_qba();
        return 0;
    }
    if (fmt == "json") {
        json out;
        out["primes"] = json::array();
        for (const auto& p : bs.primes)
            out["primes"].push_back(p.word.to_string());
        out["classes"] = json::array();
        for (const auto& c : bs.qba.classes) {
            json jc{{"name", c.name}, {"domestic", c.domestic}};
            jc["primes"] = json::array();
            for (int p : c.prime_ids)
                jc["primes"].push_back(bs.primes[p].word.to_string());
            out["classes"].push_back(jc);
        }
        out["order"] = json::array();
        for (auto& [a, b] : bs.qba.order)
            out["order"].push_back(
                {bs.qba.classes[a].name, bs.qba.classes[b].name});
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "prime bands (" << bs.primes.size() << "):\n";
    for (size_t i = 0; i < bs.primes.size(); ++i)
        std::cout << "  " << bs.primes[i].word.to_string() << "  [class "
                  << bs.qba.classes[bs.class_of_prime((int)i)].name << "]\n";
    std::cout << "classes (" << bs.class_count() << "):\n";
    for (const auto& c : bs.qba.classes) {
        std::cout << "  " << c.name << ": "
                  << (c.domestic ? "domestic" : "non-domestic") << ", primes";
        for (int p : c.prime_ids)
            std::cout << " " << bs.primes[p].word.to_string();
        std::cout << "\n";
    }
    std::cout << "order:\n";
    for (auto& [a, b] : bs.qba.order)
        std::cout << "  " << bs.qba.classes[a].name << " < "
                  << bs.qba.classes[b].name << "\n";
    return 0;
}

int cmd_hammock(const std::string& path, const std::string& str,
                const std::string& side, size_t depth, const std::string& of,
                const std::string& fmt) {
    AlgebraSpec spec = load_algebra(path);
    HammockKey key{parse_literal(spec, str), parse_side(side)};
    if (!of.empty()) {
        Str x = parse_literal(spec, of);
        auto s = succ_l(key, x), p = pred_l(key, x);
        if (fmt == "json") {
            json out{{"element", x.to_string()},
                     {"succ", s ? json(s->to_string()) : json(nullptr)},
                     {"pred", p ? json(p->to_string()) : json(nullptr)}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "succ: " << (s ? s->to_string() : "(max)") << "\n"
                      << "pred: " << (p ? p->to_string() : "(min)") << "\n";
        }
        return 0;
    }
    auto elems = enumerate_hammock(key, depth);
    if (fmt == "json") {
        json out = json::array();
        for (const auto& e : elems) out.push_back(e.to_string());
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& e : elems) std::cout << e.to_string() << "\n";
    }
    return 0;
}

int cmd_condense(const std::string& path, const std::string& cls_name,
                 const std::string& str, const std::string& side,
                 const std::string& of, const std::string& fmt) {
    AlgebraSpec spec = load_algebra(path);
    BandSystem bs(spec);
    HammockKey key{parse_literal(spec, str), parse_side(side)};
    BContext ctx(bs, key, resolve_class(bs, key, cls_name));
    Str x = of.empty() ? key.base : parse_literal(spec, of);
    if (!ctx.in_hammock(x))
        throw CliError(1, "'" + x.to_string() + "' is not in the hammock");
    CondenseResult cr = condense(ctx, x, ctx.minimal());
    BeamReport br = beam_structure(ctx);
    if (fmt == "json") {
        json out{{"class", cls_name},
                 {"element", x.to_string()},
                 {"c_B", cr.cB.to_string()},
                 {"phi", cr.phi},
                 {"C_B", cr.CB ? json(cr.CB->to_string()) : json(nullptr)},
                 {"k_B", br.kB}};
        out["boundaries"] = json::array();
        for (const auto& b : br.boundaries)
            out["boundaries"].push_back(b.to_string());
        out["beams"] = json::array();
        for (auto& [lo, hi] : br.beams)
            out["beams"].push_back({lo.to_string(), hi.to_string()});
        out["centers"] = json::array();
        for (const auto& cc : br.centerClasses)
            out["centers"].push_back(
                {{"alpha", spec.letter_name(cc.alpha)},
                 {"beta", spec.letter_name(cc.beta)},
                 {"representative", cc.representative.to_string()}});
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "c_B(" << x.to_string() << ") = " << cr.cB.to_string()
              << ", phi = " << (cr.phi > 0 ? "+1" : cr.phi < 0 ? "-1" : "0")
              << "\n";
    if (cr.CB) std::cout << "C_B = " << cr.CB->to_string() << "\n";
    std::cout << "boundaries (" << br.boundaries.size() << "):";
    for (const auto& b : br.boundaries) std::cout << " " << b.to_string();
    std::cout << "\nbeams (" << br.beams.size() << "):\n";
    for (auto& [lo, hi] : br.beams)
        std::cout << "  [" << lo.to_string() << ", " << hi.to_string() << "]\n";
    std::cout << "k_B = " << br.kB << "\n";
    for (const auto& cc : br.centerClasses)
        std::cout << "center class (" << spec.letter_name(cc.alpha) << ","
                  << spec.letter_name(cc.beta)
                  << "): " << cc.representative.to_string() << "\n";
    return 0;
}

int cmd_ordertype(const std::string& path, const std::string& str,
                  const std::string& side, const std::string& fmt) {
    AlgebraSpec spec = load_algebra(path);
    BandSystem bs(spec);
    HammockKey key{parse_literal(spec, str), parse_side(side)};
    LinExprPtr e = hammock_order_type(bs, key);
    if (fmt == "json") {
        json out{{"base", key.base.to_string()},
                 {"side", key.side},
                 {"ordertype", render_expr(e)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << render_expr(e) << "\n";
    }
    return 0;
}

int cmd_limits(const std::string& path, const std::string& cls_name,
               const std::string& str, const std::string& side,
               const std::string& of, const std::string& fmt) {
    AlgebraSpec spec = load_algebra(path);
    BandSystem bs(spec);
    HammockKey key{parse_literal(spec, str), parse_side(side)};
    Str x = of.empty() ? key.base : parse_literal(spec, of);
    if (cls_name.empty()) {
        // Plain <1,l> / <1,lbar> over the hammock operators.
        auto up = plain_limit(key, x, true);
        auto down = plain_limit(key, x, false);
        if (fmt == "json") {
            json out{{"element", x.to_string()}};
            out["limit_up"] = up ? json(up->to_string()) : json(nullptr);
            out["limit_down"] = down ? json(down->to_string()) : json(nullptr);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "<1,l>(" << x.to_string()
                      << ") = " << format_limit(up) << "\n"
                      << "<1,lbar>(" << x.to_string()
                      << ") = " << format_limit(down) << "\n";
        }
        return 0;
    }
    BContext ctx(bs, key, resolve_class(bs, key, cls_name));
    if (!ctx.in_hammock(x))
        throw CliError(1, "'" + x.to_string() + "' is not in the hammock");
    auto up = ost_limit(ctx, x, true);
    auto down = ost_limit(ctx, x, false);
    auto classify = [&](const std::optional<AlmostPeriodic>& ap)
        -> std::optional<std::string> {
        if (!ap) return std::nullopt;
        return to_string(classify_limit_location(ctx, *ap));
    };
    auto gu = classify(up), gd = classify(down);
    if (fmt == "json") {
        json out{{"class", cls_name}, {"element", x.to_string()}};
        out["limit_up"] = up ? json(up->to_string()) : json(nullptr);
        out["limit_up_gap"] = gu ? json(*gu) : json(nullptr);
        out["limit_down"] = down ? json(down->to_string()) : json(nullptr);
        out["limit_down_gap"] = gd ? json(*gd) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "<1,l_B>(" << x.to_string()
                  << ") = " << format_limit(up);
        if (gu) std::cout << "  [" << *gu << "]";
        std::cout << "\n<1,lbar_B>(" << x.to_string()
                  << ") = " << format_limit(down);
        if (gd) std::cout << "  [" << *gd << "]";
        std::cout << "\n";
    }
    return 0;
}

int cmd_completion(const std::string& path, const std::string& cls_name,
                   const std::string& str, const std::string& side,
                   const std::string& expr, const std::string& fmt) {
    if (!expr.empty()) {
        std::string err;
        LinExprPtr e = parse_expr(expr, &err);
        if (!e) throw CliError(1, "bad expression '" + expr + "': " + err);
        CompletionReport rep = complete_catalog(e);
        if (fmt == "json") {
            json out{{"input", render_expr(normalize_expr(e))},
                     {"result", rep.describe()}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << rep.describe() << "\n";
        }
        return 0;
    }
    AlgebraSpec spec = load_algebra(path);
    BandSystem bs(spec);
    HammockKey key{parse_literal(spec, str), parse_side(side)};
    BContext ctx(bs, key, resolve_class(bs, key, cls_name));
    GapCensus gc = gap_census(ctx);
    if (fmt == "json") {
        json out{{"class", cls_name},
                 {"domestic", gc.domestic},
                 {"dual_limit_gaps", gc.dualLimitGaps},
                 {"plus", gc.plus},
                 {"minus", gc.minus},
                 {"zero", gc.zero}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "class " << cls_name << ": "
                  << (gc.domestic ? "domestic" : "non-domestic") << "\n";
        if (gc.domestic)
            std::cout << "dual-limit gaps: " << gc.dualLimitGaps << "\n";
        std::cout << "tags:" << (gc.plus ? " PLUS" : "")
                  << (gc.minus ? " MINUS" : "") << (gc.zero ? " ZERO" : "")
                  << (!gc.plus && !gc.minus && !gc.zero ? " (none)" : "")
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hammock order types of string algebras"};
    app.require_subcommand(1);

    std::string path, str, side = "+1", cls, of, expr, fmt = "text";
    size_t depth = 12;

    auto add_common = [&](CLI::App* sub, bool need_string, bool need_class) {
        sub->add_option("algebra", path, "algebra file")->required();
        auto* f = sub->add_option("--format", fmt, "text|json|dot");
        f->check(CLI::IsMember({"text", "json", "dot"}));
        if (need_string) {
            sub->add_option("--string", str, "base string literal")
                ->required();
            sub->add_option("--side", side, "+1 or -1");
        }
        if (need_class)
            sub->add_option("--class", cls, "band class name (B1, ...)")
                ->required();
        return sub;
    };

    auto* c_check = add_common(app.add_subcommand("check",
        "validate an algebra file"), false, false);
    auto* c_bands = add_common(app.add_subcommand("bands",
        "prime bands and the class poset"), false, false);
    c_bands->add_option("--string", str,
        "restrict to classes reachable from this base (census view)");
    c_bands->add_option("--side", side, "+1 or -1");
    auto* c_hammock = add_common(app.add_subcommand("hammock",
        "enumerate a one-sided hammock"), true, false);
    c_hammock->add_option("--depth", depth, "length cap for enumeration");
    c_hammock->add_option("--of", of, "query succ/pred of this element");
    auto* c_condense = add_common(app.add_subcommand("condense",
        "condensation and beam report through a class"), true, true);
    c_condense->add_option("--of", of, "element to condense (default: base)");
    auto* c_ordertype = add_common(app.add_subcommand("ordertype",
        "normalized order type of the hammock"), true, false);
    auto* c_limits = add_common(app.add_subcommand("limits",
        "one-sided OST limits and gap classification"), true, false);
    c_limits->add_option("--class", cls,
        "band class name; omit for the plain hammock operators");
    c_limits->add_option("--of", of, "element to take limits of");
    auto* c_completion = app.add_subcommand("completion",
        "gap census of a condensation, or completion of an expression");
    c_completion->add_option("algebra", path, "algebra file");
    c_completion->add_option("--format", fmt, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    c_completion->add_option("--string", str, "base string literal");
    c_completion->add_option("--side", side, "+1 or -1");
    c_completion->add_option("--class", cls, "band class name");
    c_completion->add_option("--expr", expr, "expression to complete");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) return cmd_check(path, fmt);
        if (c_bands->parsed()) return cmd_bands(path, str, side, fmt);
        if (c_hammock->parsed())
            return cmd_hammock(path, str, side, depth, of, fmt);
        if (c_condense->parsed())
            return cmd_condense(path, cls, str, side, of, fmt);
        if (c_ordertype->parsed()) return cmd_ordertype(path, str, side, fmt);
        if (c_limits->parsed())
            return cmd_limits(path, cls, str, side, of, fmt);
        if (c_completion->parsed()) {
            if (expr.empty() && (path.empty() || cls.empty() || str.empty()))
                throw CliError(
                    1, "completion needs --expr or algebra + --class + "
                       "--string");
            return cmd_completion(path, cls, str, side, expr, fmt);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "INDETERMINATE: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
