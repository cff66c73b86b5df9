#include "stralg/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stralg {

int AlgebraSpec::vertex_id(std::string_view name) const {
    auto it = vertex_index.find(std::string(name));
    return it == vertex_index.end() ? -1 : it->second;
}

int AlgebraSpec::arrow_id(std::string_view name) const {
    auto it = arrow_index.find(std::string(name));
    return it == arrow_index.end() ? -1 : it->second;
}

void AlgebraSpec::rebuild_indices() {
    vertex_index.clear();
    arrow_index.clear();
    for (size_t i = 0; i < vertices.size(); ++i) vertex_index[vertices[i]] = (int)i;
    for (size_t i = 0; i < arrows.size(); ++i) arrow_index[arrows[i].name] = (int)i;
    max_relation_length = 0;
    for (const auto& r : relations)
        max_relation_length = std::max(max_relation_length, (int)r.size());
}

bool AlgebraSpec::letter_less(Letter a, Letter b) const {
    const std::string& na = arrows[a.arrow()].name;
    const std::string& nb = arrows[b.arrow()].name;
    if (na != nb) return na < nb;
    return a.inverse() < b.inverse();
}

namespace {

// Splits into non-empty whitespace-separated tokens.
std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace((unsigned char)c)) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

ParseResult parse_algebra(std::string_view text) {
    ParseResult res;
    AlgebraSpec spec;
    std::vector<Diagnostic>& diags = res.diagnostics;

    enum Section { NONE, VERTICES, ARROWS, RELATIONS, SIGNS };
    Section section = NONE;
    bool have_signs_section = false;
    std::vector<std::tuple<int, std::string, int, int>> sign_lines;

    std::istringstream in{std::string(text)};
    std::string raw_line;
    int lineno = 0;
    while (std::getline(in, raw_line)) {
        ++lineno;
        std::string line = strip_comment(raw_line);
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "[vertices]") { section = VERTICES; continue; }
        if (tokens[0] == "[arrows]") { section = ARROWS; continue; }
        if (tokens[0] == "[relations]") { section = RELATIONS; continue; }
        if (tokens[0] == "[signs]") { section = SIGNS; have_signs_section = true; continue; }
        if (tokens[0].front() == '[') {
            diags.push_back({lineno, "unknown section " + tokens[0]});
            continue;
        }
        switch (section) {
            case NONE:
                diags.push_back({lineno, "content before any section header"});
                break;
            case VERTICES:
                for (const auto& t : tokens) {
                    if (spec.vertex_index.count(t))
                        diags.push_back({lineno, "duplicate vertex " + t});
                    else {
                        spec.vertex_index[t] = (int)spec.vertices.size();
                        spec.vertices.push_back(t);
                    }
                }
                break;
            case ARROWS: {
                // name: src -> tgt
                if (tokens.size() != 4 || tokens[0].back() != ':' || tokens[2] != "->") {
                    diags.push_back({lineno, "expected 'name: src -> tgt'"});
                    break;
                }
                Arrow a;
                a.name = tokens[0].substr(0, tokens[0].size() - 1);
                if (a.name.empty()) {
                    diags.push_back({lineno, "empty arrow name"});
                    break;
                }
                int s = spec.vertex_id(tokens[1]);
                int t = spec.vertex_id(tokens[3]);
                if (s < 0) diags.push_back({lineno, "unknown vertex " + tokens[1]});
                if (t < 0) diags.push_back({lineno, "unknown vertex " + tokens[3]});
                if (spec.arrow_index.count(a.name)) {
                    diags.push_back({lineno, "duplicate arrow " + a.name});
                    break;
                }
                if (s < 0 || t < 0) break;
                a.source = s;
                a.target = t;
                spec.arrow_index[a.name] = (int)spec.arrows.size();
                spec.arrows.push_back(a);
                break;
            }
            case RELATIONS: {
                if (tokens.size() != 1) {
                    diags.push_back({lineno, "one dot-separated path per line"});
                    break;
                }
                auto names = split_on(tokens[0], '.');
                std::vector<int> path;  // will hold leftmost-last-applied order
                bool bad = false;
                for (const auto& n : names) {
                    int id = spec.arrow_id(n);
                    if (id < 0) {
                        diags.push_back({lineno, "unknown arrow " + n + " in relation"});
                        bad = true;
                    } else {
                        path.push_back(id);
                    }
                }
                if (bad) break;
                if (path.size() < 2) {
                    diags.push_back({lineno, "relation must be a path of length >= 2"});
                    break;
                }
                // File order is leftmost-last-applied; store position order.
                std::reverse(path.begin(), path.end());
                for (size_t k = 0; k + 1 < path.size(); ++k) {
                    if (spec.arrows[path[k]].target != spec.arrows[path[k + 1]].source) {
                        diags.push_back({lineno, "relation path is not composable at " +
                                                     spec.arrows[path[k + 1]].name + "." +
                                                     spec.arrows[path[k]].name});
                        bad = true;
                    }
                }
                if (!bad) spec.relations.push_back(std::move(path));
                break;
            }
            case SIGNS: {
                // name: sigma epsilon
                if (tokens.size() != 3 || tokens[0].back() != ':') {
                    diags.push_back({lineno, "expected 'name: sigma epsilon'"});
                    break;
                }
                std::string name = tokens[0].substr(0, tokens[0].size() - 1);
                auto parse_sign = [&](const std::string& t) {
                    if (t == "+1" || t == "+") return 1;
                    if (t == "-1" || t == "-") return -1;
                    return 0;
                };
                int sg = parse_sign(tokens[1]);
                int ep = parse_sign(tokens[2]);
                if (sg == 0 || ep == 0) {
                    diags.push_back({lineno, "signs must be +1 or -1"});
                    break;
                }
                sign_lines.emplace_back(lineno, name, sg, ep);
                break;
            }
        }
    }

    spec.rebuild_indices();

    if (have_signs_section) {
        spec.sigma.assign(spec.arrows.size(), 0);
        spec.epsilon.assign(spec.arrows.size(), 0);
        for (auto& [ln, name, sg, ep] : sign_lines) {
            int id = spec.arrow_id(name);
            if (id < 0) {
                diags.push_back({ln, "unknown arrow " + name + " in [signs]"});
                continue;
            }
            spec.sigma[id] = sg;
            spec.epsilon[id] = ep;
        }
        for (size_t i = 0; i < spec.arrows.size(); ++i) {
            if (spec.sigma[i] == 0)
                diags.push_back({0, "missing signs for arrow " + spec.arrows[i].name});
        }
        spec.signs_set = true;
    } else if (diags.empty()) {
        if (!solve_signs(spec))
            diags.push_back({0, "no sigma/epsilon assignment satisfies the sign axioms"});
    }

    if (diags.empty()) res.spec = std::move(spec);
    return res;
}

namespace {

// Composable arrow pair (b then g, i.e. the path g.b) that is not a relation.
bool composable_free(const AlgebraSpec& spec, int b, int g) {
    if (spec.arrows[b].target != spec.arrows[g].source) return false;
    for (const auto& r : spec.relations)
        if (r.size() == 2 && r[0] == b && r[1] == g) return false;
    return true;
}

}  // namespace

std::vector<Diagnostic> validate_algebra(const AlgebraSpec& spec) {
    std::vector<Diagnostic> diags;
    size_t n = spec.arrows.size();

    std::vector<std::vector<int>> by_source(spec.vertices.size());
    std::vector<std::vector<int>> by_target(spec.vertices.size());
    for (size_t i = 0; i < n; ++i) {
        by_source[spec.arrows[i].source].push_back((int)i);
        by_target[spec.arrows[i].target].push_back((int)i);
    }
    for (size_t v = 0; v < spec.vertices.size(); ++v) {
        if (by_source[v].size() > 2)
            diags.push_back({0, "fan-out exceeds 2 at vertex " + spec.vertices[v]});
        if (by_target[v].size() > 2)
            diags.push_back({0, "fan-in exceeds 2 at vertex " + spec.vertices[v]});
    }

    // Unique relation-free composition on either side of every arrow.
    for (size_t b = 0; b < n; ++b) {
        int left = 0, right = 0;
        for (size_t g = 0; g < n; ++g) {
            if (composable_free(spec, (int)b, (int)g)) ++left;
            if (composable_free(spec, (int)g, (int)b)) ++right;
        }
        if (left > 1)
            diags.push_back({0, "arrow " + spec.arrows[b].name +
                                    " has more than one relation-free left composition"});
        if (right > 1)
            diags.push_back({0, "arrow " + spec.arrows[b].name +
                                    " has more than one relation-free right composition"});
    }

    // Sign axioms, when signs are present.
    if (spec.signs_set) {
        for (size_t v = 0; v < spec.vertices.size(); ++v) {
            auto& out = by_source[v];
            if (out.size() == 2 && spec.sigma[out[0]] == spec.sigma[out[1]])
                diags.push_back({0, "arrows " + spec.arrows[out[0]].name + ", " +
                                        spec.arrows[out[1]].name +
                                        " share a source but not distinct sigma"});
            auto& in = by_target[v];
            if (in.size() == 2 && spec.epsilon[in[0]] == spec.epsilon[in[1]])
                diags.push_back({0, "arrows " + spec.arrows[in[0]].name + ", " +
                                        spec.arrows[in[1]].name +
                                        " share a target but not distinct epsilon"});
        }
        for (size_t b = 0; b < n; ++b)
            for (size_t g = 0; g < n; ++g)
                if (composable_free(spec, (int)b, (int)g) &&
                    spec.sigma[g] != -spec.epsilon[b])
                    diags.push_back({0, "sigma(" + spec.arrows[g].name + ") != -epsilon(" +
                                            spec.arrows[b].name +
                                            ") on a relation-free composition"});
    }

    // Finite-dimensionality: no arbitrarily long directed path avoids every
    // relation as a factor.  States are relation-free paths of length at most
    // window(); appending an arrow only needs that much left context, so an
    // infinite relation-free path exists iff this automaton has a cycle.
    {
        int W = spec.window();
        std::vector<std::vector<int>> states;  // arrow ids, position order
        std::map<std::vector<int>, int> index;
        std::vector<std::vector<int>> next;
        auto intern = [&](const std::vector<int>& path) {
            auto [it, fresh] = index.emplace(path, (int)states.size());
            if (fresh) {
                states.push_back(path);
                next.emplace_back();
            }
            return it->second;
        };
        auto relation_free = [&](const std::vector<int>& path) {
            for (const auto& r : spec.relations) {
                if (r.size() > path.size()) continue;
                for (size_t k = 0; k + r.size() <= path.size(); ++k)
                    if (std::equal(r.begin(), r.end(), path.begin() + k)) return false;
            }
            return true;
        };
        for (size_t a = 0; a < n; ++a) intern({(int)a});
        for (size_t s = 0; s < states.size(); ++s) {
            std::vector<int> path = states[s];
            int tip = path.back();
            for (size_t g = 0; g < n; ++g) {
                if (spec.arrows[tip].target != spec.arrows[g].source) continue;
                std::vector<int> longer = path;
                longer.push_back((int)g);
                if (!relation_free(longer)) continue;
                if ((int)longer.size() > W) longer.erase(longer.begin());
                int t = intern(longer);  // may reallocate next
                next[s].push_back(t);
            }
        }
        std::vector<int> color(states.size(), 0);
        bool cyclic = false;
        auto dfs = [&](auto&& self, int s) -> void {
            color[s] = 1;
            for (int t : next[s]) {
                if (cyclic) return;
                if (color[t] == 1) cyclic = true;
                else if (color[t] == 0) self(self, t);
            }
            color[s] = 2;
        };
        for (size_t s = 0; s < states.size() && !cyclic; ++s)
            if (color[s] == 0) dfs(dfs, (int)s);
        if (cyclic)
            diags.push_back({0, "relation-free arrow cycle (infinite-dimensional)"});
    }
    return diags;
}

bool solve_signs(AlgebraSpec& spec) {
    size_t n = spec.arrows.size();
    spec.sigma.assign(n, 0);
    spec.epsilon.assign(n, 0);
    spec.signs_set = false;

    std::vector<std::vector<int>> by_source(spec.vertices.size());
    std::vector<std::vector<int>> by_target(spec.vertices.size());
    for (size_t i = 0; i < n; ++i) {
        by_source[spec.arrows[i].source].push_back((int)i);
        by_target[spec.arrows[i].target].push_back((int)i);
    }

    // Variables in a fixed order: sigma(a_0), epsilon(a_0), sigma(a_1), ...
    // Backtracking with +1 tried before -1 gives the first solution.
    auto consistent = [&](size_t var) {
        size_t a = var / 2;
        bool is_sigma = var % 2 == 0;
        if (is_sigma) {
            for (int other : by_source[spec.arrows[a].source])
                if ((size_t)other != a && spec.sigma[other] != 0 &&
                    spec.sigma[other] == spec.sigma[a])
                    return false;
            for (size_t b = 0; b < n; ++b)
                if (spec.epsilon[b] != 0 && composable_free(spec, (int)b, (int)a) &&
                    spec.sigma[a] != -spec.epsilon[b])
                    return false;
        } else {
            for (int other : by_target[spec.arrows[a].target])
                if ((size_t)other != a && spec.epsilon[other] != 0 &&
                    spec.epsilon[other] == spec.epsilon[a])
                    return false;
            for (size_t g = 0; g < n; ++g)
                if (spec.sigma[g] != 0 && composable_free(spec, (int)a, (int)g) &&
                    spec.sigma[g] != -spec.epsilon[a])
                    return false;
        }
        return true;
    };
    auto solve = [&](auto&& self, size_t var) -> bool {
        if (var == 2 * n) return true;
        int* slot = var % 2 == 0 ? &spec.sigma[var / 2] : &spec.epsilon[var / 2];
        for (int value : {1, -1}) {
            *slot = value;
            if (consistent(var) && self(self, var + 1)) return true;
        }
        *slot = 0;
        return false;
    };
    if (!solve(solve, 0)) return false;
    spec.signs_set = true;
    return true;
}

std::string print_algebra(const AlgebraSpec& spec) {
    std::ostringstream out;
    out << "[vertices]\n";
    for (size_t i = 0; i < spec.vertices.size(); ++i)
        out << spec.vertices[i] << (i + 1 == spec.vertices.size() ? "\n" : " ");
    if (spec.vertices.empty()) out << "\n";
    out << "\n[arrows]\n";
    for (const auto& a : spec.arrows)
        out << a.name << ": " << spec.vertices[a.source] << " -> "
            << spec.vertices[a.target] << "\n";
    out << "\n[relations]\n";
    for (const auto& r : spec.relations) {
        for (size_t k = r.size(); k-- > 0;)
            out << spec.arrows[r[k]].name << (k == 0 ? "\n" : ".");
    }
    if (spec.signs_set) {
        out << "\n[signs]\n";
        for (size_t i = 0; i < spec.arrows.size(); ++i)
            out << spec.arrows[i].name << ": " << (spec.sigma[i] > 0 ? "+1" : "-1")
                << " " << (spec.epsilon[i] > 0 ? "+1" : "-1") << "\n";
    }
    return out.str();
}

}  // namespace stralg
