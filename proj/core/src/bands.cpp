#include "stralg/bands.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "matcher.hpp"

namespace stralg {

namespace {

std::vector<int> codes_of(const Str& x) {
    std::vector<int> out;
    out.reserve(x.size());
    for (Letter l : x.syl) out.push_back(l.code);
    return out;
}

// Position-order syllables of x^k.
std::vector<Letter> power_syl(const Str& x, int k) {
    std::vector<Letter> out;
    out.reserve(x.size() * k);
    for (int i = 0; i < k; ++i) out.insert(out.end(), x.syl.begin(), x.syl.end());
    return out;
}

// Lexicographic order on syllable sequences under the fixed letter order.
bool syl_less(const AlgebraSpec& spec, const std::vector<Letter>& a,
              const std::vector<Letter>& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        return spec.letter_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

bool word_primitive(const std::vector<Letter>& w) {
    size_t n = w.size();
    for (size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool period = true;
        for (size_t i = 0; period && i + d < n; ++i) period = w[i] == w[i + d];
        if (period) return false;
    }
    return true;
}

// How many copies of a length-n cycle cover every window of length W+1 of the
// periodic repetition, plus one spare copy.
int power_exponent(int window, size_t n) {
    return (int)((window + n) / n) + 1;
}

int jidx(int j) { return j > 0 ? 1 : 0; }

}  // namespace

bool QbaPoset::less(int a, int b) const {
    for (auto& [x, y] : order)
        if (x == a && y == b) return true;
    return false;
}

std::optional<std::pair<Str, int>> primitive_root(const Str& x) {
    if (x.is_zero() || x.source() != x.target()) return std::nullopt;
    // The square must be a valid string for x to be cyclic.
    std::vector<Letter> sq = power_syl(x, 2);
    if (!mk_string(*x.spec, sq)) return std::nullopt;
    size_t n = x.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool period = true;
        for (size_t i = 0; period && i + d < n; ++i) period = x.syl[i] == x.syl[i + d];
        if (period) return std::make_pair(x.left_substring(d), (int)(n / d));
    }
    return std::nullopt;  // unreachable: d = n always works
}

BandSystem::BandSystem(const AlgebraSpec& s) : spec(s), aut(s) {
    enumerate_primes();
    build_qba();
    class_data_.resize(qba.classes.size());
}

bool BandSystem::is_band_rotation(const Str& w) const {
    if (w.is_zero() || w.source() != w.target()) return false;
    if (w.delta() != 0) return false;
    if (!word_primitive(w.syl)) return false;
    int k = power_exponent(spec.window(), w.size());
    return mk_string(spec, power_syl(w, k)).has_value();
}

std::vector<Str> BandSystem::rotations(const Str& band) const {
    size_t n = band.size();
    std::vector<Str> out;
    out.reserve(n);
    for (size_t r = 0; r < n; ++r) {
        std::vector<Letter> w(n);
        for (size_t i = 0; i < n; ++i) w[i] = band.syl[(r + i) % n];
        out.push_back(Str::raw(spec, std::move(w)));
    }
    return out;
}

Str BandSystem::canonical_rotation(const Str& band) const {
    std::vector<Str> rots = rotations(band);
    const Str* best = &rots[0];
    for (const Str& r : rots)
        if (syl_less(spec, r.syl, best->syl)) best = &r;
    return *best;
}

void BandSystem::enumerate_primes() {
    // Ghost graph: full-window states, closed under transitions.  Every prime
    // band traces a simple cycle here (a repeated state would split the band
    // into two shorter cyclic factors).
    const auto& full = aut.full_states;
    int G = (int)full.size();
    std::vector<int> gidx(aut.state_count(), -1);
    for (int i = 0; i < G; ++i) gidx[full[i]] = i;

    std::set<std::vector<Letter>> seen;
    std::vector<std::vector<Letter>> candidates;

    // Simple cycles whose least ghost index is the DFS root.
    std::vector<char> onpath(G, 0);
    std::vector<Letter> path;
    for (int root = 0; root < G; ++root) {
        auto dfs = [&](auto&& self, int gi) -> void {
            onpath[gi] = 1;
            for (auto& [l, tid] : aut.states[full[gi]].out) {
                int ti = gidx[tid];
                assert(ti >= 0);
                if (ti < root) continue;
                path.push_back(l);
                if (ti == root) {
                    Str w = Str::raw(spec, path);
                    if (w.delta() == 0) {
                        Str canon = canonical_rotation(w);
                        if (seen.insert(canon.syl).second)
                            candidates.push_back(canon.syl);
                    }
                } else if (!onpath[ti]) {
                    self(self, ti);
                }
                path.pop_back();
            }
            onpath[gi] = 0;
        };
        dfs(dfs, root);
    }

    // Primality: shortest first; a candidate is composite when some rotation
    // concatenates >= 2 rotations of already accepted (strictly shorter)
    // primes.
    std::sort(candidates.begin(), candidates.end(),
              [&](const std::vector<Letter>& a, const std::vector<Letter>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return syl_less(spec, a, b);
              });
    std::set<std::vector<Letter>> accepted_rot;
    std::set<size_t> accepted_len;
    for (const auto& cand : candidates) {
        size_t n = cand.size();
        bool composite = false;
        for (const Str& rot : rotations(Str::raw(spec, cand))) {
            std::vector<char> dp(n + 1, 0);
            dp[0] = 1;
            for (size_t i = 0; i < n; ++i) {
                if (!dp[i]) continue;
                for (size_t len : accepted_len) {
                    if (i + len > n) continue;
                    std::vector<Letter> piece(rot.syl.begin() + i,
                                              rot.syl.begin() + i + len);
                    if (accepted_rot.count(piece)) dp[i + len] = 1;
                }
            }
            if (dp[n]) {
                composite = true;
                break;
            }
        }
        if (composite) continue;
        Str band = Str::raw(spec, cand);
        primes.push_back({band});
        for (const Str& rot : rotations(band)) accepted_rot.insert(rot.syl);
        accepted_len.insert(n);
    }
}

bool BandSystem::band_reaches(const Str& b1, const Str& b2) const {
    std::vector<Str> rot2 = rotations(canonical_rotation(b2));
    for (const Str& r1 : rotations(canonical_rotation(b1))) {
        // States reachable (any word, >= 0 letters) from the state after b1.
        std::vector<char> vis(aut.state_count(), 0);
        std::queue<int> q;
        int s0 = aut.state_of(r1);
        vis[s0] = 1;
        q.push(s0);
        while (!q.empty()) {
            int s = q.front();
            q.pop();
            for (auto& [l, t] : aut.states[s].out)
                if (!vis[t]) {
                    vis[t] = 1;
                    q.push(t);
                }
        }
        for (int s = 0; s < aut.state_count(); ++s) {
            if (!vis[s]) continue;
            for (const Str& r2 : rot2)
                if (aut.read(s, r2.syl) >= 0) return true;
        }
    }
    return false;
}

void BandSystem::build_qba() {
    int n = (int)primes.size();
    prime_reach_.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            prime_reach_[i][j] = band_reaches(primes[i].word, primes[j].word);

    // The preorder is transitive in theory; close it anyway so the poset is
    // well defined even on inputs where numerics of the search order differ.
    auto closed = prime_reach_;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (closed[i][k] && closed[k][j]) closed[i][j] = 1;

    class_of_prime_.assign(n, -1);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        if (class_of_prime_[i] >= 0) continue;
        std::vector<int> g{i};
        class_of_prime_[i] = (int)groups.size();
        for (int j = i + 1; j < n; ++j)
            if (class_of_prime_[j] < 0 && closed[i][j] && closed[j][i]) {
                class_of_prime_[j] = (int)groups.size();
                g.push_back(j);
            }
        groups.push_back(std::move(g));
    }

    // Deterministic class ids: sort by the least prime word of the class.
    std::vector<int> perm(groups.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = (int)i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        return syl_less(spec, primes[groups[a][0]].word.syl,
                        primes[groups[b][0]].word.syl);
    });
    std::vector<int> rank(groups.size());
    for (size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = (int)i;

    qba.classes.resize(groups.size());
    for (size_t g = 0; g < groups.size(); ++g) {
        GmbClass& cls = qba.classes[rank[g]];
        cls.id = rank[g];
        cls.name = "B" + std::to_string(rank[g] + 1);
        cls.prime_ids = groups[g];
        cls.domestic = groups[g].size() == 1;
    }
    for (int p = 0; p < n; ++p) class_of_prime_[p] = rank[class_of_prime_[p]];

    for (size_t a = 0; a < qba.classes.size(); ++a)
        for (size_t b = 0; b < qba.classes.size(); ++b) {
            if (a == b) continue;
            int pa = qba.classes[a].prime_ids[0];
            int pb = qba.classes[b].prime_ids[0];
            if (closed[pa][pb]) qba.order.emplace_back((int)a, (int)b);
        }
}

int BandSystem::class_by_name(std::string_view name) const {
    for (const auto& c : qba.classes)
        if (c.name == name) return c.id;
    return -1;
}

bool BandSystem::cyc_membership(const Str& c, int cls, std::string* error) const {
    if (c.is_zero() || c.source() != c.target()) {
        if (error) *error = "not a cyclic string";
        return false;
    }
    size_t max_prime = 0;
    for (int p : qba.classes[cls].prime_ids)
        max_prime = std::max(max_prime, primes[p].word.size());
    int k_factor = (int)((max_prime + c.size() - 1) / c.size()) + 1;
    int k = std::max(k_factor, power_exponent(spec.window(), c.size()));
    if (!mk_string(spec, power_syl(c, k))) {
        if (error) *error = "powers of the cycle are not valid strings";
        return false;
    }
    std::vector<Letter> hay = power_syl(c, k_factor);
    for (int p : qba.classes[cls].prime_ids)
        for (const Str& rot : rotations(primes[p].word))
            if (std::search(hay.begin(), hay.end(), rot.syl.begin(),
                            rot.syl.end()) != hay.end())
                return true;
    return false;
}

const BandSystem::ClassData& BandSystem::ensure_class(int cls) {
    ClassData& cd = class_data_[cls];
    if (cd.ready) return cd;

    std::vector<std::vector<int>> patterns;
    for (int p : qba.classes[cls].prime_ids)
        for (const Str& rot : rotations(primes[p].word))
            patterns.push_back(codes_of(rot));
    detail::AhoCorasick ac(patterns);

    const auto& full = aut.full_states;
    int S = aut.state_count();
    int G = (int)full.size();
    int A = ac.size();
    auto node = [&](int s, int gi, int a, int occ) {
        return ((size_t)s * G + gi) * A * 2 + (size_t)a * 2 + occ;
    };
    size_t N = (size_t)S * G * A * 2;

    // Reverse adjacency of the synchronous product: the real side and a ghost
    // copy read the same letter while Aho-Corasick watches for a prime
    // rotation.  CSR layout.
    std::vector<int> indeg(N + 1, 0);
    std::vector<int> gidx(S, -1);
    for (int i = 0; i < G; ++i) gidx[full[i]] = i;
    auto targets_fast = [&](size_t id, size_t out[2]) {
        int occ = (int)(id % 2);
        int a = (int)((id / 2) % A);
        int gi = (int)((id / 2 / A) % G);
        int s = (int)(id / 2 / A / G);
        int cnt = 0;
        for (auto& [l, sr] : aut.states[s].out) {
            int gt = aut.step(full[gi], l);
            if (gt < 0) continue;
            int a2 = ac.step(a, l.code);
            int occ2 = occ | (ac.match_at(a2) ? 1 : 0);
            out[cnt++] = node(sr, gidx[gt], a2, occ2);
        }
        return cnt;
    };

    for (size_t id = 0; id < N; ++id) {
        size_t out[2];
        int cnt = targets_fast(id, out);
        for (int i = 0; i < cnt; ++i) ++indeg[out[i] + 1];
    }
    for (size_t i = 0; i < N; ++i) indeg[i + 1] += indeg[i];
    std::vector<int> redge(indeg[N]);
    {
        std::vector<int> fill(indeg.begin(), indeg.end() - 1);
        for (size_t id = 0; id < N; ++id) {
            size_t out[2];
            int cnt = targets_fast(id, out);
            for (int i = 0; i < cnt; ++i) redge[fill[out[i]]++] = (int)id;
        }
    }

    cd.cyc_from.assign(S, {0, 0});
    std::vector<char> vis(N);
    std::vector<size_t> queue;
    for (int g0 = 0; g0 < G; ++g0) {
        // Nodes from which a node (any s, ghost back at g0, occurred) is
        // reachable; seeded with the accepting nodes themselves.
        std::fill(vis.begin(), vis.end(), 0);
        queue.clear();
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                size_t id = node(s, g0, a, 1);
                vis[id] = 1;
                queue.push_back(id);
            }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            size_t u = queue[qi];
            for (int e = indeg[u]; e < indeg[u + 1]; ++e) {
                size_t v = (size_t)redge[e];
                if (!vis[v]) {
                    vis[v] = 1;
                    queue.push_back(v);
                }
            }
        }
        // A Cyc word from state s starts with a letter read jointly by s and
        // the ghost at g0 and then completes the loop.
        for (int s = 0; s < S; ++s) {
            for (auto& [l, sr] : aut.states[s].out) {
                int gt = aut.step(full[g0], l);
                if (gt < 0) continue;
                int a2 = ac.step(0, l.code);
                int occ2 = ac.match_at(a2) ? 1 : 0;
                if (vis[node(sr, gidx[gt], a2, occ2)])
                    cd.cyc_from[s][jidx(l.inverse() ? 1 : -1)] = 1;
            }
        }
    }

    // pre[t]: some successor chain (>= 0 steps) from t reaches a state where a
    // Cyc word of either sign can start.
    cd.pre.assign(S, 0);
    std::vector<std::vector<int>> rev(S);
    for (int s = 0; s < S; ++s)
        for (auto& [l, t] : aut.states[s].out) rev[t].push_back(s);
    std::vector<int> q2;
    for (int s = 0; s < S; ++s)
        if (cd.cyc_from[s][0] || cd.cyc_from[s][1]) {
            cd.pre[s] = 1;
            q2.push_back(s);
        }
    for (size_t qi = 0; qi < q2.size(); ++qi)
        for (int p : rev[q2[qi]])
            if (!cd.pre[p]) {
                cd.pre[p] = 1;
                q2.push_back(p);
            }

    cd.ready = true;
    return cd;
}

bool BandSystem::st_state(int cls, int sid, int j) {
    return ensure_class(cls).cyc_from[sid][jidx(j)];
}

bool BandSystem::ost_state(int cls, int sid, int j) {
    const ClassData& cd = ensure_class(cls);
    if (cd.cyc_from[sid][jidx(j)]) return true;
    for (auto& [l, t] : aut.states[sid].out) {
        int sign = l.inverse() ? 1 : -1;
        if (sign == j && cd.pre[t]) return true;
    }
    return false;
}

bool BandSystem::ext_membership(const Str& x, int cls) {
    ensure_class(cls);

    std::vector<std::vector<int>> patterns;
    for (int p : qba.classes[cls].prime_ids)
        for (const Str& rot : rotations(primes[p].word))
            patterns.push_back(codes_of(rot));
    detail::AhoCorasick ac(patterns);
    detail::Kmp kmp(codes_of(x));

    const auto& full = aut.full_states;
    int G = (int)full.size();
    int A = ac.size();
    int K = x.is_zero() ? 1 : kmp.size();
    std::vector<int> gidx(aut.state_count(), -1);
    for (int i = 0; i < G; ++i) gidx[full[i]] = i;
    auto node = [&](int gi, int a, int k, int fb, int fx) {
        return (((size_t)gi * A + a) * K + k) * 4 + (size_t)fb * 2 + fx;
    };
    size_t N = (size_t)G * A * K * 4;

    // Zero strings occur in a cycle wherever a compatible junction passes
    // through their vertex.
    auto zero_hit = [&](Letter l) {
        return (spec.letter_target(l) == x.zero_vertex &&
                spec.letter_epsilon(l) == x.zero_parity) ||
               (spec.letter_source(l) == x.zero_vertex &&
                spec.letter_sigma(l) == -x.zero_parity);
    };

    std::vector<char> vis(N);
    std::vector<size_t> queue;
    for (int g0 = 0; g0 < G; ++g0) {
        std::fill(vis.begin(), vis.end(), 0);
        queue.clear();
        // Successors of the start configuration (ghost at g0, everything
        // reset); the loop may wind several times, so acceptance is checked on
        // every visited node.
        auto push_from = [&](int gi, int a, int k, int fb, int fx) {
            for (auto& [l, unused] : aut.states[full[gi]].out) {
                int gt = aut.step(full[gi], l);
                if (gt < 0) continue;
                int a2 = ac.step(a, l.code);
                int fb2 = fb | (ac.match_at(a2) ? 1 : 0);
                int k2 = k, fx2 = fx;
                if (x.is_zero()) {
                    fx2 = fx | (zero_hit(l) ? 1 : 0);
                } else {
                    k2 = kmp.step(k, l.code);
                    fx2 = fx | (kmp.match_at(k2) ? 1 : 0);
                }
                size_t id = node(gidx[gt], a2, k2, fb2, fx2);
                if (!vis[id]) {
                    vis[id] = 1;
                    queue.push_back(id);
                }
            }
        };
        push_from(g0, 0, 0, 0, 0);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            size_t id = queue[qi];
            int fx = (int)(id % 2);
            int fb = (int)((id / 2) % 2);
            int k = (int)((id / 4) % K);
            int a = (int)((id / 4 / K) % A);
            int gi = (int)(id / 4 / K / A);
            if (gi == g0 && fb && fx) return true;
            push_from(gi, a, k, fb, fx);
        }
    }
    return false;
}

BandSystem::ReachableReport BandSystem::reachable_classes(const Str& x0, int side) {
    ReachableReport rep;
    int sid = aut.state_of(x0);
    for (int c = 0; c < class_count(); ++c)
        if (ost_state(c, sid, side)) rep.classes.push_back(c);
    for (int c : rep.classes) {
        bool minimal = true;
        for (int d : rep.classes)
            if (d != c && qba.less(d, c)) minimal = false;
        if (minimal) rep.minimal.push_back(c);
    }
    return rep;
}

std::optional<std::vector<Str>> BandSystem::band_free_relative(const Str& x0,
                                                              int side,
                                                              size_t cap) {
    std::vector<Str> out{x0};
    std::queue<Str> q;
    q.push(x0);
    size_t visited = 1;
    while (!q.empty()) {
        Str y = q.front();
        q.pop();
        for (auto& [l, t] : aut.states[aut.state_of(y)].out) {
            if (y == x0) {
                int sign = l.inverse() ? 1 : -1;
                if (sign != side) continue;
            }
            if (!can_prepend(y, l)) continue;  // full check, not just window
            Str z = prepend(y, l);
            // A band factor of the extension part must end at the new letter.
            bool banded = false;
            for (size_t p = x0.size(); p < z.size() && !banded; ++p) {
                Str f = Str::raw(spec, std::vector<Letter>(z.syl.begin() + p,
                                                           z.syl.end()));
                banded = is_band_rotation(f);
            }
            if (banded) continue;
            if (++visited > cap) return std::nullopt;
            out.push_back(z);
            q.push(z);
        }
    }
    std::sort(out.begin(), out.end(), [&](const Str& a, const Str& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return syl_less(spec, a.syl, b.syl);
    });
    return out;
}

int BandSystem::SubPoset::index_of(int global_cls) const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i] == global_cls) return (int)i;
    return -1;
}

BandSystem::SubPoset BandSystem::census(const Str& x0, int side) {
    ReachableReport rep = reachable_classes(x0, side);
    SubPoset sub;
    sub.classes = rep.classes;  // sorted by global id = lex least prime
    for (size_t i = 0; i < sub.classes.size(); ++i)
        sub.names.push_back("B" + std::to_string(i + 1));
    for (size_t i = 0; i < sub.classes.size(); ++i)
        for (size_t j = 0; j < sub.classes.size(); ++j)
            if (i != j && qba.less(sub.classes[i], sub.classes[j]))
                sub.order.emplace_back((int)i, (int)j);
    for (int m : rep.minimal) sub.minimal.push_back(sub.index_of(m));
    return sub;
}

std::string BandSystem::dot_census(const SubPoset& sub) const {
    std::ostringstream out;
    out << "digraph qba {\n  rankdir=BT;\n";
    for (size_t i = 0; i < sub.classes.size(); ++i) {
        const GmbClass& c = qba.classes[sub.classes[i]];
        out << "  " << sub.names[i] << " [label=\"" << sub.names[i];
        for (int p : c.prime_ids) out << "\\n" << primes[p].word.to_string();
        out << (c.domestic ? "\\n(domestic)" : "") << "\"];\n";
    }
    for (auto& [a, b] : sub.order) {
        bool covered = false;
        for (size_t m = 0; m < sub.classes.size() && !covered; ++m)
            covered = (int)m != a && (int)m != b &&
                      qba.less(sub.classes[a], sub.classes[m]) &&
                      qba.less(sub.classes[m], sub.classes[b]);
        if (!covered)
            out << "  " << sub.names[a] << " -> " << sub.names[b] << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string BandSystem::dot_qba() const {
    std::ostringstream out;
    out << "digraph qba {\n  rankdir=BT;\n";
    for (const auto& c : qba.classes) {
        out << "  " << c.name << " [label=\"" << c.name;
        for (int p : c.prime_ids) out << "\\n" << primes[p].word.to_string();
        out << (c.domestic ? "\\n(domestic)" : "") << "\"];\n";
    }
    // Hasse edges only.
    for (auto& [a, b] : qba.order) {
        bool covered = false;
        for (size_t m = 0; m < qba.classes.size() && !covered; ++m)
            covered = (int)m != a && (int)m != b && qba.less(a, (int)m) &&
                      qba.less((int)m, b);
        if (!covered)
            out << "  " << qba.classes[a].name << " -> " << qba.classes[b].name
                << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string BandSystem::dot_primes() const {
    std::ostringstream out;
    out << "digraph primes {\n";
    for (size_t i = 0; i < primes.size(); ++i)
        out << "  p" << i << " [label=\"" << primes[i].word.to_string() << "\"];\n";
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t j = 0; j < primes.size(); ++j)
            if (i != j && prime_reach_[i][j])
                out << "  p" << i << " -> p" << j << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace stralg
