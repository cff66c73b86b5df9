#include "stralg/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <unordered_map>

namespace stralg {

namespace {

Str window_of(const AlgebraSpec& spec, const Str& x) {
    size_t W = (size_t)spec.window();
    if (x.size() <= W) return x;
    Str w;
    w.spec = &spec;
    w.syl.assign(x.syl.end() - W, x.syl.end());
    return w;
}

}  // namespace

Automaton::Automaton(const AlgebraSpec& s) : spec(s) {
    build();
    minimize();
}

void Automaton::build() {
    std::unordered_map<Str, int, StrHash> index;
    auto intern = [&](const Str& w) {
        auto [it, fresh] = index.emplace(w, (int)states.size());
        if (fresh) states.push_back({w, {}});
        return it->second;
    };
    // Seed with every zero string; all valid strings grow from one of them.
    for (size_t v = 0; v < spec.vertices.size(); ++v)
        for (int j : {1, -1}) intern(Str::zero(spec, (int)v, j));

    for (size_t sid = 0; sid < states.size(); ++sid) {
        Str w = states[sid].window;  // copy: states may reallocate below
        std::vector<std::pair<Letter, int>> out;
        for (size_t a = 0; a < spec.arrows.size(); ++a) {
            for (bool inv : {false, true}) {
                Letter l((int)a, inv);
                if (!can_prepend(w, l)) continue;
                int tid = intern(window_of(spec, prepend(w, l)));
                out.emplace_back(l, tid);
            }
        }
        std::sort(out.begin(), out.end(),
                  [&](auto& p, auto& q) { return spec.letter_less(p.first, q.first); });
        states[sid].out = std::move(out);
    }
    int W = spec.window();
    for (size_t sid = 0; sid < states.size(); ++sid)
        if ((int)states[sid].window.size() == W) full_states.push_back((int)sid);

    // Rebuild the lookup used by state_of.
    state_index_ = std::move(index);
}

int Automaton::state_of(const Str& x) const {
    auto it = state_index_.find(window_of(spec, x));
    assert(it != state_index_.end());
    return it->second;
}

int Automaton::zero_state(int vertex, int parity) const {
    return state_of(Str::zero(spec, vertex, parity));
}

int Automaton::step(int sid, Letter l) const {
    for (auto& [letter, tid] : states[sid].out)
        if (letter == l) return tid;
    return -1;
}

int Automaton::read(int sid, const std::vector<Letter>& w) const {
    int s = sid;
    for (Letter l : w) {
        s = step(s, l);
        if (s < 0) return -1;
    }
    return s;
}

std::vector<Letter> Automaton::left_extensions(int sid) const {
    std::vector<Letter> out;
    for (auto& [letter, tid] : states[sid].out) out.push_back(letter);
    return out;
}

void Automaton::minimize() {
    // Moore-style partition refinement; every state is "accepting", so the
    // initial partition is by the set of enabled letters.
    size_t n = states.size();
    h_class_.assign(n, 0);
    if (n == 0) return;
    std::vector<int> next(n);
    for (;;) {
        std::map<std::vector<int>, int> sig_index;
        for (size_t s = 0; s < n; ++s) {
            std::vector<int> sig;
            sig.push_back(h_class_[s]);
            for (auto& [letter, tid] : states[s].out) {
                sig.push_back(letter.code);
                sig.push_back(h_class_[tid]);
            }
            auto [it, fresh] = sig_index.emplace(std::move(sig), (int)sig_index.size());
            next[s] = it->second;
        }
        size_t previous = 1 + (n ? (size_t)*std::max_element(h_class_.begin(),
                                                             h_class_.end())
                                 : 0);
        h_class_ = next;
        if (sig_index.size() == previous) break;
    }
}

}  // namespace stralg
