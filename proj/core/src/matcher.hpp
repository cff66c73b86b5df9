#pragma once

// Internal pattern-matching helpers over syllable streams (letter codes read
// in position order, i.e. rightmost syllable first).

#include <map>
#include <vector>

namespace stralg::detail {

// Aho-Corasick over int letter codes; used to watch a stream for an
// occurrence of any pattern from a finite dictionary.
class AhoCorasick {
public:
    explicit AhoCorasick(const std::vector<std::vector<int>>& patterns) {
        nodes_.push_back({});
        for (const auto& p : patterns) {
            int cur = 0;
            for (int c : p) {
                auto it = nodes_[cur].next.find(c);
                if (it == nodes_[cur].next.end()) {
                    nodes_[cur].next[c] = (int)nodes_.size();
                    it = nodes_[cur].next.find(c);
                    nodes_.push_back({});
                }
                cur = it->second;
            }
            if (!p.empty()) nodes_[cur].terminal = true;
        }
        // Failure links via BFS.
        std::vector<int> queue;
        for (auto& [c, t] : nodes_[0].next) {
            nodes_[t].fail = 0;
            queue.push_back(t);
        }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            nodes_[u].terminal =
                nodes_[u].terminal || nodes_[nodes_[u].fail].terminal;
            for (auto& [c, t] : nodes_[u].next) {
                nodes_[t].fail = step(nodes_[u].fail, c);
                queue.push_back(t);
            }
        }
    }

    int size() const { return (int)nodes_.size(); }

    int step(int state, int code) const {
        for (;;) {
            auto it = nodes_[state].next.find(code);
            if (it != nodes_[state].next.end()) return it->second;
            if (state == 0) return 0;
            state = nodes_[state].fail;
        }
    }

    bool match_at(int state) const { return nodes_[state].terminal; }

private:
    struct Node {
        std::map<int, int> next;
        int fail = 0;
        bool terminal = false;
    };
    std::vector<Node> nodes_;
};

// KMP automaton for a single pattern; state n means "just matched".
class Kmp {
public:
    explicit Kmp(std::vector<int> pattern) : pat_(std::move(pattern)) {
        fail_.assign(pat_.size() + 1, 0);
        for (size_t i = 1; i < pat_.size(); ++i) {
            int k = fail_[i];
            while (k > 0 && pat_[i] != pat_[k]) k = fail_[k];
            fail_[i + 1] = (pat_[i] == pat_[k]) ? k + 1 : 0;
        }
    }

    int size() const { return (int)pat_.size() + 1; }

    int step(int state, int code) const {
        if (state == (int)pat_.size()) state = fail_[state];
        while (state > 0 && pat_[state] != code) state = fail_[state];
        return (pat_[state] == code) ? state + 1 : 0;
    }

    bool match_at(int state) const { return state == (int)pat_.size(); }

private:
    std::vector<int> pat_;
    std::vector<int> fail_;
};

}  // namespace stralg::detail
