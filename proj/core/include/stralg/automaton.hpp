#pragma once

#include <vector>

#include "stralg/str.hpp"

namespace stralg {

// Finite-state view of the factorial string language.  A state is the window
// of at most window() leftmost syllables of a string (the whole string when
// shorter, including the zero-string tag), which is exactly the context that
// decides one-letter left extensions.
class Automaton {
public:
    explicit Automaton(const AlgebraSpec& spec);

    const AlgebraSpec& spec;

    struct State {
        Str window;
        std::vector<std::pair<Letter, int>> out;  // at most one direct, one inverse
    };
    std::vector<State> states;

    // Ids of states whose window has full length window(); the phases of every
    // left N-string pass through these.
    std::vector<int> full_states;

    int state_count() const { return (int)states.size(); }

    // ExtState of an arbitrary valid string.
    int state_of(const Str& x) const;
    int zero_state(int vertex, int parity) const;

    // -1 when prepending l is invalid.
    int step(int sid, Letter l) const;
    // Reads a whole word (position order: w[0] first) from sid; -1 on failure.
    int read(int sid, const std::vector<Letter>& w) const;

    // The valid one-letter left extensions from a state.
    std::vector<Letter> left_extensions(int sid) const;

    // Language-equivalence classes of states: equal classes admit exactly the
    // same sets of valid left-extension words.
    int h_class(int sid) const { return h_class_[sid]; }
    bool h_equivalent(const Str& x, const Str& y) const {
        return h_class_[state_of(x)] == h_class_[state_of(y)];
    }

private:
    std::unordered_map<Str, int, StrHash> state_index_;
    std::vector<int> h_class_;
    void build();
    void minimize();
};

}  // namespace stralg
