#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stralg/automaton.hpp"
#include "stralg/str.hpp"

namespace stralg {

// A band up to rotation, stored as its canonical rotation: the
// lexicographically least valid rotation under (arrow name, direct before
// inverse).
struct BandRep {
    Str word;
};

struct GmbClass {
    int id = -1;          // position in QbaPoset::classes
    std::string name;     // "B1", "B2", ... in lex order of least prime
    std::vector<int> prime_ids;
    bool domestic = false;
};

struct QbaPoset {
    std::vector<GmbClass> classes;
    // Strict order pairs (a, b) meaning class a strictly below class b.
    std::vector<std::pair<int, int>> order;
    bool less(int a, int b) const;
};

// (root, exponent) with x = root^exponent and root primitive; nullopt when x
// is not a cyclic string.
std::optional<std::pair<Str, int>> primitive_root(const Str& x);

// Shared context for everything band-related: the extension automaton, the
// prime bands, the poset Q^Ba, and the per-class membership machinery.
class BandSystem {
public:
    explicit BandSystem(const AlgebraSpec& spec);

    const AlgebraSpec& spec;
    Automaton aut;
    std::vector<BandRep> primes;  // sorted by (length, canonical word)
    QbaPoset qba;

    int class_count() const { return (int)qba.classes.size(); }
    int class_of_prime(int prime_id) const { return class_of_prime_[prime_id]; }
    // Class id by name ("B1"); -1 when absent.
    int class_by_name(std::string_view name) const;

    // Is w (some rotation of) a band: cyclic, primitive, mixed signs, powers
    // valid?
    bool is_band_rotation(const Str& w) const;
    Str canonical_rotation(const Str& band) const;
    std::vector<Str> rotations(const Str& band) const;

    // b1 preceq b2: some string b2.u.b1 exists (rotation-invariantly).
    bool band_reaches(const Str& b1, const Str& b2) const;

    // c in Cyc(class): c cyclic with valid powers and some prime rotation of
    // the class occurs as a factor of a power of c.
    bool cyc_membership(const Str& c, int cls, std::string* error = nullptr) const;

    // x a factor of some power of some B-cycle of the class.
    bool ext_membership(const Str& x, int cls);

    // x in St_j(class) depends only on ExtState: some c in Cyc(class) with
    // theta(c) = j and c.x a string.
    bool st_state(int cls, int sid, int j);
    bool st_membership(int cls, const Str& x, int j) {
        return st_state(cls, aut.state_of(x), j);
    }
    // x in OSt_j(class): some c.u.x with c in Cyc(class) and the first letter
    // beyond x of sign j.
    bool ost_state(int cls, int sid, int j);
    bool ost_membership(int cls, const Str& x, int j) {
        return ost_state(cls, aut.state_of(x), j);
    }

    // Classes reachable from (x0, i): some band of the class completes a
    // string b.u.x0 in H_l^i(x0).  Returns class ids (sorted) and the minimal
    // ones among them under the Q^Ba order.
    struct ReachableReport {
        std::vector<int> classes;
        std::vector<int> minimal;
    };
    ReachableReport reachable_classes(const Str& x0, int side);

    // All y = z.x0 in H_l^i(x0) with z free of band-rotation factors; nullopt
    // with INDETERMINATE when the visit cap is exceeded.
    std::optional<std::vector<Str>> band_free_relative(const Str& x0, int side,
                                                       size_t cap = 1000000);

    // The sub-poset of classes reachable from (x0, side), relabeled B1..Bk in
    // lex order of least prime (the global order restricted to the subset).
    struct SubPoset {
        std::vector<int> classes;                // global ids, sorted
        std::vector<std::string> names;          // new labels, parallel
        std::vector<std::pair<int, int>> order;  // indices into classes
        std::vector<int> minimal;                // indices into classes
        int index_of(int global_cls) const;      // -1 when absent
    };
    SubPoset census(const Str& x0, int side);
    std::string dot_census(const SubPoset& sub) const;

    std::string dot_qba() const;
    std::string dot_primes() const;

private:
    std::vector<int> class_of_prime_;
    // Raw and transitively closed prime reachability.
    std::vector<std::vector<char>> prime_reach_;

    struct ClassData {
        bool ready = false;
        // Per automaton state: can a Cyc word of first-letter sign j start
        // here ([0] for j = -1, [1] for j = +1)?
        std::vector<std::array<char, 2>> cyc_from;
        // Per state: some successor chain (>= 0 steps) hits a cyc_from state.
        std::vector<char> pre;
    };
    std::vector<ClassData> class_data_;
    const ClassData& ensure_class(int cls);

    void enumerate_primes();
    void build_qba();
};

}  // namespace stralg
