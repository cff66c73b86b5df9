#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "stralg/bands.hpp"
#include "stralg/condensation.hpp"
#include "stralg/hammock.hpp"
#include "stralg/linexpr.hpp"

namespace stralg {

struct OrderTypeOptions {
    size_t cap = 1000000;     // enumeration guard for finite hammocks
    size_t max_steps = 4096;  // neighbour-walk guard
    int max_depth = 64;       // fiber recursion guard
};

// Computes the order type of one-sided hammocks as normalized linear-order
// expressions.  A hammock is processed through a minimal band class: the
// finite boundary skeleton splits it into segments, each segment is either a
// finite neighbour chain or folds into rays around a shuffle of the center
// interval types, and the fibers recurse into strictly smaller hammocks.
class OrderTypeEngine {
  public:
    explicit OrderTypeEngine(BandSystem& bs, OrderTypeOptions opt = {});

    // Normalized order type of H_l^side(base).  Throws std::runtime_error
    // with an explanatory message when a guard trips.
    LinExprPtr hammock(const HammockKey& key);

    // The interval types I(x) of the center classes of the minimal class of
    // the key, paired with the class they belong to.  Normalized.
    std::vector<std::pair<CenterClass, LinExprPtr>> center_interval_types(
        const HammockKey& key);

    BandSystem& bands() { return bs_; }

    // Deepest fiber nesting reached so far; the recursion always moves to a
    // strictly smaller set of reachable classes, so this is bounded by the
    // number of classes reachable from the outermost key.
    int max_depth_seen() const { return max_depth_seen_; }

  private:
    BandSystem& bs_;
    OrderTypeOptions opt_;
    std::map<std::pair<int, int>, LinExprPtr> memo_;  // (state, side)
    std::set<std::pair<int, int>> busy_;
    int depth_ = 0;
    int max_depth_seen_ = 0;

    LinExprPtr compute(const HammockKey& key);
    LinExprPtr fiber(BContext& ctx, const Str& x);
    LinExprPtr segment(BContext& ctx, const BeamReport& br, const Str& ylo,
                       const Str& yhi);
    LinExprPtr interval_type(BContext& ctx, const Str& center);
    LinExprPtr shuffle_middle(BContext& ctx, const BeamReport& br);
};

// One-shot convenience wrapper.
LinExprPtr hammock_order_type(BandSystem& bs, const HammockKey& key,
                              OrderTypeOptions opt = {});

// Consistency probe between a hammock and a computed expression: a finite
// expression must match the exact element count; an infinite expression must
// not exhaust the hammock within `steps` successor steps; successor and
// predecessor must invert each other along the walked prefix.
bool prefix_check(const HammockKey& key, const LinExprPtr& e,
                  size_t steps = 64);

}  // namespace stralg
