#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stralg/condensation.hpp"
#include "stralg/linexpr.hpp"

namespace stralg {

// Location of the gap filled by an almost periodic left N-string in the
// completed condensation: limit of an w-ray (PLUS), of an w*-ray (MINUS), or
// an irrational-position gap (ZERO).  For a domestic class the unique band
// lies in both end sets and every gap is a two-sided limit; PLUS is reported.
enum class GapLocation { PLUS, MINUS, ZERO };

std::string to_string(GapLocation g);

// Classifies the tail band of `ap` against the end sets of ctx's class.
// Requires ctx minimal, the tail band in the class, and a long finite prefix
// of ap inside the hammock with the class's St membership; throws
// std::invalid_argument otherwise.
GapLocation classify_limit_location(BContext& ctx, const AlmostPeriodic& ap);

// Completion of the two catalogued condensation order types.
struct CompletionReport {
    enum class Family { DomesticBeamChain, NondomesticBeam, Unsupported };
    Family family = Family::Unsupported;

    // DomesticBeamChain: the completed expression (w+1+w*).n and the number
    // of points added (= n, one per beam).
    LinExprPtr completed;
    long pointsAdded = 0;

    // NondomesticBeam: the symbolic real-indexed description (the completion
    // leaves the finite-description class) and the gap census.
    std::string symbolic;
    bool plusEnd = false, minusEnd = false, zeroPresent = false;

    std::string describe() const;
};
// Input must normalize to (w+w*).n or w+xi(z,...,z)+w*; anything else yields
// Family::Unsupported (an honest refusal, not a guess).
CompletionReport complete_catalog(const LinExprPtr& e);

// Census of the gaps of the condensation of ctx's hammock through its class.
struct GapCensus {
    bool domestic = false;
    // Domestic: number of gaps; each is simultaneously a <1,l_B> and a
    // <1,lbar_B> limit (two-sided), so plus and minus coincide and zero is
    // absent.
    long dualLimitGaps = 0;
    bool plus = false, minus = false, zero = false;
};
// Requires ctx minimal.
GapCensus gap_census(BContext& ctx);

// Limit of a strictly sqsubset_l-increasing sequence of finite prefixes:
// either an almost periodic left N-string detected through state recurrence
// and verified over the whole tail, or the stabilized prefix with a
// NON_PERIODIC tag (eventual periodicity of an arbitrary stream is not
// decidable from finite data).
struct ConvergeResult {
    bool periodic = false;
    std::optional<AlmostPeriodic> ap;  // set when periodic
    Str prefix;                        // longest common knowledge otherwise
};
// Throws std::invalid_argument when xs is empty or not strictly increasing.
ConvergeResult converge(const Automaton& aut, const std::vector<Str>& xs);

// The finite prefix `stem + periods copies of the period` of an almost
// periodic left N-string.
Str expand_prefix(const AlmostPeriodic& ap, size_t periods);

}  // namespace stralg
