#pragma once

#include <cstddef>
#include <string>

#include "opfc/weights.hpp"

namespace opfc {

/// Tie rule used when the smallest unpaired external weight equals the
/// smallest unpaired internal weight. external_first matches the reference
/// worked run and is what the GDM coder assumes; internal_first exists for
/// experiments only.
enum class TieRule { external_first, internal_first };

/// E/I extraction string of a two-queue run over the sorted weights.
/// Length 2n-1; "E" marks an external (leaf) extraction, "I" an internal
/// one, including the final node. n = 1 yields the degenerate "E".
struct Signature {
    std::string chars;

    size_t count_ei() const;
};

Signature signature(const WeightSeq& w, TieRule rule = TieRule::external_first);

/// Alternation measure: number of "EI" substrings, in [1..n-1] for n >= 2.
size_t alternation(const WeightSeq& w);

}  // namespace opfc
