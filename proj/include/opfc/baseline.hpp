#pragma once

#include <string>

#include "opfc/weights.hpp"

namespace opfc {

/// Heap-based optimal code construction on unsorted weights. Heap ties are
/// broken by node creation sequence so runs are fully deterministic.
LengthAssignment huffman_lengths(const WeightSeq& w);

/// Two-queue optimal code construction, linear past sorting. With
/// assume_sorted the input order is verified in O(n) and rejected if it is
/// not non-decreasing; otherwise a sorted copy is made first. Externals win
/// ties against equal internals. extraction_out, when given, receives the
/// E/I extraction string of the run.
LengthAssignment van_leeuwen_lengths(const WeightSeq& w, bool assume_sorted = false,
                                     std::string* extraction_out = nullptr);

}  // namespace opfc
