#pragma once

#include <cstdint>
#include <string>

#include "opfc/weights.hpp"

namespace opfc {

/// Instance with prescribed alternation: alpha well-separated value groups
/// of near-equal sizes, positions shuffled by seed. Group g holds weights
/// 2^(g*s) with s = ceil(lg2 n) + 1, so each group outweighs everything
/// before it and the two-queue run exhausts groups one at a time. Throws
/// std::domain_error when the required exponents overflow the weight cap.
WeightSeq gen_alternation(size_t n, size_t alpha, uint64_t seed);

/// True when (n, alpha) fits the exponent budget of gen_alternation.
bool alternation_feasible(size_t n, size_t alpha);

/// i.i.d. uniform weights in [1..max_value], reproducible by seed.
WeightSeq gen_random(size_t n, uint64_t max_value, uint64_t seed);

/// Weights file: UTF-8 text, one decimal weight per line, '#' lines and
/// blank lines ignored; file order defines origins 1..n.
WeightSeq read_weights(const std::string& path);
void write_weights(const std::string& path, const WeightSeq& w);

}  // namespace opfc
