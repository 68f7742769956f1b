#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opfc {

// All weight sums are carried in 128-bit integers. Individual weights are
// capped at 2^62 and totals at 2^126, so no cost or partial-sum path can
// wrap; inputs beyond the cap are rejected at load time.
using u128 = unsigned __int128;

constexpr uint64_t max_weight_value = uint64_t(1) << 62;

std::string u128_to_string(u128 v);

struct WeightItem {
    uint64_t value;   // the weight, in [1 .. 2^62]
    uint32_t origin;  // 1-based position in the original input
};

/// Unsorted multiset of positive integer weights, each tagged with its
/// original input position.
class WeightSeq {
public:
    WeightSeq() = default;
    explicit WeightSeq(std::vector<WeightItem> items);
    static WeightSeq from_values(const std::vector<uint64_t>& values);

    size_t size() const { return items_.size(); }
    const std::vector<WeightItem>& items() const { return items_; }
    u128 total() const { return total_; }

private:
    void validate();

    std::vector<WeightItem> items_;
    u128 total_ = 0;
};

struct RunStats {
    uint64_t ds_queries = 0;        // rank/select/partialSum issued
    uint64_t comparisons = 0;       // weight comparisons inside the deferred structure
    uint64_t loop_iterations = 0;   // main-loop passes (0 for non-GDM coders)
    uint64_t distinct_lengths = 0;  // number of distinct code lengths produced
};

/// Code length per original input position (index = origin - 1).
struct LengthAssignment {
    std::vector<uint32_t> lengths;
    RunStats stats;
};

/// Exact cost sum(L[i] * W[i]) over matching origins.
u128 code_cost(const WeightSeq& w, const LengthAssignment& a);

/// Exact value of sum(2^-L[i]) as an integer numerator over 2^lmax.
class KraftSum {
public:
    KraftSum(std::vector<uint64_t> limbs, uint32_t lmax);

    bool is_one() const;
    bool leq_one() const;
    uint32_t lmax() const { return lmax_; }
    /// Numerator as a plain integer; throws if it does not fit 64 bits.
    uint64_t numerator_u64() const;

private:
    std::vector<uint64_t> limbs_;  // little-endian base-2^64 numerator
    uint32_t lmax_;
};

KraftSum kraft_sum(const std::vector<uint32_t>& lengths);
inline KraftSum kraft_sum(const LengthAssignment& a) { return kraft_sum(a.lengths); }

}  // namespace opfc
