#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "opfc/weights.hpp"

namespace opfc {

enum class PivotRule {
    deterministic,  // median-of-medians pivot, worst-case bounds hold
    randomized,     // uniform pivot, faster in practice, excluded from bound tests
};

/// Lazily sorted weight multiset supporting rank, select and partialSum.
///
/// Queries partition only the segments they touch, so after any query
/// sequence every answer matches a fully sorted copy of the input while the
/// total work adapts to the query load. Boundaries are positions p such that
/// every value in slots[0..p) is <= every value in slots[p..n); prefix[p] is
/// the sum of the p smallest values whenever p is a boundary.
///
/// Queries mutate internal state: exclusive access required per query.
class DeferredMultiset {
public:
    explicit DeferredMultiset(const WeightSeq& w, PivotRule rule = PivotRule::deterministic);

    size_t size() const { return slots_.size(); }
    u128 total() const { return prefix_[slots_.size()]; }

    /// Number of elements strictly smaller than x.
    size_t rank(u128 x);
    /// Number of elements smaller than or equal to x.
    size_t rank_leq(u128 x);
    /// The r-th smallest element, r in [1..n]; position r becomes a boundary.
    WeightItem select(size_t r);
    /// Sum of the r smallest elements, r in [0..n].
    u128 partial_sum(size_t r);

    uint64_t queries() const { return queries_; }
    uint64_t comparisons() const { return comparisons_; }

    /// Current slot contents (partially sorted); origin tags preserved.
    const std::vector<WeightItem>& items() const { return slots_; }
    /// Boundary positions, ascending, always containing 0 and n.
    std::vector<size_t> boundary_positions() const;
    /// Prefix value at a boundary position.
    u128 prefix_at(size_t p) const { return prefix_[p]; }

private:
    struct Boundary {
        size_t pos;
        uint64_t sep;  // max(left of pos) <= sep <= min(right of pos)
    };

    bool less(u128 a, u128 b) {
        ++comparisons_;
        return a < b;
    }

    size_t seg_by_pos(size_t idx) const;
    size_t seg_by_value(u128 x);
    void add_boundary(size_t pos, uint64_t sep);
    void recompute_prefix(size_t a, size_t b);
    uint64_t choose_pivot(size_t a, size_t b);
    uint64_t median_of_five(uint64_t a, uint64_t b, uint64_t c, uint64_t d, uint64_t e);
    uint64_t median_small(uint64_t* v, size_t len);
    uint64_t mom_select(std::vector<uint64_t>& v, size_t k);
    // three-way partition of [a,b) around v; returns (lt, eq) bounds,
    // registers them as boundaries and refreshes prefix sums over [a,b).
    std::pair<size_t, size_t> partition3(size_t a, size_t b, uint64_t v);

    size_t rank_impl(u128 x);
    WeightItem select_impl(size_t r);

    std::vector<WeightItem> slots_;
    std::vector<Boundary> bounds_;  // sorted by pos; sep values non-decreasing
    std::vector<u128> prefix_;
    uint64_t queries_ = 0;
    uint64_t comparisons_ = 0;
    PivotRule rule_;
    std::mt19937_64 rng_{0x9e3779b97f4a7c15ULL};
};

}  // namespace opfc
