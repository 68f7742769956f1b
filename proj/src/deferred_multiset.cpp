#include "opfc/deferred_multiset.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <utility>

namespace opfc {

DeferredMultiset::DeferredMultiset(const WeightSeq& w, PivotRule rule) : rule_(rule) {
    slots_ = w.items();
    size_t n = slots_.size();
    if (n == 0) throw std::invalid_argument("deferred multiset requires a non-empty input");
    prefix_.resize(n + 1);
    prefix_[0] = 0;
    for (size_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + slots_[i].value;
    bounds_.push_back({0, 0});
    bounds_.push_back({n, std::numeric_limits<uint64_t>::max()});
}

std::vector<size_t> DeferredMultiset::boundary_positions() const {
    std::vector<size_t> out;
    out.reserve(bounds_.size());
    for (const Boundary& b : bounds_) out.push_back(b.pos);
    return out;
}

size_t DeferredMultiset::seg_by_pos(size_t idx) const {
    // greatest boundary index with pos <= idx (index comparisons, uncounted)
    size_t lo = 0, hi = bounds_.size() - 1;
    while (hi - lo > 1) {
        size_t mid = lo + (hi - lo) / 2;
        if (bounds_[mid].pos <= idx)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

size_t DeferredMultiset::seg_by_value(u128 x) {
    // last boundary with sep < x; sep values are non-decreasing with pos.
    // sep[0] = 0 < x (weights are positive) and sep[last] = 2^64-1 >= x.
    size_t lo = 0, hi = bounds_.size() - 1;
    while (hi - lo > 1) {
        size_t mid = lo + (hi - lo) / 2;
        if (less(bounds_[mid].sep, x))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

void DeferredMultiset::add_boundary(size_t pos, uint64_t sep) {
    auto it = std::lower_bound(bounds_.begin(), bounds_.end(), pos,
                               [](const Boundary& b, size_t p) { return b.pos < p; });
    if (it != bounds_.end() && it->pos == pos) return;
    bounds_.insert(it, Boundary{pos, sep});
}

void DeferredMultiset::recompute_prefix(size_t a, size_t b) {
    for (size_t i = a; i < b; ++i) prefix_[i + 1] = prefix_[i] + slots_[i].value;
}

uint64_t DeferredMultiset::median_of_five(uint64_t a, uint64_t b, uint64_t c, uint64_t d,
                                          uint64_t e) {
    // median of 5 in at most 6 counted comparisons
    if (less(b, a)) std::swap(a, b);
    if (less(d, c)) std::swap(c, d);
    if (less(c, a)) {
        std::swap(a, c);
        std::swap(b, d);
    }
    // a is the smallest of {a,b,c,d}; median = 2nd smallest of {b,c,d,e}, c <= d
    if (less(e, c)) {
        // e <= c <= d
        return less(b, e) ? e : std::min(b, c, [this](uint64_t x, uint64_t y) { return less(x, y); });
    }
    // c <= {d, e}
    if (less(b, c)) return c;
    uint64_t m = less(d, e) ? d : e;
    return less(b, m) ? b : m;
}

uint64_t DeferredMultiset::median_small(uint64_t* v, size_t len) {
    // counted insertion sort on a short slice
    for (size_t i = 1; i < len; ++i) {
        uint64_t x = v[i];
        size_t j = i;
        while (j > 0 && less(x, v[j - 1])) {
            v[j] = v[j - 1];
            --j;
        }
        v[j] = x;
    }
    return v[len / 2];
}

uint64_t DeferredMultiset::mom_select(std::vector<uint64_t>& v, size_t k) {
    size_t lo = 0, hi = v.size();
    while (true) {
        size_t len = hi - lo;
        if (len <= 10) {
            median_small(v.data() + lo, len);  // sorts the slice
            return v[lo + k];
        }
        std::vector<uint64_t> medians;
        medians.reserve(len / 5 + 1);
        size_t i = lo;
        for (; i + 5 <= hi; i += 5)
            medians.push_back(median_of_five(v[i], v[i + 1], v[i + 2], v[i + 3], v[i + 4]));
        if (i < hi) medians.push_back(median_small(v.data() + i, hi - i));
        uint64_t pivot = mom_select(medians, medians.size() / 2);

        size_t lt = lo, mid = lo, gt = hi;
        while (mid < gt) {
            if (less(v[mid], pivot))
                std::swap(v[lt++], v[mid++]);
            else if (less(pivot, v[mid]))
                std::swap(v[mid], v[--gt]);
            else
                ++mid;
        }
        size_t nlt = lt - lo, neq = gt - lt;
        if (k < nlt) {
            hi = lt;
        } else if (k < nlt + neq) {
            return pivot;
        } else {
            k -= nlt + neq;
            lo = gt;
        }
    }
}

uint64_t DeferredMultiset::choose_pivot(size_t a, size_t b) {
    size_t len = b - a;
    if (rule_ == PivotRule::randomized) return slots_[a + rng_() % len].value;
    if (len <= 10) {
        uint64_t buf[10];
        for (size_t i = 0; i < len; ++i) buf[i] = slots_[a + i].value;
        return median_small(buf, len);
    }
    std::vector<uint64_t> medians;
    medians.reserve(len / 5 + 1);
    size_t i = a;
    for (; i + 5 <= b; i += 5)
        medians.push_back(median_of_five(slots_[i].value, slots_[i + 1].value, slots_[i + 2].value,
                                         slots_[i + 3].value, slots_[i + 4].value));
    if (i < b) {
        uint64_t buf[4];
        size_t t = 0;
        for (; i < b; ++i) buf[t++] = slots_[i].value;
        medians.push_back(median_small(buf, t));
    }
    return mom_select(medians, medians.size() / 2);
}

std::pair<size_t, size_t> DeferredMultiset::partition3(size_t a, size_t b, uint64_t v) {
    size_t lt = a, mid = a, gt = b;
    while (mid < gt) {
        if (less(slots_[mid].value, v))
            std::swap(slots_[lt++], slots_[mid++]);
        else if (less(v, slots_[mid].value))
            std::swap(slots_[mid], slots_[--gt]);
        else
            ++mid;
    }
    add_boundary(lt, v);
    add_boundary(gt, v);
    recompute_prefix(a, b);
    return {lt, gt};
}

size_t DeferredMultiset::rank_impl(u128 x) {
    size_t seg = seg_by_value(x);
    size_t a = bounds_[seg].pos, b = bounds_[seg + 1].pos;
    while (true) {
        if (a == b) return a;
        if (b - a == 1) return less(slots_[a].value, x) ? b : a;
        uint64_t v = choose_pivot(a, b);
        auto [lt, eq] = partition3(a, b, v);
        if (less(x, v))
            b = lt;
        else if (less(v, x))
            a = eq;
        else
            return lt;
    }
}

WeightItem DeferredMultiset::select_impl(size_t r) {
    size_t idx = r - 1;
    size_t seg = seg_by_pos(idx);
    size_t a = bounds_[seg].pos, b = bounds_[seg + 1].pos;
    while (true) {
        if (b - a == 1) return slots_[a];
        uint64_t v = choose_pivot(a, b);
        auto [lt, eq] = partition3(a, b, v);
        if (idx < lt) {
            b = lt;
        } else if (idx < eq) {
            // inside the run of values equal to v; any split is a valid boundary
            add_boundary(r, v);
            return slots_[idx];
        } else {
            a = eq;
        }
    }
}

size_t DeferredMultiset::rank(u128 x) {
    ++queries_;
    return rank_impl(x);
}

size_t DeferredMultiset::rank_leq(u128 x) {
    ++queries_;
    return rank_impl(x + 1);
}

WeightItem DeferredMultiset::select(size_t r) {
    if (r < 1 || r > slots_.size()) throw std::out_of_range("select rank out of range");
    ++queries_;
    return select_impl(r);
}

u128 DeferredMultiset::partial_sum(size_t r) {
    if (r > slots_.size()) throw std::out_of_range("partial_sum rank out of range");
    ++queries_;
    if (r == 0) return 0;
    select_impl(r);  // forces a boundary at r, validating prefix_[r]
    return prefix_[r];
}

}  // namespace opfc
