#include "opfc/gdm.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>

namespace opfc {

namespace {

// Child reference: >= 0 is a node index, < 0 encodes sorted position -ref.
using ChildRef = int64_t;
constexpr ChildRef leaf_ref(size_t pos) { return -int64_t(pos); }

struct GdmNode {
    u128 weight = 0;
    bool weight_known = false;
    bool pure = false;
    uint32_t phase = 0;   // grouping phase that produced a pure node's leaves
    size_t lo = 0, hi = 0;  // 1-based sorted positions covered by a pure node
    ChildRef child[2] = {0, 0};
};

class Runner {
public:
    Runner(const WeightSeq& w, const GdmOptions& opts)
        : w_(w), opts_(opts), ds_(w, opts.pivot), n_(w.size()) {
        if (opts_.check_invariants) {
            shadow_.reserve(n_ + 1);
            std::vector<uint64_t> vals;
            vals.reserve(n_);
            for (const WeightItem& it : w.items()) vals.push_back(it.value);
            std::sort(vals.begin(), vals.end());
            shadow_.push_back(0);
            for (uint64_t v : vals) shadow_.push_back(shadow_.back() + v);
        }
    }

    GdmResult run();

private:
    size_t new_node(GdmNode nd) {
        nodes_.push_back(nd);
        return nodes_.size() - 1;
    }

    // Materializes a node weight, issuing partialSum queries for an
    // uncached pure node; mixed nodes always know their weight.
    u128 materialize(size_t idx) {
        GdmNode& nd = nodes_[idx];
        if (!nd.weight_known) {
            u128 hi = ds_.partial_sum(nd.hi);
            u128 lo = nd.lo > 1 ? ds_.partial_sum(nd.lo - 1) : 0;
            nd.weight = hi - lo;
            nd.weight_known = true;
        }
        return nd.weight;
    }

    u128 shadow_weight(size_t idx) const {
        const GdmNode& nd = nodes_[idx];
        if (nd.weight_known) return nd.weight;
        return shadow_[nd.hi] - shadow_[nd.lo - 1];
    }

    // Pairs two queue nodes. Adjacent pure nodes from the same grouping
    // phase merge into a bigger pure node and stay lazy; everything else is
    // mixed and its weight is computed at creation.
    size_t make_parent(size_t x, size_t y) {
        const GdmNode& a = nodes_[x];
        const GdmNode& b = nodes_[y];
        if (a.pure && b.pure && a.phase == b.phase && (a.hi + 1 == b.lo || b.hi + 1 == a.lo)) {
            GdmNode nd;
            nd.pure = true;
            nd.phase = a.phase;
            nd.lo = std::min(a.lo, b.lo);
            nd.hi = std::max(a.hi, b.hi);
            nd.child[0] = ChildRef(x);
            nd.child[1] = ChildRef(y);
            if (a.weight_known && b.weight_known) {
                nd.weight = a.weight + b.weight;
                nd.weight_known = true;
            }
            return new_node(nd);
        }
        u128 wx = materialize(x);
        u128 wy = materialize(y);
        GdmNode nd;
        nd.weight = wx + wy;
        nd.weight_known = true;
        nd.child[0] = ChildRef(x);
        nd.child[1] = ChildRef(y);
        return new_node(nd);
    }

    size_t make_leaf_pair(size_t node_idx, size_t leaf_pos, u128 leaf_value) {
        u128 wn = materialize(node_idx);
        GdmNode nd;
        nd.weight = wn + leaf_value;
        nd.weight_known = true;
        nd.child[0] = ChildRef(node_idx);
        nd.child[1] = leaf_ref(leaf_pos);
        return new_node(nd);
    }

    // Next unpaired external weight, fetched at most once per position.
    uint64_t next_external() {
        if (ecache_pos_ != processed_ + 1) {
            ecache_val_ = ds_.select(processed_ + 1).value;
            ecache_pos_ = processed_ + 1;
        }
        return ecache_val_;
    }

    void snapshot(GdmPhase phase) {
        if (opts_.record_trace) {
            uint64_t q = ds_.queries();
            trace_.push_back({phase, q - last_queries_});
            last_queries_ = q;
        }
        if (opts_.check_invariants) check_invariants();
    }

    void check_invariants() {
        if (queue_.empty()) return;
        u128 mn = shadow_weight(queue_.front());
        u128 mx = mn;
        u128 prev = 0;
        for (size_t idx : queue_) {
            u128 v = shadow_weight(idx);
            if (v < prev) invariants_ok_ = false;  // queue must be weight-ordered
            prev = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        if (!(mx < 2 * mn)) invariants_ok_ = false;
    }

    void grouping();
    void docking();
    void mixing();
    void conclusion(std::vector<uint32_t>& pos_len);

    const WeightSeq& w_;
    GdmOptions opts_;
    DeferredMultiset ds_;
    size_t n_;
    std::vector<GdmNode> nodes_;
    std::deque<size_t> queue_;  // unpaired internal nodes in creation order
    size_t processed_ = 0;      // externals consumed so far (sorted positions 1..processed_)
    size_t ecache_pos_ = 0;
    uint64_t ecache_val_ = 0;
    uint64_t loop_iterations_ = 0;
    std::vector<PhaseRecord> trace_;
    uint64_t last_queries_ = 0;
    std::vector<u128> shadow_;  // sorted prefix sums, invariant checks only
    bool invariants_ok_ = true;
};

void Runner::grouping() {
    size_t head = queue_.front();
    u128 head_weight = materialize(head);
    size_t r = ds_.rank_leq(head_weight);
    assert(r >= processed_);
    size_t m = r - processed_;
    uint32_t phase = uint32_t(loop_iterations_);

    for (size_t k = 0; k + 1 < m; k += 2) {
        size_t lo = processed_ + k + 1;
        GdmNode nd;
        nd.pure = true;
        nd.phase = phase;
        nd.lo = lo;
        nd.hi = lo + 1;
        nd.child[0] = leaf_ref(lo);
        nd.child[1] = leaf_ref(lo + 1);
        queue_.push_back(new_node(nd));
    }
    if (m % 2 == 1) {
        // the odd leftover pairs with the smallest unpaired internal: the
        // next external is strictly larger than the head weight by choice
        // of rank_leq, so the head is always the smaller partner
        uint64_t leftover = ecache_pos_ == r ? ecache_val_ : ds_.select(r).value;
        queue_.pop_front();
        queue_.push_back(make_leaf_pair(head, r, leftover));
    }
    processed_ = r;
}

void Runner::docking() {
    u128 e = next_external();
    while (queue_.size() >= 2 && materialize(queue_.back()) < e) {
        // the whole batch sits below the next external; pair it off in
        // creation order, the odd largest node carrying over as the new head
        std::deque<size_t> next;
        if (queue_.size() % 2 == 1) {
            next.push_back(queue_.back());
            queue_.pop_back();
        }
        while (!queue_.empty()) {
            size_t a = queue_.front();
            queue_.pop_front();
            size_t b = queue_.front();
            queue_.pop_front();
            next.push_back(make_parent(a, b));
        }
        queue_ = std::move(next);
    }
}

void Runner::mixing() {
    u128 e = next_external();
    size_t sz = queue_.size();

    // doubling search for the number of internals strictly below the next
    // unpaired weight, materializing pure weights on demand
    auto below = [&](size_t i) { return materialize(queue_[i]) < e; };
    size_t r;
    if (!below(0)) {
        r = 0;
    } else {
        size_t bound = 1;
        while (bound < sz && below(bound)) bound <<= 1;
        size_t lo = bound >> 1, hi = std::min(bound, sz);  // queue_[lo] < e
        while (hi - lo > 1) {
            size_t mid = lo + (hi - lo) / 2;
            if (below(mid))
                lo = mid;
            else
                hi = mid;
        }
        r = lo + 1;
    }

    std::vector<size_t> paired;
    paired.reserve(r / 2 + 1);
    for (size_t i = 0; i + 1 < r; i += 2) {
        size_t a = queue_.front();
        queue_.pop_front();
        size_t b = queue_.front();
        queue_.pop_front();
        paired.push_back(make_parent(a, b));
    }

    if (r % 2 == 1) {
        size_t last = queue_.front();
        queue_.pop_front();
        for (size_t idx : paired) queue_.push_back(idx);
        queue_.push_back(make_leaf_pair(last, processed_ + 1, e));
        processed_ += 1;
        return;
    }

    // r even: the externals' side may win; compare the next unpaired
    // internal against the next unpaired external
    bool have_e2 = processed_ + 2 <= n_;
    uint64_t e2 = 0;
    if (have_e2) e2 = ds_.select(processed_ + 2).value;
    u128 next_internal = materialize(queue_.front());
    if (have_e2 && u128(e2) <= next_internal) {
        for (size_t idx : paired) queue_.push_back(idx);
        GdmNode nd;
        nd.weight = u128(e) + e2;
        nd.weight_known = true;
        nd.child[0] = leaf_ref(processed_ + 1);
        nd.child[1] = leaf_ref(processed_ + 2);
        queue_.push_back(new_node(nd));
        processed_ += 2;
    } else {
        size_t partner = queue_.front();
        queue_.pop_front();
        for (size_t idx : paired) queue_.push_back(idx);
        queue_.push_back(make_leaf_pair(partner, processed_ + 1, e));
        processed_ += 1;
        if (have_e2) {
            // reuse the fetched value as the next external
            ecache_pos_ = processed_ + 1;
            ecache_val_ = e2;
        }
    }
}

void Runner::conclusion(std::vector<uint32_t>& pos_len) {
    // Remaining roots are within a factor of two of each other and the queue
    // is already in non-decreasing weight order, so the two-level split can
    // be assigned positionally without materializing any weight.
    size_t i = queue_.size();
    uint32_t l = uint32_t(std::bit_width(i) - 1);
    size_t deep = 2 * (i - (size_t(1) << l));

    std::vector<std::pair<ChildRef, uint32_t>> stack;
    for (size_t j = 0; j < i; ++j) {
        uint32_t root_depth = j < deep ? l + 1 : l;
        stack.push_back({ChildRef(queue_[j]), root_depth});
    }
    while (!stack.empty()) {
        auto [ref, depth] = stack.back();
        stack.pop_back();
        if (ref < 0) {
            pos_len[size_t(-ref)] = depth;
            continue;
        }
        const GdmNode& nd = nodes_[size_t(ref)];
        stack.push_back({nd.child[0], depth + 1});
        stack.push_back({nd.child[1], depth + 1});
    }

    // Positions inside an unresolved segment are interchangeable, so every
    // code-length change point must be pinned as a boundary before lengths
    // can be read off positionally.
    for (size_t s = 1; s < n_; ++s)
        if (pos_len[s] != pos_len[s + 1]) ds_.select(s);
}

GdmResult Runner::run() {
    GdmResult result;
    result.assignment.lengths.assign(n_, 0);

    if (n_ == 1) {
        result.assignment.lengths[0] = 1;
        result.assignment.stats.distinct_lengths = 1;
        return result;
    }

    // first internal node pairs the two smallest weights
    {
        GdmNode nd;
        nd.pure = true;
        nd.phase = 0;
        nd.lo = 1;
        nd.hi = 2;
        nd.child[0] = leaf_ref(1);
        nd.child[1] = leaf_ref(2);
        nd.weight = ds_.partial_sum(2);
        nd.weight_known = true;
        queue_.push_back(new_node(nd));
    }
    processed_ = 2;
    if (n_ >= 3) next_external();
    snapshot(GdmPhase::initialization);

    while (true) {
        ++loop_iterations_;
        grouping();
        snapshot(GdmPhase::grouping);
        if (processed_ == n_) break;
        docking();
        snapshot(GdmPhase::docking);
        mixing();
        snapshot(GdmPhase::mixing);
    }

    std::vector<uint32_t> pos_len(n_ + 1, 0);
    conclusion(pos_len);

    const std::vector<WeightItem>& slots = ds_.items();
    for (size_t s = 1; s <= n_; ++s)
        result.assignment.lengths[slots[s - 1].origin - 1] = pos_len[s];
    snapshot(GdmPhase::conclusion);

    std::vector<uint32_t> sorted = pos_len;
    sorted.erase(sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    result.assignment.stats.distinct_lengths =
        std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    result.assignment.stats.loop_iterations = loop_iterations_;
    result.assignment.stats.ds_queries = ds_.queries();
    result.assignment.stats.comparisons = ds_.comparisons();
    result.trace = std::move(trace_);
    result.invariants_ok = invariants_ok_;
    return result;
}

}  // namespace

GdmResult gdm_code(const WeightSeq& w, const GdmOptions& opts) {
    Runner runner(w, opts);
    return runner.run();
}

std::vector<PhaseRecord> gdm_phase_trace(const WeightSeq& w) {
    GdmOptions opts;
    opts.record_trace = true;
    return gdm_code(w, opts).trace;
}

}  // namespace opfc
