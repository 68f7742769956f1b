#include "opfc/baseline.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace opfc {

namespace {

struct TreeNode {
    u128 weight;
    int64_t left = -1;   // node index, or ~origin for a leaf child
    int64_t right = -1;  // (leaf encoding: child = -(int64_t)origin)
};

constexpr int64_t leaf_ref(uint32_t origin) { return -int64_t(origin); }

// Walks the node arena from the root down with an explicit stack; recursion
// would overflow on degenerate depth-n chains from exponential instances.
void extract_depths(const std::vector<TreeNode>& nodes, size_t root,
                    std::vector<uint32_t>& lengths) {
    std::vector<std::pair<int64_t, uint32_t>> stack;
    stack.push_back({int64_t(root), 0});
    while (!stack.empty()) {
        auto [ref, depth] = stack.back();
        stack.pop_back();
        if (ref < 0) {
            lengths[size_t(-ref) - 1] = depth;
            continue;
        }
        const TreeNode& nd = nodes[size_t(ref)];
        stack.push_back({nd.left, depth + 1});
        stack.push_back({nd.right, depth + 1});
    }
}

}  // namespace

LengthAssignment huffman_lengths(const WeightSeq& w) {
    size_t n = w.size();
    LengthAssignment out;
    out.lengths.assign(n, 0);
    if (n == 1) {
        out.lengths[0] = 1;
        out.stats.distinct_lengths = 1;
        return out;
    }

    std::vector<TreeNode> nodes;
    nodes.reserve(2 * n - 1);
    struct HeapEntry {
        u128 weight;
        uint64_t seq;
        int64_t ref;
        bool operator>(const HeapEntry& o) const {
            return weight != o.weight ? weight > o.weight : seq > o.seq;
        }
    };
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    uint64_t seq = 0;
    for (const WeightItem& it : w.items()) heap.push({it.value, seq++, leaf_ref(it.origin)});

    while (heap.size() > 1) {
        HeapEntry a = heap.top();
        heap.pop();
        HeapEntry b = heap.top();
        heap.pop();
        nodes.push_back({a.weight + b.weight, a.ref, b.ref});
        heap.push({a.weight + b.weight, seq++, int64_t(nodes.size() - 1)});
    }
    extract_depths(nodes, nodes.size() - 1, out.lengths);

    std::vector<uint32_t> sorted = out.lengths;
    std::sort(sorted.begin(), sorted.end());
    out.stats.distinct_lengths = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    return out;
}

LengthAssignment van_leeuwen_lengths(const WeightSeq& w, bool assume_sorted,
                                     std::string* extraction_out) {
    size_t n = w.size();
    LengthAssignment out;
    out.lengths.assign(n, 0);
    if (extraction_out) extraction_out->clear();
    if (n == 1) {
        out.lengths[0] = 1;
        out.stats.distinct_lengths = 1;
        if (extraction_out) *extraction_out = "E";
        return out;
    }

    std::vector<WeightItem> ext = w.items();
    if (assume_sorted) {
        for (size_t i = 0; i + 1 < n; ++i)
            if (ext[i].value > ext[i + 1].value)
                throw std::invalid_argument("assume_sorted set but weights are not non-decreasing");
    } else {
        std::sort(ext.begin(), ext.end(),
                  [](const WeightItem& a, const WeightItem& b) { return a.value < b.value; });
    }

    std::vector<TreeNode> nodes;
    nodes.reserve(n - 1);
    size_t e = 0;       // head of the external queue
    size_t ihead = 0;   // head of the internal queue (created nodes are FIFO)
    u128 last_internal = 0;

    struct Picked {
        u128 weight;
        int64_t ref;
    };
    auto pick_min = [&]() -> Picked {
        bool take_external;
        if (e < n && ihead < nodes.size())
            take_external = u128(ext[e].value) <= nodes[ihead].weight;  // E before I on ties
        else
            take_external = e < n;
        if (extraction_out) extraction_out->push_back(take_external ? 'E' : 'I');
        if (take_external) {
            Picked p{ext[e].value, leaf_ref(ext[e].origin)};
            ++e;
            return p;
        }
        Picked p{nodes[ihead].weight, int64_t(ihead)};
        ++ihead;
        return p;
    };

    for (size_t k = 0; k + 1 < n; ++k) {
        Picked a = pick_min();
        Picked b = pick_min();
        u128 weight = a.weight + b.weight;
        // internal nodes come out in non-decreasing weight order
        assert(weight >= last_internal);
        last_internal = weight;
        nodes.push_back({weight, a.ref, b.ref});
    }
    if (extraction_out) extraction_out->push_back('I');  // the root extraction

    extract_depths(nodes, nodes.size() - 1, out.lengths);

    std::vector<uint32_t> sorted = out.lengths;
    std::sort(sorted.begin(), sorted.end());
    out.stats.distinct_lengths = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    return out;
}

}  // namespace opfc
