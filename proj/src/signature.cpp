#include "opfc/signature.hpp"

#include <algorithm>
#include <deque>

namespace opfc {

size_t Signature::count_ei() const {
    size_t count = 0;
    for (size_t i = 0; i + 1 < chars.size(); ++i)
        if (chars[i] == 'E' && chars[i + 1] == 'I') ++count;
    return count;
}

Signature signature(const WeightSeq& w, TieRule rule) {
    size_t n = w.size();
    if (n == 1) return {"E"};

    std::vector<uint64_t> ext;
    ext.reserve(n);
    for (const WeightItem& it : w.items()) ext.push_back(it.value);
    std::sort(ext.begin(), ext.end());

    std::string chars;
    chars.reserve(2 * n - 1);
    std::deque<u128> internals;
    size_t e = 0;
    bool have_held = false;
    u128 held = 0;

    for (size_t step = 0; step < 2 * n - 1; ++step) {
        bool pick_external;
        if (e < n && !internals.empty()) {
            if (rule == TieRule::external_first)
                pick_external = u128(ext[e]) <= internals.front();
            else
                pick_external = u128(ext[e]) < internals.front();
        } else {
            pick_external = e < n;
        }
        u128 value;
        if (pick_external) {
            chars.push_back('E');
            value = ext[e++];
        } else {
            chars.push_back('I');
            value = internals.front();
            internals.pop_front();
        }
        if (have_held) {
            internals.push_back(held + value);
            have_held = false;
        } else {
            held = value;
            have_held = true;
        }
    }
    return {std::move(chars)};
}

size_t alternation(const WeightSeq& w) { return signature(w).count_ei(); }

}  // namespace opfc
