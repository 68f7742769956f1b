#include "opfc/weights.hpp"

#include <algorithm>

namespace opfc {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

WeightSeq::WeightSeq(std::vector<WeightItem> items) : items_(std::move(items)) {
    validate();
}

WeightSeq WeightSeq::from_values(const std::vector<uint64_t>& values) {
    std::vector<WeightItem> items;
    items.reserve(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        items.push_back({values[i], uint32_t(i + 1)});
    return WeightSeq(std::move(items));
}

void WeightSeq::validate() {
    if (items_.empty()) throw std::invalid_argument("weight sequence must not be empty");
    const u128 total_cap = u128(1) << 126;
    std::vector<bool> seen(items_.size(), false);
    total_ = 0;
    for (const WeightItem& it : items_) {
        if (it.value == 0) throw std::invalid_argument("weights must be strictly positive");
        if (it.value > max_weight_value) throw std::domain_error("weight exceeds 2^62 cap");
        if (it.origin < 1 || it.origin > items_.size() || seen[it.origin - 1])
            throw std::invalid_argument("origin tags must form a permutation of 1..n");
        seen[it.origin - 1] = true;
        total_ += it.value;
        if (total_ >= total_cap) throw std::domain_error("total weight exceeds the exact accumulator range");
    }
}

u128 code_cost(const WeightSeq& w, const LengthAssignment& a) {
    if (a.lengths.size() != w.size())
        throw std::invalid_argument("length/weight index mismatch");
    u128 cost = 0;
    for (const WeightItem& it : w.items()) {
        uint32_t len = a.lengths[it.origin - 1];
        if (len == 0) throw std::invalid_argument("code lengths must be positive");
        cost += u128(it.value) * len;
    }
    return cost;
}

namespace {

// limbs += 2^bit
void add_bit(std::vector<uint64_t>& limbs, uint32_t bit) {
    size_t word = bit / 64;
    if (limbs.size() <= word) limbs.resize(word + 1, 0);
    uint64_t carry = uint64_t(1) << (bit % 64);
    for (size_t i = word; carry != 0; ++i) {
        if (i == limbs.size()) {
            limbs.push_back(carry);
            break;
        }
        uint64_t old = limbs[i];
        limbs[i] = old + carry;
        carry = limbs[i] < old ? 1 : 0;
    }
}

}  // namespace

KraftSum::KraftSum(std::vector<uint64_t> limbs, uint32_t lmax)
    : limbs_(std::move(limbs)), lmax_(lmax) {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

bool KraftSum::is_one() const {
    // numerator == 2^lmax
    size_t word = lmax_ / 64;
    if (limbs_.size() != word + 1) return false;
    if (limbs_[word] != (uint64_t(1) << (lmax_ % 64))) return false;
    for (size_t i = 0; i < word; ++i)
        if (limbs_[i] != 0) return false;
    return true;
}

bool KraftSum::leq_one() const {
    size_t word = lmax_ / 64;
    if (limbs_.size() > word + 1) return false;
    if (limbs_.size() < word + 1) return true;
    uint64_t top = uint64_t(1) << (lmax_ % 64);
    if (limbs_[word] > top) return false;
    if (limbs_[word] < top) return true;
    for (size_t i = 0; i < word; ++i)
        if (limbs_[i] != 0) return false;  // strictly above 2^lmax
    return true;
}

uint64_t KraftSum::numerator_u64() const {
    if (limbs_.empty()) return 0;
    if (limbs_.size() > 1) throw std::overflow_error("Kraft numerator exceeds 64 bits");
    return limbs_[0];
}

KraftSum kraft_sum(const std::vector<uint32_t>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("kraft_sum of empty length set");
    uint32_t lmax = *std::max_element(lengths.begin(), lengths.end());
    std::vector<uint64_t> limbs;
    for (uint32_t l : lengths) {
        if (l == 0) throw std::invalid_argument("code lengths must be positive");
        add_bit(limbs, lmax - l);
    }
    return KraftSum(std::move(limbs), lmax);
}

}  // namespace opfc
