#include "opfc/instance.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>

#include "opfc/signature.hpp"

namespace opfc {

namespace {

uint32_t separation_exponent(size_t n) {
    uint32_t ceil_lg = uint32_t(std::bit_width(n - 1));  // ceil(lg2 n) for n >= 2
    return ceil_lg + 1;
}

}  // namespace

bool alternation_feasible(size_t n, size_t alpha) {
    if (n < 2 || alpha < 1 || alpha > n - 1) return false;
    uint64_t max_exponent = uint64_t(alpha) * separation_exponent(n);
    return max_exponent <= 62;
}

WeightSeq gen_alternation(size_t n, size_t alpha, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_alternation requires n >= 2");
    if (alpha < 1 || alpha > n - 1) throw std::invalid_argument("alpha must be in [1..n-1]");
    uint32_t s = separation_exponent(n);
    if (uint64_t(alpha) * s > 62)
        throw std::domain_error("infeasible: required exponents overflow the weight cap");

    std::vector<uint64_t> values;
    values.reserve(n);
    size_t base = n / alpha, rem = n % alpha;
    for (size_t g = 1; g <= alpha; ++g) {
        size_t count = base + (g <= rem ? 1 : 0);
        uint64_t value = uint64_t(1) << (g * s);
        values.insert(values.end(), count, value);
    }

    std::mt19937_64 rng(seed);
    std::shuffle(values.begin(), values.end(), rng);
    WeightSeq w = WeightSeq::from_values(values);
    if (alternation(w) != alpha)
        throw std::logic_error("gen_alternation postcondition failed");
    return w;
}

WeightSeq gen_random(size_t n, uint64_t max_value, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random requires n >= 1");
    if (max_value < 1 || max_value > max_weight_value)
        throw std::invalid_argument("max_value out of range");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> dist(1, max_value);
    std::vector<uint64_t> values(n);
    for (uint64_t& v : values) v = dist(rng);
    return WeightSeq::from_values(values);
}

WeightSeq read_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<uint64_t> values;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        size_t end = line.find_last_not_of(" \t\r");
        std::string token = line.substr(start, end - start + 1);
        const std::string where = path + ":" + std::to_string(line_no);
        if (token[0] == '-' || token[0] == '0')
            throw std::runtime_error(where + ": non-positive weight");
        uint64_t value = 0;
        for (char c : token) {
            if (c < '0' || c > '9') throw std::runtime_error(where + ": parse failure");
            if (value > (uint64_t(-1) - (c - '0')) / 10)
                throw std::runtime_error(where + ": weight overflows");
            value = value * 10 + (c - '0');
        }
        if (value > max_weight_value) throw std::runtime_error(where + ": weight exceeds 2^62 cap");
        values.push_back(value);
    }
    if (values.empty()) throw std::runtime_error(path + ": no weights found");
    return WeightSeq::from_values(values);
}

void write_weights(const std::string& path, const WeightSeq& w) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    std::vector<uint64_t> by_origin(w.size());
    for (const WeightItem& it : w.items()) by_origin[it.origin - 1] = it.value;
    for (uint64_t v : by_origin) out << v << '\n';
    if (!out) throw std::runtime_error("write failure: " + path);
}

}  // namespace opfc
