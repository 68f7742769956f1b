#include "opfc/codec.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <stdexcept>

#include "opfc/gdm.hpp"

namespace opfc {

namespace {

constexpr char magic[4] = {'O', 'P', 'F', 'C'};
constexpr uint8_t version = 0x01;

struct BitWriter {
    std::vector<uint8_t>& out;
    uint8_t acc = 0;
    int used = 0;

    void put(uint64_t code, uint32_t bits) {
        for (int b = int(bits) - 1; b >= 0; --b) {
            acc = uint8_t(acc << 1) | uint8_t((code >> b) & 1);
            if (++used == 8) {
                out.push_back(acc);
                acc = 0;
                used = 0;
            }
        }
    }
    void finish() {
        if (used > 0) out.push_back(uint8_t(acc << (8 - used)));
    }
};

}  // namespace

Codebook canonical_assign(const LengthAssignment& a) {
    if (a.lengths.empty()) throw std::invalid_argument("empty length assignment");
    if (!kraft_sum(a).leq_one()) throw std::domain_error("lengths violate the Kraft inequality");

    std::vector<uint32_t> order(a.lengths.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
        return a.lengths[x] != a.lengths[y] ? a.lengths[x] < a.lengths[y] : x < y;
    });

    Codebook book;
    book.entries.resize(a.lengths.size());
    uint64_t code = 0;
    uint32_t prev_len = a.lengths[order[0]];
    for (size_t k = 0; k < order.size(); ++k) {
        uint32_t idx = order[k];
        uint32_t len = a.lengths[idx];
        code <<= (len - prev_len);
        book.entries[idx] = {idx + 1, len, code};
        ++code;
        prev_len = len;
    }
    return book;
}

std::vector<uint8_t> encode(const std::vector<uint8_t>& data) {
    if (data.empty()) throw std::invalid_argument("encode requires non-empty data");

    std::array<uint64_t, 256> freq{};
    for (uint8_t b : data) ++freq[b];

    std::vector<uint8_t> symbols;
    std::vector<uint64_t> weights;
    for (int s = 0; s < 256; ++s) {
        if (freq[s] > 0) {
            symbols.push_back(uint8_t(s));
            weights.push_back(freq[s]);
        }
    }

    LengthAssignment lengths = gdm_lengths(WeightSeq::from_values(weights));
    Codebook book = canonical_assign(lengths);

    std::array<CodeEntry, 256> by_symbol{};
    for (size_t k = 0; k < symbols.size(); ++k) by_symbol[symbols[k]] = book.entries[k];

    std::vector<uint8_t> out;
    out.insert(out.end(), magic, magic + 4);
    out.push_back(version);
    out.push_back(uint8_t(symbols.size() - 1));
    for (size_t k = 0; k < symbols.size(); ++k) {
        out.push_back(symbols[k]);
        out.push_back(uint8_t(lengths.lengths[k]));
    }
    uint64_t len = data.size();
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t(len >> (8 * i)));

    BitWriter writer{out};
    for (uint8_t b : data) writer.put(by_symbol[b].codeword, by_symbol[b].length);
    writer.finish();
    return out;
}

std::vector<uint8_t> decode(const std::vector<uint8_t>& container) {
    size_t pos = 0;
    auto need = [&](size_t count) {
        if (container.size() - pos < count) throw std::runtime_error("container truncated");
    };
    need(6);
    if (std::memcmp(container.data(), magic, 4) != 0)
        throw std::runtime_error("container magic mismatch");
    if (container[4] != version) throw std::runtime_error("unsupported container version");
    pos = 5;
    size_t nsym = size_t(container[pos++]) + 1;

    need(2 * nsym + 8);
    std::vector<uint8_t> symbols(nsym);
    std::vector<uint32_t> lengths(nsym);
    for (size_t k = 0; k < nsym; ++k) {
        symbols[k] = container[pos++];
        lengths[k] = container[pos++];
        if (lengths[k] == 0) throw std::runtime_error("zero code length in container");
    }
    uint64_t data_len = 0;
    for (int i = 0; i < 8; ++i) data_len |= uint64_t(container[pos++]) << (8 * i);

    LengthAssignment la;
    la.lengths = lengths;
    Codebook book = canonical_assign(la);  // validates Kraft feasibility

    // canonical decode tables per length
    uint32_t max_len = *std::max_element(lengths.begin(), lengths.end());
    std::vector<uint64_t> first_code(max_len + 1, 0), count(max_len + 1, 0);
    std::vector<std::vector<uint8_t>> at_length(max_len + 1);
    {
        std::vector<uint32_t> order(nsym);
        for (uint32_t i = 0; i < nsym; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
            return lengths[x] != lengths[y] ? lengths[x] < lengths[y] : x < y;
        });
        for (uint32_t idx : order) at_length[lengths[idx]].push_back(symbols[idx]);
        for (uint32_t l = 1; l <= max_len; ++l) count[l] = at_length[l].size();
        uint64_t code = 0;
        uint32_t prev = 0;
        for (uint32_t l = 1; l <= max_len; ++l) {
            code <<= (l - prev);
            prev = l;
            first_code[l] = code;
            code += count[l];
        }
    }
    (void)book;

    std::vector<uint8_t> data;
    data.reserve(data_len);
    size_t bit_pos = pos;
    uint32_t bit_in_byte = 0;
    for (uint64_t emitted = 0; emitted < data_len; ++emitted) {
        uint64_t code = 0;
        uint32_t len = 0;
        while (true) {
            if (bit_pos >= container.size()) throw std::runtime_error("container truncated");
            uint32_t bit = (container[bit_pos] >> (7 - bit_in_byte)) & 1;
            if (++bit_in_byte == 8) {
                bit_in_byte = 0;
                ++bit_pos;
            }
            code = (code << 1) | bit;
            ++len;
            if (len > max_len) throw std::runtime_error("invalid codeword in bitstream");
            if (count[len] > 0 && code >= first_code[len] && code < first_code[len] + count[len]) {
                data.push_back(at_length[len][size_t(code - first_code[len])]);
                break;
            }
        }
    }
    // remaining padding bits must be zero and no trailing bytes may follow
    if (bit_in_byte != 0) {
        uint8_t padding = uint8_t(container[bit_pos] << bit_in_byte);
        if (padding != 0) throw std::runtime_error("nonzero padding bits");
        ++bit_pos;
    }
    if (bit_pos != container.size()) throw std::runtime_error("trailing bytes after bitstream");
    return data;
}

}  // namespace opfc
