#pragma once

#include <cstdint>
#include <vector>

#include "opfc/weights.hpp"

namespace opfc {

struct CodeEntry {
    uint32_t origin;    // symbol index, 1-based
    uint32_t length;    // codeword length in bits
    uint64_t codeword;  // value in the low `length` bits, MSB-first
};

/// Canonical codebook: sorting entries by (length, origin) yields
/// numerically increasing codewords via the first-code recurrence.
struct Codebook {
    std::vector<CodeEntry> entries;  // indexed by origin - 1
};

/// Deterministic canonical codewords for a set of lengths; rejects length
/// sets violating the Kraft inequality.
Codebook canonical_assign(const LengthAssignment& a);

/// Byte-frequency coded container:
///   magic "OPFC", version 0x01, symbol-count-minus-one (1 byte),
///   per present symbol: value (1 byte) + code length (1 byte),
///   original data length as 8-byte little-endian,
///   then the bitstream MSB-first within each byte, zero-padded.
std::vector<uint8_t> encode(const std::vector<uint8_t>& data);
std::vector<uint8_t> decode(const std::vector<uint8_t>& container);

}  // namespace opfc
