/*
Bit vectors over GF(2) and text helpers.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using Bit = std::uint8_t;

// Ordered bit sequence; index 0 is u_0.
using BitVec = std::vector<Bit>;

inline std::string to_bit_string(const BitVec& bits) {
    std::string text(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            text[i] = '1';
    return text;
}

// Leftmost character is index 0. Blanks are ignored.
inline BitVec parse_bit_string(const std::string& text) {
    BitVec bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1')
            bits.push_back(static_cast<Bit>(c - '0'));
        else if (c != ' ' && c != '\t')
            throw std::invalid_argument("bit string may contain only 0, 1 and blanks");
    }
    return bits;
}

// Hex rendering of a register bank; bit index 0 is the least significant bit
// of the value, so it ends up in the rightmost hex digit.
inline std::string to_hex(const BitVec& bits) {
    static const char* digits = "0123456789abcdef";
    const std::size_t ndig = bits.empty() ? 1 : (bits.size() + 3) / 4;
    std::vector<unsigned> nibble(ndig, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            nibble[i / 4] |= 1u << (i % 4);
    std::string text(ndig, '0');
    for (std::size_t d = 0; d < ndig; ++d)
        text[ndig - 1 - d] = digits[nibble[d]];
    return text;
}

inline bool is_power_of_two(std::size_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

} // namespace polar
