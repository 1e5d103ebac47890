/*
Partial sum bookkeeping: sub-block bounds, availability times, and the
indexing rules that let each processing element of the shift-register unit
read from one fixed register.

S_{i,j} is bit (i - a) of the encoding of the decided sub-block u_a..u_b,
where [a, b] is the aligned 2^j-wide window around row i. It becomes valid
exactly when u_b has been decided, i.e. at decode time tau(i, j) = b.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polar/bits.hpp"
#include "polar/encode.hpp"
#include "polar/errors.hpp"

namespace polar {

// Bit j of the row index: selects between the upper-edge (0) and the
// lower-edge (1) update at graph node (i, j). Only nodes with branch bit 0
// own a partial sum that is ever consumed.
inline unsigned branch_bit(std::size_t i, unsigned j) {
    return static_cast<unsigned>((i >> j) & 1u);
}

struct PartialSumRequest {
    std::size_t row = 0;
    unsigned col = 0;
};

struct SubBlock {
    std::size_t first = 0;
    std::size_t last = 0;
};

// Rows [first, last] of the sub-code whose encoding contains S_{i,j}.
inline SubBlock subblock_bounds(std::size_t i, unsigned j) {
    if (j >= 63)
        throw std::invalid_argument("column index out of range");
    const std::size_t a = (i >> j) << j;
    return {a, a + (std::size_t{1} << j) - 1};
}

// Decode time at which S_{i,j} first holds its final value: the index of
// the last bit of its sub-block.
inline std::size_t tau(std::size_t i, unsigned j) {
    return subblock_bounds(i, j).last;
}

// Rows whose partial sums PE(x, p) consumes across a length-N decode:
// x, x + 2^(p+1), x + 2*2^(p+1), ...
inline std::vector<std::size_t> pe_required_sums(std::size_t x, unsigned p,
                                                 std::size_t block_length) {
    if (!is_power_of_two(block_length) || block_length < 2)
        throw std::invalid_argument("block length must be a power of two, at least 2");
    const std::size_t stride = std::size_t{1} << (p + 1);
    if (stride > block_length)
        throw std::invalid_argument("processing element stage out of range");
    if (x >= stride / 2)
        throw std::invalid_argument("processing element offset out of range");
    std::vector<std::size_t> rows;
    rows.reserve(block_length / stride);
    for (std::size_t i = x; i < block_length; i += stride)
        rows.push_back(i);
    return rows;
}

// Register that serves every read of PE(x, p): 2^p - 1 - x. The distance
// tau(i, p) - i is the same for every row i the element consumes, which is
// what makes a fixed wiring possible.
inline std::size_t dff_index(std::size_t x, unsigned p) {
    if (p >= 63)
        throw std::invalid_argument("column index out of range");
    if (x >= (std::size_t{1} << p))
        throw std::invalid_argument("processing element offset out of range");
    return (std::size_t{1} << p) - 1 - x;
}

// Reference value of S_{i,j} from a decided prefix u_0..u_t: encode the
// sub-block and take the bit at offset i - a. Demands t >= tau(i, j).
inline Bit partial_sum_oracle(const BitVec& decided_prefix, std::size_t i, unsigned j) {
    const SubBlock sb = subblock_bounds(i, j);
    if (decided_prefix.size() <= sb.last)
        throw AvailabilityError("partial sum S_{" + std::to_string(i) + "," +
                                std::to_string(j) + "} needs decided bits through index " +
                                std::to_string(sb.last));
    BitVec sub(decided_prefix.begin() + static_cast<std::ptrdiff_t>(sb.first),
               decided_prefix.begin() + static_cast<std::ptrdiff_t>(sb.last + 1));
    polar_transform(sub);
    return sub[i - sb.first];
}

} // namespace polar
