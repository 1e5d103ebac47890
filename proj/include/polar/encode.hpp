/*
Polar encoding: multiply a row vector by the kernel power, in place, with
the standard butterfly network. The transform is involutive over GF(2).
*/

#pragma once

#include <cstddef>
#include <stdexcept>

#include "polar/bits.hpp"
#include "polar/code_params.hpp"

namespace polar {

// v <- v * kappa^(x)m for any power-of-two length.
inline void polar_transform(BitVec& v) {
    const std::size_t n = v.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("transform length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                v[j] ^= v[j + h];
}

inline BitVec encode(const BitVec& u, const CodeParams& params) {
    if (u.size() != params.block_length())
        throw std::invalid_argument("encode: input length does not match the block length");
    BitVec x = u;
    polar_transform(x);
    return x;
}

} // namespace polar
