/*
Kronecker powers of the 2x2 lower-triangular polar kernel over GF(2).
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polar/bits.hpp"

namespace polar {

// Dense kernel power, bit-packed by row. Built once, read-only afterwards,
// so the class invariant "this is exactly the m-th kernel power" holds for
// the whole lifetime.
class GeneratorMatrix {
public:
    // Doubles the matrix in place m times starting from [1]. The dense form
    // costs size^2 bits, hence the exponent guard.
    explicit GeneratorMatrix(unsigned m)
        : m_(m),
          size_(std::size_t{1} << m),
          words_per_row_((size_ + 63) / 64),
          words_(size_ * words_per_row_, 0) {
        if (m > 16)
            throw std::invalid_argument("dense kernel power limited to exponent 16");
        set(0, 0);
        for (unsigned k = 0; k < m_; ++k) {
            const std::size_t w = std::size_t{1} << k;
            for (std::size_t i = 0; i < w; ++i) {
                if (w >= 64) {
                    // Whole words: block column offsets stay word-aligned.
                    const std::uint64_t* src = &words_[i * words_per_row_];
                    std::uint64_t* dst = &words_[(w + i) * words_per_row_];
                    const std::size_t nw = w / 64;
                    for (std::size_t t = 0; t < nw; ++t) {
                        dst[t] = src[t];
                        dst[nw + t] = src[t];
                    }
                } else {
                    for (std::size_t j = 0; j < w; ++j)
                        if (at(i, j)) {
                            set(w + i, j);
                            set(w + i, w + j);
                        }
                }
            }
        }
    }

    unsigned exponent() const { return m_; }
    std::size_t size() const { return size_; }

    bool at(std::size_t i, std::size_t j) const {
        return (words_[i * words_per_row_ + j / 64] >> (j % 64)) & 1u;
    }

    BitVec row(std::size_t i) const {
        BitVec bits(size_);
        for (std::size_t j = 0; j < size_; ++j)
            bits[j] = static_cast<Bit>(at(i, j));
        return bits;
    }

private:
    void set(std::size_t i, std::size_t j) {
        words_[i * words_per_row_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }

    unsigned m_;
    std::size_t size_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> words_;
};

inline GeneratorMatrix kronecker_power(unsigned m) {
    return GeneratorMatrix(m);
}

// Closed form for any cell of any sufficiently large kernel power: the cell
// (i, j) is 1 iff the binary support of j is contained in that of i.
inline Bit subset_rule(std::uint64_t i, std::uint64_t j) {
    return static_cast<Bit>((j & ~i) == 0);
}

} // namespace polar
