/*
Streaming generation of kernel power rows with a register chain.

Cell 0 of every row is 1 and cell j of row t is the XOR of cells j-1 and j
of row t-1, so one register per column and one sweep per step reproduce the
dense matrix row by row without storing it. Stepping past the last row
rolls over to row 0 by itself: the update needs no reset or row counter,
the stream is cyclic with period 2^m.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>

#include "polar/bits.hpp"

namespace polar {

class GeneratorRowStream {
public:
    explicit GeneratorRowStream(unsigned m)
        : m_(m), regs_(std::size_t{1} << m, 0) {
        if (m > 20)
            throw std::invalid_argument("row stream width limited to exponent 20");
    }

    unsigned exponent() const { return m_; }
    std::size_t width() const { return regs_.size(); }

    // Index of the row produced by the last step; -1 before the first step.
    long long step_index() const { return t_; }

    void reset() {
        std::fill(regs_.begin(), regs_.end(), Bit{0});
        t_ = -1;
    }

    // Advances to the next row and returns it. The reference stays owned by
    // the stream and changes on the next step.
    const BitVec& step() {
        for (std::size_t j = regs_.size() - 1; j > 0; --j)
            regs_[j] ^= regs_[j - 1];
        regs_[0] = 1;
        ++t_;
        return regs_;
    }

    const BitVec& row() const { return regs_; }

private:
    unsigned m_;
    BitVec regs_;
    long long t_ = -1;
};

// Confirms that within every streamed row the cell at distance d from the
// row index mirrors the cell at d: row[t - d] == row[d] for all d <= t.
// This symmetry is what lets a half-width cyclic stream feed the
// shift-register unit.
inline bool diagonal_equals_column_check(unsigned m) {
    if (m > 12)
        throw std::invalid_argument("diagonal check limited to exponent 12");
    GeneratorRowStream stream(m);
    const std::size_t width = stream.width();
    for (std::size_t t = 0; t < width; ++t) {
        const BitVec& row = stream.step();
        for (std::size_t d = 0; d <= t; ++d)
            if (row[t - d] != row[d])
                return false;
    }
    return true;
}

} // namespace polar
