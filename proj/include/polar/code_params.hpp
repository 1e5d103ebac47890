/*
Code parameters: block size, information size and the frozen set, plus the
erasure-channel construction that picks which rows to freeze.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "polar/bits.hpp"

namespace polar {

class CodeParams {
public:
    // frozen_indices: the rows pinned to zero; K = N - |frozen|.
    CodeParams(unsigned n, const std::vector<std::size_t>& frozen_indices)
        : n_(n) {
        if (n < 1 || n > 30)
            throw std::invalid_argument("code exponent must be in [1, 30]");
        size_ = std::size_t{1} << n;
        frozen_.assign(size_, 0);
        for (std::size_t idx : frozen_indices) {
            if (idx >= size_)
                throw std::invalid_argument("frozen index out of range");
            if (frozen_[idx])
                throw std::invalid_argument("duplicate frozen index");
            frozen_[idx] = 1;
        }
        k_ = size_ - frozen_indices.size();
    }

    unsigned exponent() const { return n_; }
    std::size_t block_length() const { return size_; }
    std::size_t info_length() const { return k_; }

    bool is_frozen(std::size_t i) const {
        if (i >= size_)
            throw std::invalid_argument("row index out of range");
        return frozen_[i] != 0;
    }

    std::vector<std::size_t> frozen_indices() const {
        std::vector<std::size_t> out;
        out.reserve(size_ - k_);
        for (std::size_t i = 0; i < size_; ++i)
            if (frozen_[i])
                out.push_back(i);
        return out;
    }

private:
    unsigned n_;
    std::size_t size_ = 0;
    std::size_t k_ = 0;
    BitVec frozen_;
};

// Erasure probabilities of the synthesized channels, evolved from a single
// design erasure rate: a minus-branch worsens z to 2z - z^2, a plus-branch
// improves it to z^2. Branch choices follow the row index bits, most
// significant first.
inline std::vector<double> erasure_rates(std::size_t block_length, double design_erasure) {
    if (!is_power_of_two(block_length) || block_length < 2)
        throw std::invalid_argument("block length must be a power of two, at least 2");
    if (!(design_erasure > 0.0) || !(design_erasure < 1.0))
        throw std::invalid_argument("design erasure rate must lie in (0, 1)");
    std::vector<double> z(block_length);
    auto fill = [&](auto&& self, double e, std::size_t i, std::size_t h) -> void {
        if (h == 0) {
            z[i] = e;
            return;
        }
        self(self, 2.0 * e - e * e, i, h / 2);
        self(self, e * e, i + h, h / 2);
    };
    fill(fill, design_erasure, 0, block_length / 2);
    return z;
}

// The N - K rows with the worst erasure rates, ties freezing the smaller
// index first. Returned in ascending index order.
inline std::vector<std::size_t> construct_frozen_set(std::size_t block_length,
                                                     std::size_t info_length,
                                                     double design_erasure = 0.5) {
    if (info_length > block_length)
        throw std::invalid_argument("information length exceeds block length");
    const std::vector<double> z = erasure_rates(block_length, design_erasure);
    std::vector<std::size_t> order(block_length);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (z[a] != z[b])
            return z[a] > z[b];
        return a < b;
    });
    std::vector<std::size_t> frozen(order.begin(),
                                    order.begin() + (block_length - info_length));
    std::sort(frozen.begin(), frozen.end());
    return frozen;
}

inline CodeParams make_code(unsigned n, std::size_t info_length, double design_erasure = 0.5) {
    const std::size_t block_length = std::size_t{1} << n;
    return CodeParams(n, construct_frozen_set(block_length, info_length, design_erasure));
}

} // namespace polar
