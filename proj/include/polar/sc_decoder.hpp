/*
Successive cancellation decoding over the n x N factor graph.

LLRs enter at column n (the channel) and move left through the two node
updates; decisions fall out of column 0 one row per step and feed the
partial sum unit, which in turn serves every lower-edge update exactly at
the availability time of the sum it consumes. After deciding u_t the next
step refreshes columns countr_zero(t+1) down to 0 only, which is the
classic O(N log N) schedule.
*/

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polar/bits.hpp"
#include "polar/code_params.hpp"
#include "polar/errors.hpp"
#include "polar/psu.hpp"

namespace polar {

using Llr = double;

struct LlrFrame {
    std::vector<Llr> channel;
};

// Upper-edge update, min-sum form. Zero counts as positive.
inline Llr llr_f(Llr a, Llr b) {
    const Llr mag = std::min(std::abs(a), std::abs(b));
    return ((a < 0) != (b < 0)) ? -mag : mag;
}

// Lower-edge update: the partial sum decides whether the upper branch is
// added or subtracted.
inline Llr llr_g(Llr a, Llr b, Bit s) {
    return s ? b - a : b + a;
}

// Positive or zero means bit 0.
inline Bit hard_decision(Llr v) {
    return v < 0 ? Bit{1} : Bit{0};
}

struct ReadEvent {
    std::size_t row = 0;
    unsigned col = 0;
    Bit value = 0;
};

struct TraceRecord {
    std::size_t t = 0;
    bool frozen = false;
    Llr decision_llr = 0.0;
    Bit bit = 0;
    std::vector<ReadEvent> reads;
};

struct DecodeResult {
    BitVec u_hat;                  // all N decided bits
    BitVec info_bits;              // the non-frozen subset, in index order
    std::vector<Llr> decision_llrs;
    std::vector<TraceRecord> trace; // filled only when tracing is on
};

class ScDecoder {
public:
    explicit ScDecoder(CodeParams params)
        : params_(std::move(params)),
          lattice_(params_.block_length() * params_.exponent(), 0.0) {}

    const CodeParams& params() const { return params_; }

    DecodeResult decode(const LlrFrame& frame, PartialSumUnit& psu,
                        bool record_trace = false) {
        const std::size_t size = params_.block_length();
        const unsigned n = params_.exponent();
        if (frame.channel.size() != size)
            throw std::invalid_argument("decode: channel length does not match the block length");
        for (Llr v : frame.channel)
            if (!std::isfinite(v))
                throw std::invalid_argument("decode: channel values must be finite");
        if (psu.block_length() != size)
            throw std::invalid_argument("decode: partial sum unit size does not match the code");

        psu.reset();
        channel_ = frame.channel;

        DecodeResult res;
        res.u_hat.assign(size, 0);
        res.decision_llrs.assign(size, 0.0);
        if (record_trace)
            res.trace.reserve(size);

        for (std::size_t t = 0; t < size; ++t) {
            std::vector<ReadEvent> reads;
            if (t == 0) {
                // Full left-to-right priming: every row 0 column comes from
                // a chain of upper-edge updates.
                for (unsigned j = n; j-- > 0;) {
                    const std::size_t h = std::size_t{1} << j;
                    for (std::size_t i = 0; i < h; ++i)
                        at(i, j) = llr_f(in(i, j + 1), in(i + h, j + 1));
                }
            } else {
                const unsigned z = static_cast<unsigned>(
                    std::countr_zero(static_cast<std::uint64_t>(t)));
                const std::size_t hz = std::size_t{1} << z;
                // Lower-edge updates at column z consume sums decided by the
                // previous step, whose availability time is exactly t - 1.
                for (std::size_t i = t; i < t + hz; ++i) {
                    const PartialSumRequest req{i - hz, z};
                    const Bit s = psu.read(req);
                    if (record_trace)
                        reads.push_back({req.row, req.col, s});
                    at(i, z) = llr_g(in(i - hz, z + 1), in(i, z + 1), s);
                }
                for (unsigned j = z; j-- > 0;) {
                    const std::size_t h = std::size_t{1} << j;
                    for (std::size_t i = t; i < t + h; ++i)
                        at(i, j) = llr_f(in(i, j + 1), in(i + h, j + 1));
                }
            }

            const Llr decision = in(t, 0);
            const bool frozen = params_.is_frozen(t);
            const Bit bit = frozen ? Bit{0} : hard_decision(decision);
            res.u_hat[t] = bit;
            res.decision_llrs[t] = decision;
            psu.update(bit);
            if (record_trace)
                res.trace.push_back({t, frozen, decision, bit, std::move(reads)});
        }

        res.info_bits.reserve(params_.info_length());
        for (std::size_t i = 0; i < size; ++i)
            if (!params_.is_frozen(i))
                res.info_bits.push_back(res.u_hat[i]);
        return res;
    }

private:
    Llr& at(std::size_t i, unsigned j) {
        return lattice_[static_cast<std::size_t>(j) * params_.block_length() + i];
    }

    // Column n is the channel; everything left of it lives in the lattice.
    Llr in(std::size_t i, unsigned j) const {
        if (j == params_.exponent())
            return channel_[i];
        return lattice_[static_cast<std::size_t>(j) * params_.block_length() + i];
    }

    CodeParams params_;
    std::vector<Llr> lattice_;
    std::vector<Llr> channel_;
};

} // namespace polar
