/*
Binary-input channels with LLR output, and the deterministic random stream
that drives them. The generator avoids std::distributions on purpose: their
output is implementation-defined, and simulations here must reproduce bit
for bit across toolchains from a seed alone.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "polar/bits.hpp"
#include "polar/code_params.hpp"
#include "polar/sc_decoder.hpp"

namespace polar {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform over (0, 1]: 53 random mantissa bits, never zero, so it is
    // always a valid log() argument.
    double uniform() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via the Box-Muller transform.
    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

    Bit bit() { return static_cast<Bit>(eng_() >> 63); }

private:
    std::mt19937_64 eng_;
};

struct ChannelSpec {
    enum class Kind { Bsc, AwgnBpsk };

    Kind kind = Kind::AwgnBpsk;

    // Bsc: crossover probability. AwgnBpsk: Eb/N0 in dB.
    double parameter = 0.0;

    // Code rate K/N; scales the per-bit energy for AwgnBpsk only.
    double rate = 1.0;

    static ChannelSpec bsc(double crossover) {
        ChannelSpec spec;
        spec.kind = Kind::Bsc;
        spec.parameter = crossover;
        return spec;
    }

    static ChannelSpec awgn(double ebn0_db, double code_rate) {
        ChannelSpec spec;
        spec.kind = Kind::AwgnBpsk;
        spec.parameter = ebn0_db;
        spec.rate = code_rate;
        return spec;
    }

    void validate() const {
        if (kind == Kind::Bsc) {
            if (!std::isfinite(parameter) || !(parameter > 0.0) || !(parameter < 0.5))
                throw std::invalid_argument("crossover probability must lie in (0, 0.5)");
        } else {
            if (!std::isfinite(parameter))
                throw std::invalid_argument("Eb/N0 must be finite");
            if (!std::isfinite(rate) || !(rate > 0.0) || rate > 1.0)
                throw std::invalid_argument("code rate must lie in (0, 1]");
        }
    }

    // AwgnBpsk noise standard deviation for a unit-energy constellation.
    double sigma() const {
        return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, parameter / 10.0)));
    }
};

// Sends the codeword and returns channel LLRs, positive meaning "looks like
// zero". Bsc flips each bit with the crossover probability; AwgnBpsk maps
// bit b to 1-2b and adds white Gaussian noise.
inline LlrFrame transmit(const BitVec& x, const ChannelSpec& spec, Rng& rng) {
    spec.validate();
    LlrFrame frame;
    frame.channel.resize(x.size());
    if (spec.kind == ChannelSpec::Kind::Bsc) {
        const double p = spec.parameter;
        const double weight = std::log((1.0 - p) / p);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const Bit y = static_cast<Bit>((x[i] & 1) ^ (rng.uniform() <= p ? 1 : 0));
            frame.channel[i] = (y ? -1.0 : 1.0) * weight;
        }
    } else {
        const double sigma = spec.sigma();
        const double scale = 2.0 / (sigma * sigma);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double sent = (x[i] & 1) ? -1.0 : 1.0;
            frame.channel[i] = scale * (sent + sigma * rng.gaussian());
        }
    }
    return frame;
}

struct ErrorCounts {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
};

// Compares decided bits against the sent ones over the information
// positions only; frozen rows are pinned and never count.
inline ErrorCounts count_errors(const BitVec& decoded, const BitVec& sent,
                                const CodeParams& params) {
    if (decoded.size() != params.block_length() || sent.size() != params.block_length())
        throw std::invalid_argument("count_errors: length does not match the block length");
    ErrorCounts counts;
    for (std::size_t i = 0; i < decoded.size(); ++i)
        if (!params.is_frozen(i) && ((decoded[i] ^ sent[i]) & 1))
            ++counts.bit_errors;
    counts.frame_error = counts.bit_errors != 0;
    return counts;
}

} // namespace polar
