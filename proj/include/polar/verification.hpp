/*
Executable property suite for the generator stream and the partial sum
units. Every check pits an implementation against an independent route to
the same value (dense matrix, sub-block re-encoding, or symbolic index
algebra) and reports the first counterexample on failure.
*/

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polar/bits.hpp"
#include "polar/channel.hpp"
#include "polar/kronecker.hpp"
#include "polar/partial_sum.hpp"
#include "polar/psu.hpp"
#include "polar/row_stream.hpp"

namespace polar {

// Which decided bits feed S_{i,j}, found by running the sub-block transform
// over sets of u-indices instead of bit values: a fully symbolic route that
// shares no arithmetic with tau() or the units.
using DependencySet = std::vector<std::uint64_t>;

inline DependencySet symbolic_dependencies(std::size_t i, unsigned j,
                                           std::size_t block_length) {
    const SubBlock sb = subblock_bounds(i, j);
    if (i >= block_length || sb.last >= block_length)
        throw std::invalid_argument("partial sum index out of range");
    const std::size_t width = sb.last - sb.first + 1;
    const std::size_t words = (block_length + 63) / 64;
    std::vector<DependencySet> masks(width, DependencySet(words, 0));
    for (std::size_t r = 0; r < width; ++r) {
        const std::size_t idx = sb.first + r;
        masks[r][idx / 64] |= std::uint64_t{1} << (idx % 64);
    }
    for (std::size_t h = 1; h < width; h <<= 1)
        for (std::size_t q0 = 0; q0 < width; q0 += 2 * h)
            for (std::size_t q = q0; q < q0 + h; ++q)
                for (std::size_t w = 0; w < words; ++w)
                    masks[q][w] ^= masks[q + h][w];
    return masks[i - sb.first];
}

inline std::size_t highest_dependency(const DependencySet& mask) {
    for (std::size_t w = mask.size(); w-- > 0;)
        if (mask[w])
            return w * 64 + 63 -
                   static_cast<std::size_t>(std::countl_zero(mask[w]));
    throw std::invalid_argument("dependency set is empty");
}

inline Bit symbolic_parity(const DependencySet& mask, const BitVec& u) {
    Bit acc = 0;
    for (std::size_t w = 0; w < mask.size(); ++w) {
        std::uint64_t word = mask[w];
        while (word) {
            const std::size_t idx =
                w * 64 + static_cast<std::size_t>(std::countr_zero(word));
            word &= word - 1;
            acc ^= u[idx] & 1;
        }
    }
    return acc;
}

inline BitVec random_bits(Rng& rng, std::size_t count) {
    BitVec bits(count);
    for (std::size_t i = 0; i < count; ++i)
        bits[i] = rng.bit();
    return bits;
}

// Drives all three units through one decided sequence and compares every
// legal read against the sub-block re-encoding oracle. Returns the first
// disagreement, formatted, or nothing.
inline std::optional<std::string> equivalence_counterexample(unsigned n, const BitVec& u) {
    const std::size_t size = std::size_t{1} << n;
    if (u.size() != size)
        throw std::invalid_argument("decided sequence length does not match the block length");

    MatrixPsu matrix(n);
    RegisterPsu reg(n);
    ShiftRegisterPsu shift(n);
    PartialSumUnit* units[] = {&matrix, &reg, &shift};

    // All legal reads, grouped by the only time they may happen.
    std::vector<std::vector<PartialSumRequest>> schedule(size);
    for (unsigned j = 0; j < n; ++j)
        for (std::size_t i = 0; i < size; ++i)
            if (branch_bit(i, j) == 0)
                schedule[tau(i, j)].push_back({i, j});

    BitVec prefix;
    prefix.reserve(size);
    for (std::size_t t = 0; t < size; ++t) {
        for (PartialSumUnit* unit : units)
            unit->update(u[t]);
        prefix.push_back(u[t]);
        for (const PartialSumRequest& req : schedule[t]) {
            const Bit expected = partial_sum_oracle(prefix, req.row, req.col);
            for (PartialSumUnit* unit : units) {
                const Bit got = unit->read(req);
                if (got != expected) {
                    std::ostringstream msg;
                    msg << "N=" << size << " u=0x" << to_hex(u) << " S_{" << req.row
                        << "," << req.col << "}: expected " << int(expected)
                        << ", " << unit->name() << " unit read " << int(got);
                    return msg.str();
                }
            }
        }
    }
    return std::nullopt;
}

// RegisterPsu holds the whole running product, not just the consumed
// entries; compare every register after every step against a dense
// accumulation of kernel rows.
inline std::optional<std::string> register_state_counterexample(unsigned n, const BitVec& u) {
    const std::size_t size = std::size_t{1} << n;
    if (u.size() != size)
        throw std::invalid_argument("decided sequence length does not match the block length");
    const GeneratorMatrix gen(n);
    RegisterPsu reg(n);
    BitVec product(size, 0);
    for (std::size_t t = 0; t < size; ++t) {
        reg.update(u[t]);
        if (u[t])
            for (std::size_t jj = 0; jj < size; ++jj)
                product[jj] ^= static_cast<Bit>(gen.at(t, jj));
        if (reg.registers() != product) {
            std::ostringstream msg;
            msg << "N=" << size << " u=0x" << to_hex(u) << " t=" << t
                << ": register state 0x" << to_hex(reg.registers())
                << " != running product 0x" << to_hex(product);
            return msg.str();
        }
    }
    return std::nullopt;
}

struct VerificationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;

    bool all_passed() const {
        for (const VerificationCheck& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

namespace detail {

inline void add_check(VerificationReport& report, const std::string& name,
                      std::optional<std::string> failure, std::size_t cases) {
    VerificationCheck check;
    check.name = name;
    if (failure) {
        check.passed = false;
        check.detail = *failure;
    } else {
        check.detail = std::to_string(cases) + " cases";
    }
    report.checks.push_back(std::move(check));
}

} // namespace detail

// Runs every structural check up to block length 2^n_max, using the given
// number of random decided sequences per size where exhaustion is out of
// reach. Exhaustive sweeps are capped internally regardless of n_max.
inline VerificationReport run_verification(unsigned n_max, std::size_t frames,
                                           std::uint64_t seed) {
    if (n_max < 1 || n_max > 10)
        throw std::invalid_argument("verification exponent must be in [1, 10]");
    if (frames < 1)
        throw std::invalid_argument("verification needs at least one random frame per size");

    VerificationReport report;
    std::optional<std::string> failure;
    std::size_t cases = 0;

    // base-case: both register contents and the dense product on the
    // two-bit code, for all four decided sequences, against the oracle.
    failure.reset();
    cases = 0;
    for (unsigned v = 0; v < 4 && !failure; ++v) {
        const BitVec u = {static_cast<Bit>(v & 1), static_cast<Bit>((v >> 1) & 1)};
        const Bit expect0[2] = {u[0], 0};                              // after u_0
        const Bit expect1[2] = {static_cast<Bit>(u[0] ^ u[1]), u[1]};  // after u_1
        RegisterPsu reg(1);
        reg.update(u[0]);
        bool ok = reg.registers()[0] == expect0[0] && reg.registers()[1] == expect0[1];
        ok = ok && reg.read({0, 0}) == partial_sum_oracle({u[0]}, 0, 0);
        reg.update(u[1]);
        ok = ok && reg.registers()[0] == expect1[0] && reg.registers()[1] == expect1[1];
        ok = ok && expect1[0] == partial_sum_oracle(u, 0, 1) &&
             expect1[1] == partial_sum_oracle(u, 1, 1);
        // dense product route
        const GeneratorMatrix gen(1);
        Bit p0[2] = {static_cast<Bit>(u[0] & gen.at(0, 0)), static_cast<Bit>(u[0] & gen.at(0, 1))};
        ok = ok && p0[0] == expect0[0] && p0[1] == expect0[1];
        Bit p1[2] = {static_cast<Bit>(p0[0] ^ (u[1] & gen.at(1, 0))),
                     static_cast<Bit>(p0[1] ^ (u[1] & gen.at(1, 1)))};
        ok = ok && p1[0] == expect1[0] && p1[1] == expect1[1];
        if (!ok)
            failure = "u=" + to_bit_string(u);
        ++cases;
    }
    detail::add_check(report, "base-case", failure, cases);

    // stream-rows / stream-wrap: streamed rows against the dense matrix,
    // then a full second revolution.
    failure.reset();
    cases = 0;
    std::optional<std::string> wrap_failure;
    std::size_t wrap_cases = 0;
    for (unsigned m = 0; m <= n_max && !failure && !wrap_failure; ++m) {
        const GeneratorMatrix gen(m);
        GeneratorRowStream stream(m);
        for (std::size_t t = 0; t < 2 * gen.size(); ++t) {
            const BitVec& row = stream.step();
            const std::size_t want = t % gen.size();
            bool ok = true;
            for (std::size_t jj = 0; jj < gen.size() && ok; ++jj)
                ok = row[jj] == static_cast<Bit>(gen.at(want, jj));
            if (t < gen.size()) {
                ++cases;
                if (!ok) {
                    failure = "m=" + std::to_string(m) + " row " + std::to_string(t);
                    break;
                }
            } else {
                ++wrap_cases;
                if (!ok) {
                    wrap_failure = "m=" + std::to_string(m) + " step " + std::to_string(t) +
                                   " should wrap to row " + std::to_string(want);
                    break;
                }
            }
        }
    }
    detail::add_check(report, "stream-rows", failure, cases);
    detail::add_check(report, "stream-wrap", wrap_failure, wrap_cases);

    // diagonal-column: every streamed row mirrors its own prefix.
    failure.reset();
    cases = 0;
    for (unsigned m = 0; m <= n_max; ++m) {
        if (!diagonal_equals_column_check(m)) {
            failure = "m=" + std::to_string(m);
            break;
        }
        ++cases;
    }
    detail::add_check(report, "diagonal-column", failure, cases);

    // tau-brute-force: the closed-form availability time against the top of
    // the symbolic dependency set, every (i, j), sizes up to 2^min(n_max,8).
    failure.reset();
    cases = 0;
    for (unsigned n = 1; n <= std::min(n_max, 8u) && !failure; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (unsigned j = 0; j < n && !failure; ++j)
            for (std::size_t i = 0; i < size; ++i) {
                const std::size_t brute =
                    highest_dependency(symbolic_dependencies(i, j, size));
                if (tau(i, j) != brute) {
                    std::ostringstream msg;
                    msg << "N=" << size << " S_{" << i << "," << j << "}: tau="
                        << tau(i, j) << " but the last dependency is " << brute;
                    failure = msg.str();
                    break;
                }
                ++cases;
            }
    }
    detail::add_check(report, "tau-brute-force", failure, cases);

    // fixed-register: for every processing element and every row it ever
    // consumes, the age of the sum at read time is the same constant
    // dff_index(x, p), and it fits in half a block of registers.
    failure.reset();
    cases = 0;
    for (unsigned n = 1; n <= n_max && !failure; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (unsigned p = 0; p + 1 <= n && !failure; ++p)
            for (std::size_t x = 0; x < (std::size_t{1} << p) && !failure; ++x) {
                const std::size_t idx = dff_index(x, p);
                if (idx >= size / 2) {
                    failure = "dff index " + std::to_string(idx) + " out of range at N=" +
                              std::to_string(size);
                    break;
                }
                for (std::size_t i : pe_required_sums(x, p, size)) {
                    if (tau(i, p) - i != idx) {
                        std::ostringstream msg;
                        msg << "N=" << size << " PE(" << x << "," << p << ") row " << i
                            << ": age " << (tau(i, p) - i) << " != register " << idx;
                        failure = msg.str();
                        break;
                    }
                    ++cases;
                }
            }
    }
    detail::add_check(report, "fixed-register", failure, cases);

    // psu-exhaustive: all decided sequences on small codes.
    failure.reset();
    cases = 0;
    for (unsigned n = 1; n <= std::min(n_max, 4u) && !failure; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << size) && !failure; ++v) {
            BitVec u(size);
            for (std::size_t l = 0; l < size; ++l)
                u[l] = static_cast<Bit>((v >> l) & 1);
            failure = equivalence_counterexample(n, u);
            ++cases;
        }
    }
    detail::add_check(report, "psu-exhaustive", failure, cases);

    // psu-random: random decided sequences on every larger size.
    failure.reset();
    cases = 0;
    for (unsigned n = 5; n <= n_max && !failure; ++n) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (n + 1)));
        for (std::size_t fr = 0; fr < frames && !failure; ++fr) {
            failure = equivalence_counterexample(n, random_bits(rng, std::size_t{1} << n));
            ++cases;
        }
    }
    detail::add_check(report, "psu-random", failure, cases);

    // register-state: the one-register-per-row unit tracks the full dense
    // product at every step.
    failure.reset();
    cases = 0;
    for (unsigned n = 1; n <= std::min(n_max, 8u) && !failure; ++n) {
        Rng rng(seed ^ (0xbf58476d1ce4e5b9ull * (n + 1)));
        const std::size_t reps = std::min<std::size_t>(frames, 20);
        for (std::size_t fr = 0; fr < reps && !failure; ++fr) {
            failure = register_state_counterexample(n, random_bits(rng, std::size_t{1} << n));
            ++cases;
        }
    }
    detail::add_check(report, "register-state", failure, cases);

    // oracle-symbolic: the two independent oracle routes agree with each
    // other on random sequences.
    failure.reset();
    cases = 0;
    for (unsigned n = 1; n <= std::min(n_max, 8u) && !failure; ++n) {
        const std::size_t size = std::size_t{1} << n;
        Rng rng(seed ^ (0x94d049bb133111ebull * (n + 1)));
        const std::size_t reps = std::min<std::size_t>(frames, 10);
        for (std::size_t fr = 0; fr < reps && !failure; ++fr) {
            const BitVec u = random_bits(rng, size);
            for (unsigned j = 0; j < n && !failure; ++j)
                for (std::size_t i = 0; i < size; ++i) {
                    const Bit via_encode = partial_sum_oracle(u, i, j);
                    const Bit via_masks =
                        symbolic_parity(symbolic_dependencies(i, j, size), u);
                    if (via_encode != via_masks) {
                        std::ostringstream msg;
                        msg << "N=" << size << " u=0x" << to_hex(u) << " S_{" << i << ","
                            << j << "}: re-encode says " << int(via_encode)
                            << ", symbolic parity says " << int(via_masks);
                        failure = msg.str();
                        break;
                    }
                    ++cases;
                }
        }
    }
    detail::add_check(report, "oracle-symbolic", failure, cases);

    // timing-contract: reads one step early, one step late, on rows whose
    // branch bit is 1, and out of range must all throw; the legal read in
    // between must match the oracle.
    failure.reset();
    cases = 0;
    {
        const unsigned n = 3;
        Rng rng(seed ^ 0xd6e8feb86659fd93ull);
        const BitVec u = random_bits(rng, std::size_t{1} << n);
        const PartialSumRequest target{4, 1}; // branch bit 0, available at time 5
        const std::size_t due = tau(target.row, target.col);
        MatrixPsu matrix(n);
        RegisterPsu reg(n);
        ShiftRegisterPsu shift(n);
        PartialSumUnit* units[] = {&matrix, &reg, &shift};
        for (PartialSumUnit* unit : units) {
            std::ostringstream msg;
            msg << unit->name() << " unit: ";
            for (std::size_t t = 0; t <= due + 1; ++t)
                unit->update(u[t]);
            bool ok = true;
            try {
                unit->read(target); // one step late
                msg << "late read not rejected";
                ok = false;
            } catch (const TimingViolation&) {
            }
            unit->reset();
            for (std::size_t t = 0; t < due; ++t)
                unit->update(u[t]);
            try {
                unit->read(target); // one step early
                if (ok)
                    msg << "early read not rejected";
                ok = false;
            } catch (const TimingViolation&) {
            }
            unit->update(u[due]);
            if (ok && unit->read(target) != partial_sum_oracle(u, target.row, target.col)) {
                msg << "on-time read disagrees with the oracle";
                ok = false;
            }
            try {
                unit->read({2, 1}); // branch bit 1: never consumed
                if (ok)
                    msg << "branch-bit-1 read not rejected";
                ok = false;
            } catch (const std::invalid_argument&) {
            }
            try {
                unit->read({std::size_t{1} << n, 0}); // out of range
                if (ok)
                    msg << "out-of-range read not rejected";
                ok = false;
            } catch (const std::invalid_argument&) {
            }
            if (!ok && !failure)
                failure = msg.str();
            cases += 5;
        }
    }
    detail::add_check(report, "timing-contract", failure, cases);

    return report;
}

} // namespace polar
