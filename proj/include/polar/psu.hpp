/*
Partial sum units: three state machines that absorb decided bits one per
step and serve partial sum reads under a strict availability-time contract.
A read of S_{i,j} is legal only while the unit time equals tau(i, j) and
only for rows with branch bit 0 in column j; anything else throws.

MatrixPsu keeps the decided prefix and evaluates the running product with
the dense kernel power on every read. RegisterPsu keeps one register per
graph row and folds each decided bit in with the matching streamed row of
coefficients. ShiftRegisterPsu keeps only half a block of registers through
which the sums move one position per decided bit, so every consumer reads
from one fixed register and the streamed coefficients come from a cyclic
half-width generator.
*/

#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include "polar/bits.hpp"
#include "polar/errors.hpp"
#include "polar/kronecker.hpp"
#include "polar/partial_sum.hpp"
#include "polar/row_stream.hpp"

namespace polar {

class PartialSumUnit {
public:
    virtual ~PartialSumUnit() = default;

    virtual void reset() = 0;

    // Absorbs the next decided bit and advances the unit time by one.
    virtual void update(Bit decided_bit) = 0;

    // Serves S_{req.row, req.col}; legal only at time tau(row, col).
    virtual Bit read(const PartialSumRequest& req) const = 0;

    virtual const char* name() const = 0;

    // Index of the last absorbed bit; -1 after reset.
    long long time() const { return t_; }
    unsigned exponent() const { return n_; }
    std::size_t block_length() const { return size_; }

protected:
    explicit PartialSumUnit(unsigned n)
        : n_(n), size_(std::size_t{1} << n) {
        if (n < 1 || n > 16)
            throw std::invalid_argument("partial sum unit exponent must be in [1, 16]");
    }

    void advance() {
        if (t_ + 1 >= static_cast<long long>(size_))
            throw std::logic_error("partial sum unit updated past the end of the frame");
        ++t_;
    }

    void rewind() { t_ = -1; }

    void check_read(const PartialSumRequest& req) const {
        if (req.row >= size_ || req.col >= n_)
            throw std::invalid_argument("partial sum request out of range");
        if (branch_bit(req.row, req.col) != 0)
            throw std::invalid_argument("partial sum S_{" + std::to_string(req.row) + "," +
                                        std::to_string(req.col) +
                                        "} is never consumed: branch bit is 1");
        const long long expected = static_cast<long long>(tau(req.row, req.col));
        if (t_ != expected)
            throw TimingViolation(req.row, req.col, expected, t_);
    }

private:
    unsigned n_;
    std::size_t size_;
    long long t_ = -1;
};

// Reference unit: the decided prefix times the dense kernel power, with the
// product column recomputed on demand.
class MatrixPsu : public PartialSumUnit {
public:
    explicit MatrixPsu(unsigned n)
        : PartialSumUnit(n), gen_(n), decided_(block_length(), 0) {}

    void reset() override {
        rewind();
        std::fill(decided_.begin(), decided_.end(), Bit{0});
    }

    void update(Bit decided_bit) override {
        advance();
        decided_[static_cast<std::size_t>(time())] = decided_bit & 1;
    }

    Bit read(const PartialSumRequest& req) const override {
        check_read(req);
        Bit acc = 0;
        for (long long l = 0; l <= time(); ++l)
            acc ^= decided_[static_cast<std::size_t>(l)] &
                   static_cast<Bit>(gen_.at(static_cast<std::size_t>(l), req.row));
        return acc;
    }

    const char* name() const override { return "matrix"; }

private:
    GeneratorMatrix gen_;
    BitVec decided_;
};

// One register per row, updated in place: register i picks up u_t exactly
// when row t of the streamed kernel power has a 1 in column i.
class RegisterPsu : public PartialSumUnit {
public:
    explicit RegisterPsu(unsigned n)
        : PartialSumUnit(n), stream_(n), regs_(block_length(), 0) {}

    void reset() override {
        rewind();
        stream_.reset();
        std::fill(regs_.begin(), regs_.end(), Bit{0});
    }

    void update(Bit decided_bit) override {
        advance();
        const BitVec& row = stream_.step();
        if (decided_bit & 1)
            for (std::size_t j = 0; j < regs_.size(); ++j)
                regs_[j] ^= row[j];
    }

    Bit read(const PartialSumRequest& req) const override {
        check_read(req);
        return regs_[req.row];
    }

    const char* name() const override { return "register"; }

    const BitVec& registers() const { return regs_; }

private:
    GeneratorRowStream stream_;
    BitVec regs_;
};

// Half a block of registers through which the sums shift one slot per
// decided bit. Register d combines with coefficient cell d of the streamed
// row; the half-width cyclic stream suffices because every row mirrors its
// own prefix (cell t - d equals cell d) and rows repeat with period 2^m.
// Whichever row i a processing element consumes, the sum sits in the fixed
// register dff_index(x, p) when the read is due.
class ShiftRegisterPsu : public PartialSumUnit {
public:
    explicit ShiftRegisterPsu(unsigned n)
        : PartialSumUnit(n), stream_(n - 1), regs_(block_length() / 2, 0) {}

    void reset() override {
        rewind();
        stream_.reset();
        std::fill(regs_.begin(), regs_.end(), Bit{0});
    }

    void update(Bit decided_bit) override {
        advance();
        const Bit u = decided_bit & 1;
        const BitVec& row = stream_.step();
        for (std::size_t d = regs_.size() - 1; d > 0; --d)
            regs_[d] = regs_[d - 1] ^ (u & row[d]);
        regs_[0] = u;
    }

    Bit read(const PartialSumRequest& req) const override {
        check_read(req);
        const std::size_t x = req.row & ((std::size_t{1} << req.col) - 1);
        return regs_[dff_index(x, req.col)];
    }

    const char* name() const override { return "shift"; }

    const BitVec& registers() const { return regs_; }

private:
    GeneratorRowStream stream_;
    BitVec regs_;
};

enum class PsuModel { Matrix, Register, ShiftRegister };

inline std::unique_ptr<PartialSumUnit> make_psu(PsuModel model, unsigned n) {
    switch (model) {
        case PsuModel::Matrix: return std::make_unique<MatrixPsu>(n);
        case PsuModel::Register: return std::make_unique<RegisterPsu>(n);
        case PsuModel::ShiftRegister: return std::make_unique<ShiftRegisterPsu>(n);
    }
    throw std::invalid_argument("unknown partial sum unit model");
}

inline PsuModel parse_psu_model(const std::string& text) {
    if (text == "matrix") return PsuModel::Matrix;
    if (text == "register") return PsuModel::Register;
    if (text == "shift") return PsuModel::ShiftRegister;
    throw std::invalid_argument("unknown partial sum unit model: " + text);
}

inline const char* psu_model_name(PsuModel model) {
    switch (model) {
        case PsuModel::Matrix: return "matrix";
        case PsuModel::Register: return "register";
        case PsuModel::ShiftRegister: return "shift";
    }
    return "?";
}

// Two-block split of the running product for a code of size 2N built from
// two size-N halves. While the first half is still being decided, the
// product is (V(t) * kappa^(x)n, 0); afterwards the left half accumulates
// the second-half bits as (V xor W(t)) * kappa^(x)n and the right half is
// W(t) * kappa^(x)n. The left side below accumulates dense matrix rows one
// decided bit at a time; the right side re-encodes the halves from scratch,
// so the two routes are independent.
inline bool decomposition_identity_check(unsigned n, const BitVec& u) {
    if (n > 9)
        throw std::invalid_argument("decomposition check limited to exponent 9");
    const std::size_t half = std::size_t{1} << n;
    const std::size_t total = 2 * half;
    if (u.size() != total)
        throw std::invalid_argument("decomposition check needs 2^(n+1) decided bits");

    const GeneratorMatrix full = kronecker_power(n + 1);
    BitVec product(total, 0);
    for (std::size_t t = 0; t < total; ++t) {
        if (u[t])
            for (std::size_t j = 0; j < total; ++j)
                product[j] ^= static_cast<Bit>(full.at(t, j));

        BitVec expect(total, 0);
        if (t < half) {
            BitVec v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(t + 1));
            v.resize(half, 0);
            polar_transform(v);
            for (std::size_t j = 0; j < half; ++j)
                expect[j] = v[j];
        } else {
            BitVec v(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(half));
            BitVec w(u.begin() + static_cast<std::ptrdiff_t>(half),
                     u.begin() + static_cast<std::ptrdiff_t>(t + 1));
            w.resize(half, 0);
            BitVec vw = v;
            for (std::size_t j = 0; j < half; ++j)
                vw[j] ^= w[j];
            polar_transform(vw);
            polar_transform(w);
            for (std::size_t j = 0; j < half; ++j) {
                expect[j] = vw[j];
                expect[half + j] = w[j];
            }
        }
        if (product != expect)
            return false;
    }
    return true;
}

} // namespace polar
