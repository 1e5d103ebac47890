/*
The lattice decoder against an independent recursive implementation, exact
recovery on clean frames, the decision rules, and the trace.
*/

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <utility>

#include "polar/polar.hpp"

using namespace polar;

namespace {

// Reference decoder: the textbook half-splitting recursion. No lattice, no
// partial sum unit, no schedule; shares only llr_f/llr_g/hard_decision with
// the implementation under test.
std::pair<BitVec, BitVec> ref_sc(const std::vector<Llr>& y, const CodeParams& params,
                                 std::size_t base) {
    if (y.size() == 1) {
        const Bit u = params.is_frozen(base) ? Bit{0} : hard_decision(y[0]);
        return {{u}, {u}};
    }
    const std::size_t h = y.size() / 2;
    std::vector<Llr> upper(h);
    for (std::size_t i = 0; i < h; ++i)
        upper[i] = llr_f(y[i], y[i + h]);
    auto [u1, x1] = ref_sc(upper, params, base);

    std::vector<Llr> lower(h);
    for (std::size_t i = 0; i < h; ++i)
        lower[i] = llr_g(y[i], y[i + h], x1[i]);
    auto [u2, x2] = ref_sc(lower, params, base + h);

    BitVec u = u1;
    u.insert(u.end(), u2.begin(), u2.end());
    BitVec x(y.size());
    for (std::size_t i = 0; i < h; ++i) {
        x[i] = x1[i] ^ x2[i];
        x[i + h] = x2[i];
    }
    return {u, x};
}

LlrFrame random_frame(Rng& rng, std::size_t size) {
    LlrFrame frame;
    frame.channel.resize(size);
    for (Llr& v : frame.channel)
        v = 3.0 * rng.gaussian();
    return frame;
}

LlrFrame clean_frame(const BitVec& x, double magnitude = 4.0) {
    LlrFrame frame;
    frame.channel.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        frame.channel[i] = x[i] ? -magnitude : magnitude;
    return frame;
}

} // namespace

TEST_CASE("node updates and the decision rule", "[decoder]") {
    CHECK(llr_f(3.0, -2.0) == -2.0);
    CHECK(llr_f(-3.0, -2.0) == 2.0);
    CHECK(llr_f(0.5, 4.0) == 0.5);
    CHECK(llr_f(0.0, -7.0) == 0.0); // zero counts as positive
    CHECK(llr_g(2.0, 3.0, 0) == 5.0);
    CHECK(llr_g(2.0, 3.0, 1) == 1.0);
    CHECK(hard_decision(1e-300) == 0);
    CHECK(hard_decision(0.0) == 0);
    CHECK(hard_decision(-0.0) == 0);
    CHECK(hard_decision(-1e-300) == 1);
}

TEST_CASE("decoder matches the recursive reference on random frames", "[decoder]") {
    Rng rng(1234);
    for (unsigned n = 1; n <= 8; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (int rep = 0; rep < 10; ++rep) {
            // random frozen mask, biased toward half the rows
            std::vector<std::size_t> frozen;
            for (std::size_t i = 0; i < size; ++i)
                if (rng.bit())
                    frozen.push_back(i);
            const CodeParams params(n, frozen);
            ScDecoder decoder(params);
            const LlrFrame frame = random_frame(rng, size);
            const auto [ref_u, ref_x] = ref_sc(frame.channel, params, 0);
            for (PsuModel model :
                 {PsuModel::Matrix, PsuModel::Register, PsuModel::ShiftRegister}) {
                const auto psu = make_psu(model, n);
                const DecodeResult res = decoder.decode(frame, *psu);
                if (res.u_hat != ref_u)
                    FAIL("N=" << size << " " << psu_model_name(model)
                              << " unit disagrees with the reference");
                // The reference also returns the re-encoded word; tie them.
                if (encode(res.u_hat, params) != ref_x)
                    FAIL("re-encoded word mismatch at N=" << size);
            }
        }
    }
    SUCCEED();
}

TEST_CASE("clean frames decode back to the message", "[decoder]") {
    Rng rng(88);
    const CodeParams params = make_code(8, 128);
    ScDecoder decoder(params);
    ShiftRegisterPsu psu(8);
    for (int rep = 0; rep < 20; ++rep) {
        BitVec u(params.block_length(), 0);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!params.is_frozen(i))
                u[i] = rng.bit();
        const DecodeResult res = decoder.decode(clean_frame(encode(u, params)), psu);
        if (res.u_hat != u)
            FAIL("clean frame " << rep << " not recovered");
        CHECK(res.info_bits.size() == params.info_length());
    }
    SUCCEED();
}

TEST_CASE("all messages of a small code survive a clean round trip", "[decoder]") {
    const CodeParams params(3, {});
    ScDecoder decoder(params);
    RegisterPsu psu(3);
    for (std::uint64_t v = 0; v < 256; ++v) {
        BitVec u(8);
        for (std::size_t l = 0; l < 8; ++l)
            u[l] = static_cast<Bit>((v >> l) & 1);
        if (decoder.decode(clean_frame(encode(u, params)), psu).u_hat != u)
            FAIL("message " << v);
    }
    SUCCEED();
}

TEST_CASE("frozen rows are pinned to zero", "[decoder]") {
    const CodeParams params(1, {0});
    ScDecoder decoder(params);
    MatrixPsu psu(1);
    LlrFrame frame;
    frame.channel = {-5.0, -5.0};
    const DecodeResult res = decoder.decode(frame, psu);
    CHECK(res.u_hat[0] == 0);
    // g(-5, -5, 0) = -10, so the information row decides 1.
    CHECK(res.u_hat[1] == 1);
    CHECK(res.decision_llrs[1] == -10.0);
    CHECK(res.info_bits == BitVec{1});
}

TEST_CASE("all-zero channel decides all zeros", "[decoder]") {
    const CodeParams params(3, {});
    ScDecoder decoder(params);
    ShiftRegisterPsu psu(3);
    LlrFrame frame;
    frame.channel.assign(8, 0.0);
    const DecodeResult res = decoder.decode(frame, psu);
    CHECK(res.u_hat == BitVec(8, 0));
}

TEST_CASE("identical results across partial sum units on noisy frames", "[decoder]") {
    Rng rng(5678);
    const CodeParams params = make_code(7, 64);
    ScDecoder decoder(params);
    MatrixPsu matrix(7);
    RegisterPsu reg(7);
    ShiftRegisterPsu shift(7);
    for (int rep = 0; rep < 10; ++rep) {
        const LlrFrame frame = random_frame(rng, params.block_length());
        const DecodeResult a = decoder.decode(frame, matrix);
        const DecodeResult b = decoder.decode(frame, reg);
        const DecodeResult c = decoder.decode(frame, shift);
        CHECK(a.u_hat == b.u_hat);
        CHECK(b.u_hat == c.u_hat);
        CHECK(a.decision_llrs == b.decision_llrs);
        CHECK(b.decision_llrs == c.decision_llrs);
        CHECK(a.info_bits == c.info_bits);
    }
}

TEST_CASE("decode validations", "[decoder]") {
    const CodeParams params(2, {0});
    ScDecoder decoder(params);
    MatrixPsu psu(2);
    LlrFrame bad_len;
    bad_len.channel = {1.0, 2.0};
    CHECK_THROWS_AS(decoder.decode(bad_len, psu), std::invalid_argument);

    LlrFrame bad_val;
    bad_val.channel = {1.0, 2.0, std::nan(""), 4.0};
    CHECK_THROWS_AS(decoder.decode(bad_val, psu), std::invalid_argument);

    MatrixPsu wrong_size(3);
    LlrFrame ok;
    ok.channel = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(decoder.decode(ok, wrong_size), std::invalid_argument);
}

TEST_CASE("decode trace records every step and read", "[decoder]") {
    const CodeParams params(2, {0});
    ScDecoder decoder(params);
    ShiftRegisterPsu psu(2);
    LlrFrame frame;
    frame.channel = {1.5, -2.0, 0.75, 3.0};
    const DecodeResult res = decoder.decode(frame, psu, true);
    REQUIRE(res.trace.size() == 4);
    CHECK(res.trace[0].reads.empty());
    REQUIRE(res.trace[1].reads.size() == 1);
    CHECK(res.trace[1].reads[0].row == 0);
    CHECK(res.trace[1].reads[0].col == 0);
    REQUIRE(res.trace[2].reads.size() == 2);
    CHECK(res.trace[2].reads[0].row == 0);
    CHECK(res.trace[2].reads[0].col == 1);
    CHECK(res.trace[2].reads[1].row == 1);
    CHECK(res.trace[2].reads[1].col == 1);
    REQUIRE(res.trace[3].reads.size() == 1);
    CHECK(res.trace[3].reads[0].row == 2);
    CHECK(res.trace[3].reads[0].col == 0);
    CHECK(res.trace[0].frozen);
    for (std::size_t t = 0; t < 4; ++t) {
        CHECK(res.trace[t].t == t);
        CHECK(res.trace[t].bit == res.u_hat[t]);
        CHECK(res.trace[t].decision_llr == res.decision_llrs[t]);
    }
    // Without the flag the trace stays empty.
    CHECK(decoder.decode(frame, psu).trace.empty());
}

TEST_CASE("decoder and unit are reusable across frames", "[decoder]") {
    Rng rng(4242);
    const CodeParams params = make_code(5, 16);
    ScDecoder decoder(params);
    ShiftRegisterPsu psu(5);
    const LlrFrame a = random_frame(rng, 32);
    const LlrFrame b = random_frame(rng, 32);
    const BitVec first = decoder.decode(a, psu).u_hat;
    decoder.decode(b, psu);
    CHECK(decoder.decode(a, psu).u_hat == first);
}
