/*
The deterministic random stream, both channels, and error counting.
*/

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polar/polar.hpp"

using namespace polar;

TEST_CASE("random stream is reproducible from the seed alone", "[channel]") {
    Rng a(42), b(42), c(43);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t va = a.next_u64();
        all_equal = all_equal && va == b.next_u64();
        any_diff = any_diff || va != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform samples live in (0, 1] and center on one half", "[channel]") {
    Rng rng(7);
    double sum = 0;
    const int reps = 200000;
    for (int i = 0; i < reps; ++i) {
        const double v = rng.uniform();
        if (!(v > 0.0) || !(v <= 1.0))
            FAIL("sample " << v << " escapes (0, 1]");
        sum += v;
    }
    CHECK(sum / reps == Catch::Approx(0.5).margin(0.005));
}

TEST_CASE("gaussian samples have the right first two moments", "[channel]") {
    Rng rng(11);
    double sum = 0, sum2 = 0;
    const int reps = 200000;
    for (int i = 0; i < reps; ++i) {
        const double v = rng.gaussian();
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / reps;
    const double var = sum2 / reps - mean * mean;
    CHECK(mean == Catch::Approx(0.0).margin(0.02));
    CHECK(var == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("coin flips are balanced", "[channel]") {
    Rng rng(13);
    int ones = 0;
    const int reps = 100000;
    for (int i = 0; i < reps; ++i)
        ones += rng.bit();
    CHECK(std::abs(ones - reps / 2) < 700); // ~4.4 sigma
}

TEST_CASE("crossover channel flips at the configured rate", "[channel]") {
    const double p = 0.1;
    const ChannelSpec spec = ChannelSpec::bsc(p);
    Rng rng(99);
    const std::size_t bits = 131072;
    const BitVec x(bits, 0);
    const LlrFrame frame = transmit(x, spec, rng);
    const double weight = std::log((1.0 - p) / p);
    std::size_t flips = 0;
    for (double v : frame.channel) {
        if (v < 0)
            ++flips; // a flip of a zero bit looks like a one
        if (std::abs(std::abs(v) - weight) > 1e-12)
            FAIL("LLR magnitude " << v << " is not +-log((1-p)/p)");
    }
    const double rate = static_cast<double>(flips) / static_cast<double>(bits);
    CHECK(rate == Catch::Approx(p).margin(0.005));
}

TEST_CASE("crossover channel keeps the sent bit in the LLR sign", "[channel]") {
    // With p tiny, flips are essentially absent: sign must follow the bit.
    const ChannelSpec spec = ChannelSpec::bsc(1e-9);
    Rng rng(5);
    const BitVec x = {0, 1, 1, 0, 1, 0, 0, 1};
    const LlrFrame frame = transmit(x, spec, rng);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK((frame.channel[i] > 0) == (x[i] == 0));
}

TEST_CASE("white noise channel obeys the noise budget", "[channel]") {
    const ChannelSpec spec = ChannelSpec::awgn(1.0, 0.5);
    // sigma^2 = 1 / (2 * rate * 10^(EbN0/10))
    CHECK(spec.sigma() == Catch::Approx(std::sqrt(1.0 / (2.0 * 0.5 * std::pow(10.0, 0.1)))));

    Rng rng(21);
    const std::size_t bits = 65536;
    const BitVec x(bits, 0);
    const LlrFrame frame = transmit(x, spec, rng);
    const double scale = 2.0 / (spec.sigma() * spec.sigma());
    double sum = 0;
    for (double v : frame.channel)
        sum += v;
    // Zero bits map to +1, so the LLR mean is the scale itself.
    CHECK(sum / bits == Catch::Approx(scale).epsilon(0.02));
}

TEST_CASE("white noise channel at high signal strength is effectively clean", "[channel]") {
    const ChannelSpec spec = ChannelSpec::awgn(40.0, 0.5);
    Rng rng(3);
    const BitVec x = {1, 0, 0, 1, 1, 1, 0, 0};
    const LlrFrame frame = transmit(x, spec, rng);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK((frame.channel[i] < 0) == (x[i] == 1));
}

TEST_CASE("channel validation", "[channel]") {
    CHECK_THROWS_AS(ChannelSpec::bsc(0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec::bsc(0.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec::bsc(-0.1).validate(), std::invalid_argument);
    CHECK_NOTHROW(ChannelSpec::bsc(0.25).validate());
    CHECK_THROWS_AS(ChannelSpec::awgn(1.0, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec::awgn(1.0, 1.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec::awgn(std::nan(""), 0.5).validate(), std::invalid_argument);
    CHECK_NOTHROW(ChannelSpec::awgn(-3.0, 1.0).validate());
}

TEST_CASE("transmission is reproducible from the seed", "[channel]") {
    const ChannelSpec spec = ChannelSpec::awgn(2.0, 0.5);
    const BitVec x = {1, 0, 1, 1, 0, 0, 1, 0};
    Rng a(1001), b(1001);
    CHECK(transmit(x, spec, a).channel == transmit(x, spec, b).channel);
}

TEST_CASE("error counting skips frozen rows", "[channel]") {
    const CodeParams params(2, {0, 1});
    const BitVec sent = {0, 0, 1, 0};
    const BitVec frozen_diff = {1, 1, 1, 0}; // differs only on frozen rows
    const ErrorCounts none = count_errors(frozen_diff, sent, params);
    CHECK(none.bit_errors == 0);
    CHECK_FALSE(none.frame_error);

    const BitVec info_diff = {0, 0, 0, 1}; // differs on both information rows
    const ErrorCounts two = count_errors(info_diff, sent, params);
    CHECK(two.bit_errors == 2);
    CHECK(two.frame_error);

    CHECK_THROWS_AS(count_errors({0, 0}, sent, params), std::invalid_argument);
}
