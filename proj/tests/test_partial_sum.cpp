/*
Sub-block bounds, availability times, processing element indexing, and the
two independent partial sum oracles.
*/

#include <catch2/catch_amalgamated.hpp>

#include "polar/polar.hpp"

using namespace polar;

TEST_CASE("branch bits", "[psum]") {
    CHECK(branch_bit(2, 0) == 0);
    CHECK(branch_bit(2, 1) == 1);
    CHECK(branch_bit(5, 0) == 1);
    CHECK(branch_bit(5, 1) == 0);
    CHECK(branch_bit(5, 2) == 1);
}

TEST_CASE("sub-block bounds pinned examples", "[psum]") {
    CHECK(subblock_bounds(5, 0).first == 5);
    CHECK(subblock_bounds(5, 0).last == 5);
    CHECK(subblock_bounds(5, 1).first == 4);
    CHECK(subblock_bounds(5, 1).last == 5);
    CHECK(subblock_bounds(2, 1).first == 2);
    CHECK(subblock_bounds(2, 1).last == 3);
    CHECK(subblock_bounds(5, 2).first == 4);
    CHECK(subblock_bounds(5, 2).last == 7);
}

TEST_CASE("availability time pinned examples", "[psum]") {
    CHECK(tau(2, 1) == 3);
    CHECK(tau(5, 2) == 7);
    CHECK(tau(0, 0) == 0);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(tau(i, 0) == i);
}

TEST_CASE("availability time closes its sub-block and never reaches past it", "[psum]") {
    for (unsigned n = 1; n <= 8; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (unsigned j = 0; j < n; ++j)
            for (std::size_t i = 0; i < size; ++i) {
                const SubBlock sb = subblock_bounds(i, j);
                CHECK(tau(i, j) == sb.last);
                CHECK(sb.first <= i);
                CHECK(i <= sb.last);
                CHECK(sb.last < size);
                CHECK(sb.last - sb.first + 1 == std::size_t{1} << j);
            }
    }
}

TEST_CASE("availability time equals the last symbolic dependency", "[psum]") {
    for (unsigned n = 1; n <= 6; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (unsigned j = 0; j < n; ++j)
            for (std::size_t i = 0; i < size; ++i) {
                const std::size_t brute =
                    highest_dependency(symbolic_dependencies(i, j, size));
                if (tau(i, j) != brute)
                    FAIL("S_{" << i << "," << j << "} at N=" << size << ": tau "
                               << tau(i, j) << " vs brute force " << brute);
            }
    }
    SUCCEED();
}

TEST_CASE("partial sum oracle pinned values", "[psum]") {
    const BitVec u = {1, 0, 1, 1};
    CHECK(partial_sum_oracle(u, 0, 0) == 1);
    CHECK(partial_sum_oracle(u, 1, 0) == 0);
    CHECK(partial_sum_oracle(u, 0, 1) == 1); // u0 ^ u1
    CHECK(partial_sum_oracle(u, 1, 1) == 0); // u1
    CHECK(partial_sum_oracle(u, 2, 1) == 0); // u2 ^ u3
    CHECK(partial_sum_oracle(u, 0, 2) == 1); // u0 ^ u1 ^ u2 ^ u3
    CHECK(partial_sum_oracle(u, 1, 2) == 1); // u1 ^ u3
}

TEST_CASE("oracle demands a long enough prefix", "[psum]") {
    const BitVec prefix = {1, 0, 1};
    CHECK_THROWS_AS(partial_sum_oracle(prefix, 2, 1), AvailabilityError);
    CHECK_THROWS_AS(partial_sum_oracle(prefix, 0, 2), AvailabilityError);
    CHECK_NOTHROW(partial_sum_oracle(prefix, 2, 0));
    CHECK_NOTHROW(partial_sum_oracle(prefix, 0, 1));
}

TEST_CASE("oracle agrees with symbolic parity", "[psum]") {
    Rng rng(5150);
    for (unsigned n = 1; n <= 7; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (int rep = 0; rep < 5; ++rep) {
            const BitVec u = random_bits(rng, size);
            for (unsigned j = 0; j < n; ++j)
                for (std::size_t i = 0; i < size; ++i)
                    if (partial_sum_oracle(u, i, j) !=
                        symbolic_parity(symbolic_dependencies(i, j, size), u))
                        FAIL("routes disagree at S_{" << i << "," << j << "} N=" << size);
        }
    }
    SUCCEED();
}

TEST_CASE("symbolic dependencies pinned sets", "[psum]") {
    // S_{0,1} = u0 ^ u1 and S_{1,1} = u1 on any code of at least 4 rows.
    const DependencySet d01 = symbolic_dependencies(0, 1, 8);
    CHECK(d01 == DependencySet{0x3});
    const DependencySet d11 = symbolic_dependencies(1, 1, 8);
    CHECK(d11 == DependencySet{0x2});
    // S_{4,2} on 8 rows depends on u4..u7.
    const DependencySet d42 = symbolic_dependencies(4, 2, 8);
    CHECK(d42 == DependencySet{0xf0});
    CHECK(highest_dependency(d42) == 7);
}

TEST_CASE("processing element row lists", "[psum]") {
    CHECK(pe_required_sums(0, 0, 8) == std::vector<std::size_t>{0, 2, 4, 6});
    CHECK(pe_required_sums(1, 1, 8) == std::vector<std::size_t>{1, 5});
    CHECK(pe_required_sums(0, 2, 8) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(pe_required_sums(2, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(pe_required_sums(0, 3, 8), std::invalid_argument);
    CHECK_THROWS_AS(pe_required_sums(0, 0, 6), std::invalid_argument);
}

TEST_CASE("every row a processing element consumes has branch bit 0", "[psum]") {
    for (unsigned n = 1; n <= 8; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (unsigned p = 0; p + 1 <= n; ++p)
            for (std::size_t x = 0; x < (std::size_t{1} << p); ++x)
                for (std::size_t i : pe_required_sums(x, p, size))
                    CHECK(branch_bit(i, p) == 0);
    }
}

TEST_CASE("fixed register indices", "[psum]") {
    CHECK(dff_index(0, 0) == 0);
    CHECK(dff_index(0, 1) == 1);
    CHECK(dff_index(1, 1) == 0);
    CHECK(dff_index(0, 3) == 7);
    CHECK_THROWS_AS(dff_index(2, 1), std::invalid_argument);
}

TEST_CASE("the sum a processing element reads always sits at the same age", "[psum]") {
    for (unsigned n = 1; n <= 9; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (unsigned p = 0; p + 1 <= n; ++p)
            for (std::size_t x = 0; x < (std::size_t{1} << p); ++x) {
                const std::size_t idx = dff_index(x, p);
                CHECK(idx < size / 2);
                for (std::size_t i : pe_required_sums(x, p, size))
                    if (tau(i, p) - i != idx)
                        FAIL("PE(" << x << "," << p << ") row " << i << " at N=" << size);
            }
    }
    SUCCEED();
}
