/*
Error types raised by the partial sum units and the decoder.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polar {

// A partial sum was read at a decode time other than its availability time.
class TimingViolation : public std::logic_error {
public:
    TimingViolation(std::size_t row, unsigned col, long long expected, long long actual)
        : std::logic_error("partial sum S_{" + std::to_string(row) + "," +
                           std::to_string(col) + "} read at time " +
                           std::to_string(actual) + ", available only at time " +
                           std::to_string(expected)),
          row_(row), col_(col), expected_(expected), actual_(actual) {}

    std::size_t row() const { return row_; }
    unsigned col() const { return col_; }
    long long expected_time() const { return expected_; }
    long long actual_time() const { return actual_; }

private:
    std::size_t row_;
    unsigned col_;
    long long expected_;
    long long actual_;
};

// The decided prefix is too short to evaluate the requested partial sum.
class AvailabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace polar
