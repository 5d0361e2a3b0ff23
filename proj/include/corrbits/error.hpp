#pragma once

#include <stdexcept>
#include <string>

namespace corrbits {

// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A measurement direction whose norm deviates from 1 by more than the input tolerance.
struct InvalidDirectionError : Error {
    using Error::Error;
};

// A settings chain with fewer than two settings per side.
struct InvalidChainError : Error {
    using Error::Error;
};

// A sampler or estimator asked to work on zero bits.
struct EmptySampleError : Error {
    using Error::Error;
};

// Mismatched string lengths, or a length not divisible by the block size.
struct DimensionError : Error {
    using Error::Error;
};

// Block size outside [1, kMaxBlockSize].
struct InvalidBlockSizeError : Error {
    using Error::Error;
};

// A weight table with no strictly positive entry.
struct EmptyAlphabetError : Error {
    using Error::Error;
};

// A compressed stream that is not a valid concatenation of codewords.
struct CorruptStreamError : Error {
    using Error::Error;
};

// A Monte Carlo run with too few bits for meaningful rates.
struct SampleTooSmallError : Error {
    using Error::Error;
};

}  // namespace corrbits
