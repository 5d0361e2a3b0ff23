#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "corrbits/bitstring.hpp"
#include "corrbits/error.hpp"
#include "corrbits/huffman.hpp"

namespace corrbits {

// Shannon entropy of a bit with P(0) = p0, in bits. h(0) = h(1) = 0.
inline double binary_entropy(double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw Error("probability must lie in [0, 1], got " + std::to_string(p0));
    double h = 0.0;
    if (p0 > 0.0) h -= p0 * std::log2(p0);
    if (p0 < 1.0) h -= (1.0 - p0) * std::log2(1.0 - p0);
    return h;
}

// Fraction of zeros in the string.
inline double estimate_bit_probability(const BitString& z) {
    if (z.empty()) throw EmptySampleError("cannot estimate bit probability of an empty string");
    return static_cast<double>(z.count_zeros()) / static_cast<double>(z.size());
}

enum class CompressorKind {
    xor_block_huffman,  // blockwise Huffman payload bits
    raw,                // identity baseline: C(s) = |s|
};

struct CompressorSpec {
    CompressorKind kind = CompressorKind::xor_block_huffman;
    unsigned block_size_k = 1;
};

// How NCD and the Zurek approximation account the two local strings.
enum class LocalSizeMode {
    assumed_incompressible,  // C(x) = C(y) = n
    measured,                // C(x), C(y) through the compressor itself
};

// Compressed size of a single string in bits. The huffman kind charges the
// codeword payload only; the table travels out of band.
inline std::uint64_t compressed_size(const BitString& s, const CompressorSpec& spec) {
    if (spec.kind == CompressorKind::raw) return s.size();
    return encode(s, spec.block_size_k).compressed.size();
}

// Joint size of the pair through the xor scheme: code z = x xor y blockwise
// and keep one original verbatim so the pair is recoverable.
inline std::uint64_t joint_compressed_size_xor(const BitString& x, const BitString& y,
                                               unsigned k) {
    if (x.size() != y.size())
        throw DimensionError("joint compression needs strings of equal length, got " +
                             std::to_string(x.size()) + " and " + std::to_string(y.size()));
    const BitString z = xor_strings(x, y);
    return compressed_size(z, {CompressorKind::xor_block_huffman, k}) + x.size();
}

struct NcdValue {
    double value = 0.0;
    std::uint64_t c_x = 0;
    std::uint64_t c_y = 0;
    std::uint64_t c_xy = 0;
};

// Normalized compression distance
//   NCD(x, y) = (C(x,y) - min(C(x), C(y))) / max(C(x), C(y)),
// with the joint size from the xor scheme. In assumed_incompressible mode the
// locals count as n bits each and the value collapses to the xor compression
// rate n~/n, so ncd(x, x) = 1/k exactly.
inline NcdValue ncd(const BitString& x, const BitString& y, const CompressorSpec& spec,
                    LocalSizeMode mode = LocalSizeMode::assumed_incompressible) {
    if (x.size() != y.size())
        throw DimensionError("ncd needs strings of equal length, got " +
                             std::to_string(x.size()) + " and " + std::to_string(y.size()));
    if (x.empty()) throw EmptySampleError("ncd of empty strings is undefined");
    NcdValue out;
    if (mode == LocalSizeMode::assumed_incompressible) {
        out.c_x = x.size();
        out.c_y = y.size();
    } else {
        out.c_x = compressed_size(x, spec);
        out.c_y = compressed_size(y, spec);
    }
    out.c_xy = spec.kind == CompressorKind::raw
                   ? 2 * x.size()
                   : joint_compressed_size_xor(x, y, spec.block_size_k);
    const std::uint64_t c_min = std::min(out.c_x, out.c_y);
    const std::uint64_t c_max = std::max(out.c_x, out.c_y);
    out.value = static_cast<double>(out.c_xy - c_min) / static_cast<double>(c_max);
    return out;
}

// Information-distance estimate 2 C(x,y) - C(x) - C(y), the compressor
// stand-in for the complexity-based distance. Same size conventions as ncd.
inline double zurek_distance_approx(const BitString& x, const BitString& y,
                                    const CompressorSpec& spec,
                                    LocalSizeMode mode = LocalSizeMode::assumed_incompressible) {
    const NcdValue sizes = ncd(x, y, spec, mode);
    return 2.0 * static_cast<double>(sizes.c_xy) - static_cast<double>(sizes.c_x) -
           static_cast<double>(sizes.c_y);
}

struct UniformityReport {
    unsigned block_size_k = 0;
    std::uint64_t window = 0;
    std::vector<double> window_rates;  // one entry per complete disjoint window
    double mean_rate = 0.0;
    double max_deviation = 0.0;  // max |window rate - mean rate|
};

// Compressibility probe for the uniform-complexity assumption: rates over
// disjoint windows should agree; a drift or a structured segment shows up as
// a large deviation from the mean.
inline UniformityReport uniformity_check(const BitString& s, std::uint64_t window, unsigned k) {
    detail::check_block_size(k);
    if (window == 0 || window % k != 0)
        throw DimensionError("window must be a positive multiple of the block size");
    if (window > s.size())
        throw DimensionError("window " + std::to_string(window) +
                             " exceeds string length " + std::to_string(s.size()));
    UniformityReport report;
    report.block_size_k = k;
    report.window = window;
    const std::uint64_t n_windows = s.size() / window;
    report.window_rates.reserve(n_windows);
    for (std::uint64_t w = 0; w < n_windows; ++w) {
        const BitString part = s.slice(w * window, window);
        report.window_rates.push_back(empirical_rate(part, k));
        report.mean_rate += report.window_rates.back();
    }
    report.mean_rate /= static_cast<double>(n_windows);
    for (double rate : report.window_rates)
        report.max_deviation = std::max(report.max_deviation, std::abs(rate - report.mean_rate));
    return report;
}

}  // namespace corrbits
