#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "corrbits/bitstring.hpp"
#include "corrbits/error.hpp"
#include "corrbits/geometry.hpp"
#include "corrbits/rng.hpp"

namespace corrbits {

// Outcome probabilities for one measurement round, outcomes x, y in {0, 1}.
struct JointDistribution {
    double p00 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;
};

// Distribution of a single bit of z = x xor y.
struct XorDistribution {
    double p0 = 0.0;
    double p1 = 0.0;
};

// Singlet statistics: p(x, y) = (1 - (-1)^(x+y) a.b) / 4. Marginals are
// unbiased for every pair of directions.
inline JointDistribution singlet_joint_distribution(const BlochVector& a, const BlochVector& b) {
    require_unit(a);
    require_unit(b);
    const double d = a.dot(b);
    const double same = (1.0 - d) / 4.0;
    const double diff = (1.0 + d) / 4.0;
    return {same, diff, diff, same};
}

// p(z = 0) = (1 - a.b)/2, p(z = 1) = (1 + a.b)/2; consistent with the joint
// distribution via p0 = p00 + p11.
inline XorDistribution xor_distribution(const BlochVector& a, const BlochVector& b) {
    require_unit(a);
    require_unit(b);
    const double d = a.dot(b);
    return {(1.0 - d) / 2.0, (1.0 + d) / 2.0};
}

// n i.i.d. singlet rounds for settings (a, b). Alice's bit is unbiased; the
// xor bit is drawn with p(z=0) = (1 - a.b)/2 and Bob's bit is x xor z.
// Identical (a, b, n, seed) always reproduce identical strings.
inline std::pair<BitString, BitString> sample_singlet_pair(const BlochVector& a,
                                                           const BlochVector& b, std::size_t n,
                                                           std::uint64_t seed) {
    require_unit(a);
    require_unit(b);
    if (n == 0) throw EmptySampleError("cannot sample an empty bit-string pair");
    const double p0 = (1.0 - a.dot(b)) / 2.0;
    Xoshiro256StarStar rng(seed);
    BitString x(n);
    BitString y(n);
    for (std::size_t t = 0; t < n; ++t) {
        const bool xt = rng.bit();
        const bool zt = !rng.bernoulli(p0);
        x.set(t, xt);
        y.set(t, xt ^ zt);
    }
    return {std::move(x), std::move(y)};
}

// Classical baseline: per round a hidden direction lambda is drawn uniformly
// on the sphere. Alice outputs 0 iff a.lambda >= 0; Bob outputs 1 iff
// b.lambda >= 0 (flipped, mimicking the singlet's anticorrelation at a = b).
// For this model p(x xor y = 0) = angle(a, b) / pi and both marginals are
// unbiased.
inline std::pair<BitString, BitString> sample_lhv_pair(const BlochVector& a, const BlochVector& b,
                                                       std::size_t n, std::uint64_t seed) {
    require_unit(a);
    require_unit(b);
    if (n == 0) throw EmptySampleError("cannot sample an empty bit-string pair");
    Xoshiro256StarStar rng(seed);
    BitString x(n);
    BitString y(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto lambda = rng.unit_vector();
        const double da = a.x * lambda[0] + a.y * lambda[1] + a.z * lambda[2];
        const double db = b.x * lambda[0] + b.y * lambda[1] + b.z * lambda[2];
        x.set(t, !(da >= 0.0));
        y.set(t, db >= 0.0);
    }
    return {std::move(x), std::move(y)};
}

}  // namespace corrbits
