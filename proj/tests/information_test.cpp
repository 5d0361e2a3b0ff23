#include "corrbits/information.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corrbits/bitstring.hpp"
#include "corrbits/correlation.hpp"
#include "corrbits/error.hpp"
#include "corrbits/geometry.hpp"
#include "corrbits/inequality.hpp"
#include "oracles.hpp"

using corrbits::binary_entropy;
using corrbits::BitString;
using corrbits::BlochVector;
using corrbits::compressed_size;
using corrbits::CompressorKind;
using corrbits::CompressorSpec;
using corrbits::DimensionError;
using corrbits::EmptySampleError;
using corrbits::empirical_rate;
using corrbits::Error;
using corrbits::estimate_bit_probability;
using corrbits::joint_compressed_size_xor;
using corrbits::LocalSizeMode;
using corrbits::ncd;
using corrbits::NcdValue;
using corrbits::sample_singlet_pair;
using corrbits::uniformity_check;
using corrbits::xor_strings;
using corrbits::zurek_distance_approx;

namespace {

const CompressorSpec kHuffman2{CompressorKind::xor_block_huffman, 2};
const CompressorSpec kHuffman4{CompressorKind::xor_block_huffman, 4};
const CompressorSpec kRaw{CompressorKind::raw, 1};

BitString random_bits(std::mt19937_64& rng, std::size_t n, double p_one = 0.5) {
    std::bernoulli_distribution bit(p_one);
    BitString s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.push_back(bit(rng));
    return s;
}

}  // namespace

TEST(BinaryEntropy, ReferenceValues) {
    EXPECT_NEAR(binary_entropy(7.0 / 9.0), 0.764, 1e-3);
    EXPECT_NEAR(binary_entropy((1.0 - 1.0 / std::numbers::sqrt2) / 2.0), 0.601, 1e-3);
    EXPECT_NEAR(binary_entropy((1.0 - std::cos(std::numbers::pi / 10.0)) / 2.0), 0.166, 1e-3);
    EXPECT_NEAR(binary_entropy(7.0 / 9.0), 0.7642045065086203, 1e-12);
}

TEST(BinaryEntropy, EndpointsAndPeak) {
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_EQ(binary_entropy(0.5), 1.0);
    EXPECT_THROW(binary_entropy(-0.01), Error);
    EXPECT_THROW(binary_entropy(1.01), Error);
}

TEST(BinaryEntropy, SymmetricAndConcave) {
    for (double p = 0.0; p <= 0.5 + 1e-9; p += 0.01) {
        ASSERT_NEAR(binary_entropy(p), binary_entropy(1.0 - p), 1e-12);
    }
    for (double a = 0.05; a < 0.9; a += 0.07) {
        const double b = a + 0.1;
        const double mid = binary_entropy((a + b) / 2.0);
        ASSERT_GE(mid, (binary_entropy(a) + binary_entropy(b)) / 2.0 - 1e-12);
    }
}

TEST(EstimateBitProbability, CountsZeros) {
    EXPECT_EQ(estimate_bit_probability(BitString::from_string("000010010000001100")), 7.0 / 9.0);
    EXPECT_EQ(estimate_bit_probability(BitString::from_string("11111111")), 0.0);
    EXPECT_EQ(estimate_bit_probability(BitString::from_string("01")), 0.5);
    EXPECT_THROW(estimate_bit_probability(BitString{}), EmptySampleError);
}

TEST(CompressedSize, RawIsLength) {
    auto rng = oracles::test_rng(301);
    const BitString s = random_bits(rng, 1234);
    EXPECT_EQ(compressed_size(s, kRaw), 1234u);
}

TEST(CompressedSize, HuffmanCountsPayloadBits) {
    EXPECT_EQ(compressed_size(BitString::from_string("000010010000001100"), kHuffman2), 14u);
    EXPECT_EQ(compressed_size(BitString(100), kHuffman4), 25u);
}

TEST(JointSizeXor, DegeneratePairs) {
    auto rng = oracles::test_rng(302);
    const BitString x = random_bits(rng, 100);
    EXPECT_EQ(joint_compressed_size_xor(x, x, 4), 125u);
    BitString complement(100);
    for (std::size_t i = 0; i < 100; ++i) complement.set(i, !x.get(i));
    EXPECT_EQ(joint_compressed_size_xor(x, complement, 4), 125u);
    EXPECT_THROW(joint_compressed_size_xor(x, BitString(99), 4), DimensionError);
}

TEST(JointSizeXor, IndependentUniformPairsAreIncompressible) {
    auto rng = oracles::test_rng(303);
    const std::size_t n = 10000;
    const BitString x = random_bits(rng, n);
    const BitString y = random_bits(rng, n);
    const double size = static_cast<double>(joint_compressed_size_xor(x, y, 2));
    EXPECT_NEAR(size, n * 2.0, n * 2.0 * 0.02);
}

TEST(Ncd, SymmetryIsExact) {
    auto rng = oracles::test_rng(304);
    for (int round = 0; round < 10; ++round) {
        const BitString x = random_bits(rng, 400, 0.3);
        const BitString y = random_bits(rng, 400, 0.8);
        for (LocalSizeMode mode :
             {LocalSizeMode::assumed_incompressible, LocalSizeMode::measured}) {
            const NcdValue ab = ncd(x, y, kHuffman4, mode);
            const NcdValue ba = ncd(y, x, kHuffman4, mode);
            ASSERT_EQ(ab.value, ba.value);
            ASSERT_EQ(ab.c_xy, ba.c_xy);
        }
    }
}

TEST(Ncd, SelfDistanceIsOneOverK) {
    auto rng = oracles::test_rng(305);
    const BitString x = random_bits(rng, 1600);
    for (unsigned k : {1u, 2u, 4u, 8u}) {
        const NcdValue v = ncd(x, x, {CompressorKind::xor_block_huffman, k});
        ASSERT_EQ(v.value, 1.0 / k);
    }
}

TEST(Ncd, AssumedModeEqualsXorRate) {
    auto rng = oracles::test_rng(306);
    for (int round = 0; round < 10; ++round) {
        const BitString x = random_bits(rng, 3000, 0.4);
        const BitString y = random_bits(rng, 3000, 0.45);
        const NcdValue v = ncd(x, y, kHuffman2);
        ASSERT_EQ(v.value, empirical_rate(xor_strings(x, y), 2));
        ASSERT_EQ(v.c_x, 3000u);
        ASSERT_EQ(v.c_y, 3000u);
    }
}

TEST(Ncd, MeasuredModeUsesCompressorSizes) {
    const BitString x = BitString::from_string("000010010000001100");
    const BitString y = BitString(18);
    const NcdValue v = ncd(x, y, kHuffman2, LocalSizeMode::measured);
    EXPECT_EQ(v.c_x, 14u);
    EXPECT_EQ(v.c_y, 9u);   // nine blocks, one bit each
    EXPECT_EQ(v.c_xy, 32u);  // xor equals x: 14 + 18
    EXPECT_EQ(v.value, (32.0 - 9.0) / 14.0);
}

TEST(Ncd, OrthogonalSingletPairIsNearOne) {
    const BlochVector a{0.0, 0.0, 1.0};
    const BlochVector b{1.0, 0.0, 0.0};
    const auto [x, y] = sample_singlet_pair(a, b, 99999, 17);
    const NcdValue v = ncd(x, y, {CompressorKind::xor_block_huffman, 9});
    EXPECT_NEAR(v.value, 1.0, 0.02);
}

TEST(Ncd, ChainAnglePairMatchesPublishedRate) {
    const double dot = std::cos(std::numbers::pi / 10.0);
    const BlochVector a{0.0, 0.0, 1.0};
    const BlochVector b{std::sin(std::acos(dot)), 0.0, dot};
    const auto [x, y] = sample_singlet_pair(a, b, 900000, 18);
    const NcdValue v = ncd(x, y, {CompressorKind::xor_block_huffman, 9});
    EXPECT_NEAR(v.value, 0.199, 0.01);
}

TEST(Ncd, RejectsBadInput) {
    const BitString x = BitString::from_string("0101");
    EXPECT_THROW(ncd(x, BitString::from_string("010"), kHuffman2), DimensionError);
    EXPECT_THROW(ncd(BitString{}, BitString{}, kHuffman2), EmptySampleError);
}

TEST(Zurek, DegenerateAndIndependentPairs) {
    auto rng = oracles::test_rng(307);
    const BitString x = random_bits(rng, 100);
    EXPECT_EQ(zurek_distance_approx(x, x, kHuffman4), 50.0);

    const std::size_t n = 10000;
    const BitString u = random_bits(rng, n);
    const BitString v = random_bits(rng, n);
    EXPECT_NEAR(zurek_distance_approx(u, v, kHuffman2), 2.0 * n, 2.0 * n * 0.02);
}

TEST(Zurek, SymmetricInItsArguments) {
    auto rng = oracles::test_rng(308);
    const BitString x = random_bits(rng, 600, 0.2);
    const BitString y = random_bits(rng, 600, 0.7);
    EXPECT_EQ(zurek_distance_approx(x, y, kHuffman2), zurek_distance_approx(y, x, kHuffman2));
}

TEST(UniformityCheck, ConstantStringHasZeroDeviation) {
    const auto report = uniformity_check(BitString(200), 20, 4);
    ASSERT_EQ(report.window_rates.size(), 10u);
    for (double rate : report.window_rates) ASSERT_EQ(rate, 0.25);
    EXPECT_EQ(report.max_deviation, 0.0);
}

TEST(UniformityCheck, UniformRandomStringIsFlat) {
    auto rng = oracles::test_rng(309);
    const auto report = uniformity_check(random_bits(rng, 100000), 10000, 2);
    EXPECT_EQ(report.window_rates.size(), 10u);
    EXPECT_LT(report.max_deviation, 0.02);
    EXPECT_NEAR(report.mean_rate, 1.0, 0.02);
}

TEST(UniformityCheck, DetectsStructuredHalf) {
    auto rng = oracles::test_rng(310);
    const std::size_t n = 20000;
    BitString s(n);
    const BitString noise = random_bits(rng, n / 2);
    for (std::size_t i = 0; i < n / 2; ++i) s.set(n / 2 + i, noise.get(i));
    // all-zero half compresses to one bit per 8-bit block, the noisy half
    // stays near rate one
    const auto report = uniformity_check(s, n / 2, 8);
    ASSERT_EQ(report.window_rates.size(), 2u);
    EXPECT_NEAR(report.window_rates[0], 0.125, 1e-12);
    EXPECT_GT(report.max_deviation, 0.3);
}

TEST(UniformityCheck, ValidatesWindow) {
    const BitString s(100);
    EXPECT_THROW(uniformity_check(s, 0, 2), DimensionError);
    EXPECT_THROW(uniformity_check(s, 15, 2), DimensionError);
    EXPECT_THROW(uniformity_check(s, 200, 2), DimensionError);
}

// Triangle slack bound with the published finite-length allowance: classical
// triples generated from one hidden-variable stream.
TEST(Ncd, TriangleSlackOnClassicalTriples) {
    const double c = 10.0;
    const std::size_t n = 100000;
    const double slack = c * std::log2(static_cast<double>(n)) / static_cast<double>(n);
    for (int chain_n : {2, 3}) {
        const auto chain = corrbits::chain_settings(chain_n);
        const auto strings =
            corrbits::detail::sample_lhv_chain_shared(chain, n, 500 + chain_n);
        const CompressorSpec spec{CompressorKind::xor_block_huffman, 2};
        const BitString& x = strings.alice[0];
        const BitString& y = strings.bob[0];
        const BitString& w = strings.alice[1];
        const double xy = ncd(x, y, spec).value;
        const double yw = ncd(y, w, spec).value;
        const double xw = ncd(x, w, spec).value;
        EXPECT_LE(xw, xy + yw + slack) << "chain " << chain_n;
        EXPECT_LE(xy, xw + yw + slack) << "chain " << chain_n;
        EXPECT_LE(yw, xy + xw + slack) << "chain " << chain_n;
    }
}
