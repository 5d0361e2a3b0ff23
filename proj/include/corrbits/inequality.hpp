#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrbits/bitstring.hpp"
#include "corrbits/correlation.hpp"
#include "corrbits/error.hpp"
#include "corrbits/geometry.hpp"
#include "corrbits/huffman.hpp"
#include "corrbits/information.hpp"
#include "corrbits/rng.hpp"

namespace corrbits {

enum class EvalMode { analytic, monte_carlo };
enum class SourceKind { singlet, lhv };

// Monte Carlo string generation for the chain terms. Independent sampling
// draws a fresh pair per term; shared_lambda reuses one hidden variable per
// round across every setting, which only a classical source admits.
enum class SamplingVariant { independent, shared_lambda };

inline const char* to_string(EvalMode mode) {
    return mode == EvalMode::analytic ? "analytic" : "monte_carlo";
}
inline const char* to_string(SourceKind source) {
    return source == SourceKind::singlet ? "singlet" : "lhv";
}

// Chain evaluation result. The optional fields are populated in monte_carlo
// mode only.
struct InequalityReport {
    int n_settings = 0;
    unsigned block_size_k = 0;
    EvalMode mode = EvalMode::analytic;
    SourceKind source = SourceKind::singlet;
    double lhs = 0.0;
    std::vector<double> rhs_terms;  // N diagonal terms, then N-1 off-diagonal
    double rhs_sum = 0.0;
    double correction = 0.0;
    bool violated = false;
    bool violated_uncorrected = false;  // same comparison with correction dropped
    std::optional<std::uint64_t> n_bits;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> rng_id;
};

struct ChainRates {
    double r_diag = 0.0;
    double r_lhs = 0.0;
};

// Expected compression rates of the chain under singlet statistics: every
// neighboring pair shares the angle theta/2, the endpoints are orthogonal.
inline ChainRates chain_rates_analytic(int n_settings, unsigned k) {
    const SettingsChain chain = chain_settings(n_settings);
    const double cos_half = std::cos(chain.theta / 2.0);
    ChainRates rates;
    rates.r_diag = expected_rate((1.0 - cos_half) / 2.0, k);
    rates.r_lhs = expected_rate(0.5, k);
    return rates;
}

namespace detail {

// Neighboring (and endpoint) xor-bit probabilities for the classical model:
// a hidden direction uniform on the sphere makes the outcomes disagree with
// probability angle/pi.
inline double lhv_xor_zero_probability(const BlochVector& a, const BlochVector& b) {
    return angle_between(a, b) / std::numbers::pi;
}

// Setting pair for a chain term. Index 0 is the left-hand side (first Alice
// setting against last Bob setting), 1..N the diagonal pairs, N+1..2N-1 the
// off-diagonal pairs.
inline std::pair<BlochVector, BlochVector> term_settings(const SettingsChain& chain,
                                                         std::size_t term_index) {
    const std::size_t n = chain.alice_dirs.size();
    if (term_index == 0) return {chain.alice_dirs[0], chain.bob_dirs[n - 1]};
    if (term_index <= n) return {chain.alice_dirs[term_index - 1], chain.bob_dirs[term_index - 1]};
    const std::size_t i = term_index - n;  // off-diagonal: alice i+1 against bob i, 1-based
    return {chain.alice_dirs[i], chain.bob_dirs[i - 1]};
}

// Strings for every chain setting generated from one hidden variable stream:
// per round a single lambda decides all 2N outcomes.
struct SharedLambdaStrings {
    std::vector<BitString> alice;
    std::vector<BitString> bob;
};

inline SharedLambdaStrings sample_lhv_chain_shared(const SettingsChain& chain,
                                                   std::uint64_t n_bits, std::uint64_t seed) {
    const std::size_t n = chain.alice_dirs.size();
    SharedLambdaStrings strings;
    strings.alice.resize(n);
    strings.bob.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        strings.alice[i].reserve(n_bits);
        strings.bob[i].reserve(n_bits);
    }
    Xoshiro256StarStar rng(seed);
    for (std::uint64_t t = 0; t < n_bits; ++t) {
        const auto lambda = rng.unit_vector();
        for (std::size_t i = 0; i < n; ++i) {
            const BlochVector& a = chain.alice_dirs[i];
            const BlochVector& b = chain.bob_dirs[i];
            const double da = a.x * lambda[0] + a.y * lambda[1] + a.z * lambda[2];
            const double db = b.x * lambda[0] + b.y * lambda[1] + b.z * lambda[2];
            strings.alice[i].push_back(!(da >= 0.0));
            strings.bob[i].push_back(db >= 0.0);
        }
    }
    return strings;
}

}  // namespace detail

// Evaluates the chain inequality
//   r(1,N) <= sum_i r(i,i) + sum_i r(i+1,i)  (+ correction)
// over the standard settings chain, reporting the left side, all 2N-1 right
// side terms, and the violation verdict.
//
// Analytic mode uses expected compression rates of the exact xor-bit
// distributions. Monte Carlo mode samples string pairs per term (seed derived
// from the master seed and the term index, so term order cannot matter) and
// rates them through ncd in assumed-incompressible mode. The correction
// c * N * log2(n) / n applies in Monte Carlo mode only.
inline InequalityReport evaluate_chain(int n_settings, unsigned k, EvalMode mode,
                                       SourceKind source, std::uint64_t n_bits = 0,
                                       std::uint64_t seed = 42, double correction_c = 0.0,
                                       SamplingVariant variant = SamplingVariant::independent) {
    const SettingsChain chain = chain_settings(n_settings);
    detail::check_block_size(k);
    const std::size_t n_terms = 2 * static_cast<std::size_t>(n_settings);  // lhs + 2N-1 rhs

    InequalityReport report;
    report.n_settings = n_settings;
    report.block_size_k = k;
    report.mode = mode;
    report.source = source;
    report.rhs_terms.reserve(n_terms - 1);

    if (mode == EvalMode::analytic) {
        for (std::size_t term = 0; term < n_terms; ++term) {
            const auto [a, b] = detail::term_settings(chain, term);
            const double p0 = source == SourceKind::singlet
                                  ? xor_distribution(a, b).p0
                                  : detail::lhv_xor_zero_probability(a, b);
            const double rate = expected_rate(p0, k);
            if (term == 0)
                report.lhs = rate;
            else
                report.rhs_terms.push_back(rate);
        }
    } else {
        if (n_bits % k != 0)
            throw DimensionError("n_bits " + std::to_string(n_bits) +
                                 " is not divisible by block size " + std::to_string(k));
        const std::uint64_t floor = 100ULL * static_cast<std::uint64_t>(n_settings) * k;
        if (n_bits < floor)
            throw SampleTooSmallError("n_bits " + std::to_string(n_bits) + " is below the floor " +
                                      std::to_string(floor) + " for " +
                                      std::to_string(n_settings) + " settings at block size " +
                                      std::to_string(k));
        if (variant == SamplingVariant::shared_lambda && source != SourceKind::lhv)
            throw Error("shared-lambda sampling needs a hidden variable; only the lhv source has one");

        const CompressorSpec spec{CompressorKind::xor_block_huffman, k};
        const auto rate_of = [&](const BitString& x, const BitString& y) {
            return ncd(x, y, spec, LocalSizeMode::assumed_incompressible).value;
        };

        if (variant == SamplingVariant::shared_lambda) {
            const auto strings = detail::sample_lhv_chain_shared(chain, n_bits, seed);
            const std::size_t n = chain.alice_dirs.size();
            report.lhs = rate_of(strings.alice[0], strings.bob[n - 1]);
            for (std::size_t i = 0; i < n; ++i)
                report.rhs_terms.push_back(rate_of(strings.alice[i], strings.bob[i]));
            for (std::size_t i = 1; i < n; ++i)
                report.rhs_terms.push_back(rate_of(strings.alice[i], strings.bob[i - 1]));
        } else {
            for (std::size_t term = 0; term < n_terms; ++term) {
                const auto [a, b] = detail::term_settings(chain, term);
                const std::uint64_t term_seed = derive_seed(seed, term);
                const auto [x, y] = source == SourceKind::singlet
                                        ? sample_singlet_pair(a, b, n_bits, term_seed)
                                        : sample_lhv_pair(a, b, n_bits, term_seed);
                const double rate = rate_of(x, y);
                if (term == 0)
                    report.lhs = rate;
                else
                    report.rhs_terms.push_back(rate);
            }
        }
        report.correction = correction_c * static_cast<double>(n_settings) *
                            std::log2(static_cast<double>(n_bits)) /
                            static_cast<double>(n_bits);
        report.n_bits = n_bits;
        report.seed = seed;
        report.rng_id = kRngId;
    }

    for (double term : report.rhs_terms) report.rhs_sum += term;
    report.violated = report.lhs > report.rhs_sum + report.correction;
    report.violated_uncorrected = report.lhs > report.rhs_sum;
    return report;
}

// Smallest chain length whose analytic singlet evaluation violates the
// inequality, scanning N = 2..n_max. The comparison reduces to
// r_diag < 1/(2N-1).
inline std::optional<int> minimal_violating_n(unsigned k, int n_max) {
    detail::check_block_size(k);
    if (n_max < 2) throw InvalidChainError("n_max must be at least 2, got " + std::to_string(n_max));
    for (int n = 2; n <= n_max; ++n) {
        const ChainRates rates = chain_rates_analytic(n, k);
        if (rates.r_diag < 1.0 / (2.0 * n - 1.0)) return n;
    }
    return std::nullopt;
}

}  // namespace corrbits
