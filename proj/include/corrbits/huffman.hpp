#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corrbits/bitstring.hpp"
#include "corrbits/error.hpp"

namespace corrbits {

// Full 2^k alphabet is materialized for expected-rate tables; 24 keeps that
// to ~16M entries.
inline constexpr unsigned kMaxBlockSize = 24;

// Expected-rate weights below this are dropped as exact zeros, so degenerate
// sources keep a one-symbol alphabet and the 1/k extremal rate stays exact.
inline constexpr double kWeightFloor = 1e-300;

// Weight table over k-bit block values. Entries are sorted by block value and
// strictly positive; zero-weight blocks never enter the tree.
struct BlockWeights {
    unsigned block_size_k = 0;
    std::vector<std::pair<std::uint32_t, double>> weights;
};

// Prefix-free code: block value -> codeword bits. Entries sorted by block
// value; covers exactly the positive-weight blocks it was built from.
struct HuffmanCodebook {
    unsigned block_size_k = 0;
    std::vector<std::pair<std::uint32_t, BitString>> codes;

    const BitString* find(std::uint32_t block) const {
        auto it = std::lower_bound(codes.begin(), codes.end(), block,
                                   [](const auto& entry, std::uint32_t value) { return entry.first < value; });
        if (it == codes.end() || it->first != block) return nullptr;
        return &it->second;
    }
};

struct EncodeResult {
    BitString compressed;
    HuffmanCodebook codebook;
};

namespace detail {

inline void check_block_size(unsigned k) {
    if (k == 0 || k > kMaxBlockSize)
        throw InvalidBlockSizeError("block size must be in [1, " + std::to_string(kMaxBlockSize) +
                                    "], got " + std::to_string(k));
}

// Merge plan for the frequency-table procedure. Leaves are indexed by their
// position in a (weight ascending, block value descending) sort, i.e. the
// reverse of the table order (weight descending, block value ascending).
//
// The table discipline: always merge the two bottom entries; reinsert the
// merged entry above existing entries of equal weight. With the reversed sort
// this is the classic two-queue scheme -- pop the two smallest overall, where
// a weight tie between a leaf and a merged node goes to the leaf (it sits
// lower in the table), and merged nodes leave their queue in creation order.
struct MergeForest {
    // Children per internal node, by branch bit. child0/child1 < n_leaves are
    // leaves, larger values internal nodes (offset by n_leaves).
    std::vector<std::int32_t> child0;
    std::vector<std::int32_t> child1;
    std::size_t n_leaves = 0;
};

inline MergeForest build_forest(const std::vector<double>& leaf_weights_ascending) {
    const std::size_t n = leaf_weights_ascending.size();
    MergeForest forest;
    forest.n_leaves = n;
    if (n < 2) return forest;

    forest.child0.reserve(n - 1);
    forest.child1.reserve(n - 1);
    std::vector<double> node_weight;
    std::vector<std::int32_t> node_leaves;
    node_weight.reserve(n - 1);
    node_leaves.reserve(n - 1);

    std::size_t leaf_head = 0;
    std::size_t node_head = 0;
    const auto pop_min = [&]() -> std::int32_t {
        const bool leaf_left = leaf_head < n;
        const bool node_left = node_head < node_weight.size();
        // Tie goes to the leaf: merged nodes sit above equal-weight table entries.
        if (leaf_left &&
            (!node_left || leaf_weights_ascending[leaf_head] <= node_weight[node_head]))
            return static_cast<std::int32_t>(leaf_head++);
        return static_cast<std::int32_t>(n + node_head++);
    };
    const auto weight_of = [&](std::int32_t id) {
        return id < static_cast<std::int32_t>(n) ? leaf_weights_ascending[id]
                                                 : node_weight[id - n];
    };
    const auto leaves_of = [&](std::int32_t id) {
        return id < static_cast<std::int32_t>(n) ? std::int32_t{1} : node_leaves[id - n];
    };

    for (std::size_t step = 0; step + 1 < n; ++step) {
        const std::int32_t lower = pop_min();  // bottom table entry
        const std::int32_t upper = pop_min();  // entry just above it
        // Branch assignment that matches the worked tree: the smaller subtree
        // takes the 0-branch; equal sizes keep the upper entry on 0.
        if (leaves_of(upper) <= leaves_of(lower)) {
            forest.child0.push_back(upper);
            forest.child1.push_back(lower);
        } else {
            forest.child0.push_back(lower);
            forest.child1.push_back(upper);
        }
        node_weight.push_back(weight_of(lower) + weight_of(upper));
        node_leaves.push_back(leaves_of(lower) + leaves_of(upper));
    }
    return forest;
}

// Positive-weight entries ordered for build_forest: weight ascending, block
// value descending, so that reversing yields the frequency table (weight
// descending, ties listed by increasing block value).
inline std::vector<std::pair<std::uint32_t, double>> table_ordered_entries(
    const BlockWeights& weights) {
    std::vector<std::pair<std::uint32_t, double>> entries;
    entries.reserve(weights.weights.size());
    const std::uint64_t alphabet = std::uint64_t{1} << weights.block_size_k;
    for (const auto& [block, weight] : weights.weights) {
        if (block >= alphabet)
            throw Error("block value " + std::to_string(block) + " does not fit in " +
                        std::to_string(weights.block_size_k) + " bits");
        if (weight < 0.0) throw Error("block weights must be nonnegative");
        if (weight > 0.0) entries.emplace_back(block, weight);
    }
    if (entries.empty()) throw EmptyAlphabetError("all block weights are zero");
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first > b.first;
    });
    return entries;
}

// Depth of every leaf in merge order; the single-symbol alphabet codes as one
// bit by convention.
inline std::vector<unsigned> leaf_depths(const MergeForest& forest) {
    const std::size_t n = forest.n_leaves;
    if (n == 1) return {1u};
    std::vector<unsigned> depth(2 * n - 1, 0);
    // Nodes were created bottom-up; the last one is the root. Walk top-down.
    for (std::size_t i = forest.child0.size(); i-- > 0;) {
        const unsigned d = depth[n + i] + 1;
        depth[forest.child0[i]] = d;
        depth[forest.child1[i]] = d;
    }
    depth.resize(n);
    return depth;
}

}  // namespace detail

// Codeword lengths per block, without materializing codeword bits. Same merge
// plan as build_codebook, so lengths always agree between the two.
inline std::vector<std::pair<std::uint32_t, unsigned>> code_lengths(const BlockWeights& weights) {
    detail::check_block_size(weights.block_size_k);
    const auto entries = detail::table_ordered_entries(weights);
    std::vector<double> leaf_weights(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) leaf_weights[i] = entries[i].second;
    const auto depths = detail::leaf_depths(detail::build_forest(leaf_weights));
    std::vector<std::pair<std::uint32_t, unsigned>> lengths(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) lengths[i] = {entries[i].first, depths[i]};
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

// Optimal prefix code for the positive-weight blocks, built by the recursive
// frequency-table merge. Deterministic tie handling reproduces one fixed
// codebook for a given table; any other tie rule only permutes codeword bits,
// never the expected length.
inline HuffmanCodebook build_codebook(const BlockWeights& weights) {
    detail::check_block_size(weights.block_size_k);
    const auto entries = detail::table_ordered_entries(weights);
    const std::size_t n = entries.size();

    HuffmanCodebook book;
    book.block_size_k = weights.block_size_k;
    book.codes.resize(n);

    if (n == 1) {
        BitString code;
        code.push_back(false);
        book.codes[0] = {entries[0].first, std::move(code)};
        return book;
    }

    std::vector<double> leaf_weights(n);
    for (std::size_t i = 0; i < n; ++i) leaf_weights[i] = entries[i].second;
    const auto forest = detail::build_forest(leaf_weights);

    // Iterative root-to-leaf walk carrying the code prefix.
    std::vector<std::pair<std::int32_t, BitString>> stack;
    stack.emplace_back(static_cast<std::int32_t>(2 * n - 2), BitString{});
    std::size_t emitted = 0;
    while (!stack.empty()) {
        auto [id, prefix] = std::move(stack.back());
        stack.pop_back();
        if (id < static_cast<std::int32_t>(n)) {
            book.codes[emitted++] = {entries[id].first, std::move(prefix)};
            continue;
        }
        const std::size_t node = id - n;
        BitString zero = prefix;
        zero.push_back(false);
        BitString one = std::move(prefix);
        one.push_back(true);
        stack.emplace_back(forest.child1[node], std::move(one));
        stack.emplace_back(forest.child0[node], std::move(zero));
    }
    std::sort(book.codes.begin(), book.codes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return book;
}

// Block frequency table of z read in k-bit blocks.
inline BlockWeights block_weights_from_string(const BitString& z, unsigned k) {
    detail::check_block_size(k);
    if (z.size() % k != 0)
        throw DimensionError("string length " + std::to_string(z.size()) +
                             " is not divisible by block size " + std::to_string(k));
    if (z.empty()) throw EmptyAlphabetError("cannot build block weights from an empty string");
    std::unordered_map<std::uint32_t, double> counts;
    for (std::size_t pos = 0; pos < z.size(); pos += k) ++counts[z.block(pos, k)];
    BlockWeights weights;
    weights.block_size_k = k;
    weights.weights.assign(counts.begin(), counts.end());
    std::sort(weights.weights.begin(), weights.weights.end());
    return weights;
}

// Splits z into n/k blocks, builds the codebook from their frequencies and
// concatenates the codewords. The codebook rides alongside the payload; rate
// accounting charges payload bits only.
inline EncodeResult encode(const BitString& z, unsigned k) {
    const BlockWeights weights = block_weights_from_string(z, k);
    HuffmanCodebook book = build_codebook(weights);

    std::unordered_map<std::uint32_t, const BitString*> lookup;
    lookup.reserve(book.codes.size());
    for (const auto& [block, code] : book.codes) lookup.emplace(block, &code);

    EncodeResult result;
    for (std::size_t pos = 0; pos < z.size(); pos += k)
        result.compressed.append(*lookup.at(z.block(pos, k)));
    result.codebook = std::move(book);
    return result;
}

// Inverse of encode: reads exactly block_count codewords and rebuilds the
// block sequence. Any dangling bits or unknown prefix mean a corrupt stream.
inline BitString decode(const BitString& compressed, const HuffmanCodebook& codebook,
                        std::size_t block_count) {
    detail::check_block_size(codebook.block_size_k);

    // Binary trie over the codewords; node payload is the decoded block.
    struct TrieNode {
        std::int32_t child[2] = {-1, -1};
        std::int64_t block = -1;
    };
    std::vector<TrieNode> trie(1);
    for (const auto& [block, code] : codebook.codes) {
        if (code.empty()) throw Error("codebook contains an empty codeword");
        std::int32_t node = 0;
        for (std::size_t i = 0; i < code.size(); ++i) {
            if (trie[node].block >= 0) throw Error("codebook is not prefix-free");
            const int bit = code.get(i) ? 1 : 0;
            if (trie[node].child[bit] < 0) {
                trie[node].child[bit] = static_cast<std::int32_t>(trie.size());
                trie.emplace_back();
            }
            node = trie[node].child[bit];
        }
        if (trie[node].block >= 0 || trie[node].child[0] >= 0 || trie[node].child[1] >= 0)
            throw Error("codebook is not prefix-free");
        trie[node].block = block;
    }

    BitString out;
    out.reserve(block_count * codebook.block_size_k);
    std::size_t cursor = 0;
    for (std::size_t b = 0; b < block_count; ++b) {
        std::int32_t node = 0;
        while (trie[node].block < 0) {
            if (cursor >= compressed.size())
                throw CorruptStreamError("compressed stream ended inside a codeword");
            const int bit = compressed.get(cursor++) ? 1 : 0;
            node = trie[node].child[bit];
            if (node < 0) throw CorruptStreamError("unknown codeword prefix in compressed stream");
        }
        out.append_block(static_cast<std::uint32_t>(trie[node].block), codebook.block_size_k);
    }
    if (cursor != compressed.size())
        throw CorruptStreamError("dangling bits after the last codeword");
    return out;
}

// Compression rate n~/n of z under the k-bit block code.
inline double empirical_rate(const BitString& z, unsigned k) {
    const EncodeResult enc = encode(z, k);
    return static_cast<double>(enc.compressed.size()) / static_cast<double>(z.size());
}

// i.i.d. biased-bit source: the block with l zeros and k-l ones has
// probability p0^l (1-p0)^(k-l). Exact zeros are omitted.
inline BlockWeights expected_block_weights(double p0, unsigned k) {
    detail::check_block_size(k);
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw Error("p0 must lie in [0, 1], got " + std::to_string(p0));
    const double p1 = 1.0 - p0;
    std::vector<double> pow0(k + 1), pow1(k + 1);
    pow0[0] = pow1[0] = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        pow0[i] = pow0[i - 1] * p0;
        pow1[i] = pow1[i - 1] * p1;
    }
    BlockWeights weights;
    weights.block_size_k = k;
    const std::uint64_t alphabet = std::uint64_t{1} << k;
    for (std::uint64_t block = 0; block < alphabet; ++block) {
        const unsigned ones = static_cast<unsigned>(std::popcount(block));
        const double w = pow0[k - ones] * pow1[ones];
        if (w >= kWeightFloor)
            weights.weights.emplace_back(static_cast<std::uint32_t>(block), w);
    }
    return weights;
}

// Expected compression rate sum_blocks p(block) len(code) / k for the biased
// source. Within [H(p0), H(p0) + 1/k); equals 1/k exactly at p0 in {0, 1}.
inline double expected_rate(double p0, unsigned k) {
    const BlockWeights weights = expected_block_weights(p0, k);
    const auto lengths = code_lengths(weights);
    double expected_length = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i)
        expected_length += weights.weights[i].second * lengths[i].second;
    return expected_length / k;
}

// Codebook dump: one "block<TAB>codeword" line per entry, block values in
// k-wide binary, sorted by block value.
inline std::string dump_codebook(const HuffmanCodebook& codebook) {
    std::string out;
    for (const auto& [block, code] : codebook.codes) {
        for (unsigned t = 0; t < codebook.block_size_k; ++t)
            out.push_back((block >> (codebook.block_size_k - 1 - t)) & 1u ? '1' : '0');
        out.push_back('\t');
        out += code.to_string();
        out.push_back('\n');
    }
    return out;
}

}  // namespace corrbits
