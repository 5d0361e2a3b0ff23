#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corrbits/error.hpp"

namespace corrbits {

// Packed bit sequence. Bit t lives at word t/64, position t%64. Unused high
// bits of the last word are kept zero so equality is plain member comparison.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    // Parses "0101..."; anything but '0'/'1' is an error.
    static BitString from_string(const std::string& s) {
        BitString out;
        out.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw Error("bit string may contain only '0' and '1'");
            out.push_back(c == '1');
        }
        return out;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    void reserve(std::size_t n) { words_.reserve((n + 63) / 64); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void push_back(bool v) {
        if ((size_ & 63) == 0) words_.push_back(0);
        if (v) words_.back() |= std::uint64_t{1} << (size_ & 63);
        ++size_;
    }

    // Value of the k-bit block starting at `pos`, first bit most significant,
    // matching the left-to-right reading of the string.
    std::uint32_t block(std::size_t pos, unsigned k) const {
        std::uint32_t value = 0;
        for (unsigned t = 0; t < k; ++t) value = (value << 1) | (get(pos + t) ? 1u : 0u);
        return value;
    }

    void append_block(std::uint32_t value, unsigned k) {
        for (unsigned t = 0; t < k; ++t) push_back((value >> (k - 1 - t)) & 1u);
    }

    void append(const BitString& other) {
        for (std::size_t i = 0; i < other.size_; ++i) push_back(other.get(i));
    }

    std::size_t count_ones() const {
        std::size_t total = 0;
        for (std::uint64_t w : words_) total += std::popcount(w);
        return total;
    }

    std::size_t count_zeros() const { return size_ - count_ones(); }

    BitString slice(std::size_t pos, std::size_t len) const {
        if (pos + len > size_) throw DimensionError("slice past end of bit string");
        BitString out;
        out.reserve(len);
        for (std::size_t i = 0; i < len; ++i) out.push_back(get(pos + i));
        return out;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) s.push_back(get(i) ? '1' : '0');
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) = default;

private:
    friend BitString xor_strings(const BitString& x, const BitString& y);

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// z_t = x_t xor y_t. Involutive: xor_strings(xor_strings(x, y), y) == x.
inline BitString xor_strings(const BitString& x, const BitString& y) {
    if (x.size() != y.size())
        throw DimensionError("xor of bit strings with different lengths (" +
                             std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    BitString z = x;
    for (std::size_t w = 0; w < z.words_.size(); ++w) z.words_[w] ^= y.words_[w];
    return z;
}

}  // namespace corrbits
