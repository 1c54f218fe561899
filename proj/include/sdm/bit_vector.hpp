#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sdm/serialize.hpp"

namespace sdm {

/// Immutable bit sequence with constant-time rank and sampled select.
///
/// Bit i lives in word i / 64 at bit position i % 64 (LSB first). The rank
/// directory holds absolute 1-counts per 512-bit superblock; the remaining
/// words are popcounted on the fly. Select keeps the superblock of every
/// 512th one and finishes with an in-word select.
class BitVector {
public:
    static constexpr std::size_t kSuperblockBits = 512;
    static constexpr std::size_t kWordsPerSuperblock = kSuperblockBits / 64;
    static constexpr std::size_t kSelectSample = 512;

    BitVector() { build_directories(); }
    BitVector(std::vector<std::uint64_t> words, std::size_t length);
    explicit BitVector(const std::vector<bool>& bits);

    /// Parses a string of '0'/'1' characters; also accepts '(' and ')'.
    static BitVector from_string(std::string_view bits);

    std::size_t size() const { return length_; }
    bool empty() const { return length_ == 0; }
    std::size_t count_ones() const { return super_.back(); }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    bool access(std::size_t i) const {
        if (i >= length_) throw std::out_of_range("BitVector::access: position past end");
        return (*this)[i];
    }

    /// Number of ones in positions [0, i).
    std::size_t rank1(std::size_t i) const {
        if (i > length_) throw std::out_of_range("BitVector::rank1: index past end");
        return rank1_unchecked(i);
    }
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    std::size_t rank1_unchecked(std::size_t i) const {
        const std::size_t sb = i / kSuperblockBits;
        std::size_t r = super_[sb];
        const std::size_t word = i >> 6;
        for (std::size_t w = sb * kWordsPerSuperblock; w < word; ++w) r += static_cast<std::size_t>(std::popcount(words_[w]));
        if (const unsigned rem = i & 63; rem != 0)
            r += static_cast<std::size_t>(std::popcount(words_[word] & ((std::uint64_t{1} << rem) - 1)));
        return r;
    }

    /// 0-based position of the k-th one, k in [1, count_ones()].
    std::size_t select1(std::size_t k) const;

    /// First position >= i holding a one, or size() if none.
    std::size_t next_one(std::size_t i) const;
    /// Last position < i holding a zero, or npos if none.
    std::size_t prev_zero(std::size_t i) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::span<const std::uint64_t> words() const { return words_; }
    std::string to_string() const;

    /// Bits of payload plus directories.
    std::size_t size_in_bytes() const;

    void save(ByteWriter& out) const;
    static BitVector load(ByteReader& in);

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }

private:
    void build_directories();

    std::vector<std::uint64_t> words_;
    std::size_t length_ = 0;
    std::vector<std::uint32_t> super_;          // ones before each superblock, plus total
    std::vector<std::uint32_t> select_sample_;  // superblock holding the (j*512+1)-th one
};

/// Append-only construction buffer; freeze() builds the directories once.
class BitVectorBuilder {
public:
    BitVectorBuilder() = default;
    explicit BitVectorBuilder(std::size_t length) : words_((length + 63) / 64, 0), length_(length) {}

    void push_back(bool bit) {
        if ((length_ & 63) == 0) words_.push_back(0);
        if (bit) words_.back() |= std::uint64_t{1} << (length_ & 63);
        ++length_;
    }
    void set(std::size_t i, bool bit = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (bit) words_[i >> 6] |= mask;
        else words_[i >> 6] &= ~mask;
    }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    std::size_t size() const { return length_; }
    void reserve(std::size_t bits) { words_.reserve((bits + 63) / 64); }

    BitVector freeze() && { return BitVector(std::move(words_), length_); }

private:
    std::vector<std::uint64_t> words_;
    std::size_t length_ = 0;
};

}  // namespace sdm
