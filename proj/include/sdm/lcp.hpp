#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdm/int_vector.hpp"
#include "sdm/serialize.hpp"

namespace sdm {

enum class LcpProfile : std::uint8_t { plain = 0, compact = 1 };

const char* profile_name(LcpProfile p);

/// LCP values. "plain" keeps one 32-bit word per entry; "compact" keeps one
/// byte per entry, with 255 meaning "look up the sorted escape table".
class LcpStore {
public:
    static constexpr std::uint8_t kEscape = 255;

    LcpStore() = default;
    LcpStore(std::span<const std::uint32_t> lcp, LcpProfile profile);

    std::size_t size() const { return profile_ == LcpProfile::plain ? words_.size() : bytes_.size(); }
    LcpProfile profile() const { return profile_; }

    std::uint32_t operator[](std::size_t i) const {
        if (profile_ == LcpProfile::plain) return words_[i];
        const std::uint8_t b = bytes_[i];
        return b != kEscape ? b : escaped(i);
    }
    std::uint32_t at(std::size_t i) const;

    /// Copies entries [begin, begin + count) into out.
    void decode(std::size_t begin, std::size_t count, std::uint32_t* out) const;
    /// Contiguous storage when the profile is plain, else empty.
    std::span<const std::uint32_t> plain_words() const { return words_; }

    std::size_t size_in_bytes() const;
    void save(ByteWriter& out) const;
    static LcpStore load(ByteReader& in);

private:
    std::uint32_t escaped(std::size_t i) const;

    LcpProfile profile_ = LcpProfile::plain;
    std::vector<std::uint32_t> words_;
    std::vector<std::uint8_t> bytes_;
    std::vector<std::uint32_t> escape_pos_;  // ascending
    std::vector<std::uint32_t> escape_val_;
};

/// Leftmost range-minimum over an LcpStore. The plain profile is a sparse table
/// over all entries (level k holds offsets of k bits); the compact profile is a
/// sparse table over 256-entry block minima plus an in-block scan.
class LcpRmq {
public:
    static constexpr std::size_t kBlock = 256;

    LcpRmq() = default;
    LcpRmq(const LcpStore& lcp, LcpProfile profile);

    /// Index of the leftmost minimum in [i, j] (inclusive, i <= j).
    std::size_t argmin(const LcpStore& lcp, std::size_t i, std::size_t j) const;

    LcpProfile profile() const { return profile_; }
    std::size_t size_in_bytes() const;

private:
    std::size_t scan(const LcpStore& lcp, std::size_t i, std::size_t j) const;
    template <class Values>
    void build_table(const Values& values, std::size_t n);
    template <class Values>
    std::size_t table_query(const Values& values, std::size_t i, std::size_t j) const;

    LcpProfile profile_ = LcpProfile::plain;
    std::size_t n_ = 0;
    std::vector<PackedIntVector> levels_;     // levels_[k][i] = argmin over [i, i + 2^(k+1)) minus i
    std::vector<std::uint32_t> block_min_;    // compact only: minimum of each block
    std::vector<std::uint32_t> block_pos_;    // compact only: leftmost argmin of each block
};

}  // namespace sdm
