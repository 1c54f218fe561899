#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdm/bit_vector.hpp"
#include "sdm/serialize.hpp"

namespace sdm {

/// Balanced-parentheses sequence over a BitVector (1 = '(', 0 = ')').
///
/// Matching-parenthesis queries are excess searches. With P(k) the excess of
/// the prefix [0, k), find_close(i) is the smallest k > i with P(k) <= P(i),
/// find_open and enclose are the mirrored backward searches. Searches scan the
/// current 512-bit block byte-wise, then jump over blocks using per-block
/// minimum excess (a short SIMD scan, then a min-tree for long jumps).
class BalancedParens {
public:
    static constexpr std::size_t kBlockBits = 512;

    BalancedParens() { build_support(); }
    /// Throws std::invalid_argument if `bits` is not well formed.
    explicit BalancedParens(BitVector bits);
    static BalancedParens from_string(std::string_view parens);

    std::size_t size() const { return bits_.size(); }
    std::size_t node_count() const { return bits_.size() / 2; }
    bool is_open(std::size_t i) const { return bits_[i]; }
    const BitVector& bits() const { return bits_; }

    /// Excess of the prefix [0, k): opens minus closes.
    std::int64_t excess(std::size_t k) const {
        return 2 * static_cast<std::int64_t>(bits_.rank1_unchecked(k)) - static_cast<std::int64_t>(k);
    }

    std::size_t find_close(std::size_t i) const;
    std::size_t find_open(std::size_t i) const;
    /// Open position of the tightest pair strictly enclosing the pair opened at i.
    std::optional<std::size_t> enclose(std::size_t i) const;

    /// Smallest k' > k with P(k') <= target, or npos.
    std::size_t fwd_search(std::size_t k, std::int64_t target) const;
    /// Largest k' < k with P(k') <= target, or npos.
    std::size_t bwd_search(std::size_t k, std::int64_t target) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::string to_string() const;
    std::size_t size_in_bytes() const;

    void save(ByteWriter& out) const { bits_.save(out); }
    static BalancedParens load(ByteReader& in);

private:
    void build_support();
    std::size_t scan_forward(std::size_t from, std::size_t limit, std::int64_t cur, std::int64_t target) const;
    std::size_t scan_backward(std::size_t from, std::size_t limit, std::int64_t cur, std::int64_t target) const;
    std::size_t tree_first_le(std::size_t from, std::int64_t target) const;
    std::size_t tree_last_le(std::size_t to, std::int64_t target) const;
    std::uint8_t byte_at(std::size_t bit) const {
        return static_cast<std::uint8_t>(bits_.words()[bit >> 6] >> (bit & 63));
    }

    BitVector bits_;
    std::size_t blocks_ = 0;
    std::vector<std::int32_t> block_min_;  // min P(k) over k in [b*512, min((b+1)*512, n)]
    std::vector<std::int32_t> tree_;       // min-tree over block_min_, leaves at [leaf_base_, ...)
    std::size_t leaf_base_ = 1;
};

}  // namespace sdm
