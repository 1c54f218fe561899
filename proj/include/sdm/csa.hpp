#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdm/bit_vector.hpp"
#include "sdm/int_vector.hpp"
#include "sdm/serialize.hpp"

namespace sdm {

enum class CsaProfile : std::uint8_t { plain = 0, sampled = 1 };

const char* profile_name(CsaProfile p);

/// Suffix-array access, inverse and psi over a text that is not kept.
///
/// psi(i) = isa[(sa[i] + 1) mod n]. The plain profile stores sa and isa
/// verbatim. The sampled profile stores psi as gamma-coded gaps inside each
/// first-character band, sa at every text position divisible by the sample rate
/// (plus the last one), and isa at every sample-rate-th text position.
class CompressedSuffixArray {
public:
    static constexpr std::size_t kDefaultSampleRate = 32;
    static constexpr std::size_t kPsiBlock = 16;

    CompressedSuffixArray() = default;
    CompressedSuffixArray(std::span<const std::uint8_t> text, std::span<const std::uint32_t> sa, CsaProfile profile,
                          std::size_t sample_rate = kDefaultSampleRate);

    std::size_t size() const { return n_; }
    CsaProfile profile() const { return profile_; }
    std::size_t sample_rate() const { return sample_rate_; }

    /// sa[rank]; throws std::out_of_range.
    std::size_t access(std::size_t rank) const;
    /// isa[pos]; throws std::out_of_range.
    std::size_t inverse(std::size_t pos) const;
    std::size_t psi(std::size_t rank) const;

    /// First byte of the suffix at `rank`, from the character counts alone.
    std::uint8_t first_char(std::size_t rank) const;
    /// Text byte at `pos`; throws std::out_of_range.
    std::uint8_t extract_char(std::size_t pos) const;
    std::string extract(std::size_t pos, std::size_t length) const;
    /// Byte at offset `depth` of the suffix at `rank`; requires sa[rank] + depth < n.
    std::uint8_t char_at(std::size_t rank, std::size_t depth) const;
    /// Rank of the suffix starting `depth` bytes after the one at `rank`.
    std::size_t shifted_rank(std::size_t rank, std::size_t depth) const;

    /// Ranks of suffixes starting with byte c form [band_begin(c), band_end(c)).
    std::size_t band_begin(std::uint8_t c) const { return counts_[c]; }
    std::size_t band_end(std::uint8_t c) const { return counts_[c + 1]; }

    std::size_t size_in_bytes() const;
    void save(ByteWriter& out) const;
    static CompressedSuffixArray load(ByteReader& in);

private:
    std::size_t psi_sampled(std::size_t rank) const;
    std::size_t access_sampled(std::size_t rank) const;
    std::size_t inverse_sampled(std::size_t pos) const;
    void encode_psi(std::span<const std::uint32_t> psi);
    void build_char_index();

    std::size_t n_ = 0;
    CsaProfile profile_ = CsaProfile::plain;
    std::size_t sample_rate_ = 1;
    std::array<std::uint32_t, 257> counts_{};  // counts_[c] = suffixes starting with a byte < c
    std::vector<std::uint8_t> chars_;          // bytes present, ascending
    std::vector<std::uint32_t> char_starts_;   // band start per entry of chars_

    // plain profile
    PackedIntVector sa_;
    PackedIntVector isa_;

    // sampled profile
    std::vector<std::uint64_t> psi_bits_;
    PackedIntVector psi_block_value_;
    PackedIntVector psi_block_offset_;
    BitVector sa_marked_;  // ranks whose sa value is stored
    PackedIntVector sa_samples_;
    PackedIntVector isa_samples_;
};

}  // namespace sdm
