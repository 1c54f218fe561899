#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sdm {

/// Suffix array by induced sorting. A proper prefix sorts before its extensions,
/// so a text ending in its smallest byte has that last suffix at rank 0.
std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint8_t> text);

std::vector<std::uint32_t> inverse_permutation(std::span<const std::uint32_t> sa);

/// lcp[i] = common prefix length of the suffixes at ranks i-1 and i; lcp[0] = 0.
/// With a stop byte, comparisons end before that byte (each occurrence acts as a
/// distinct symbol).
std::vector<std::uint32_t> build_lcp(std::span<const std::uint8_t> text, std::span<const std::uint32_t> sa,
                                     std::optional<std::uint8_t> stop_byte = std::nullopt);

}  // namespace sdm
