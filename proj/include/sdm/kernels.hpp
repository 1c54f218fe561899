#pragma once

// Data-parallel inner loops used by the succinct structures and the matcher.
// Every kernel has a scalar reference version; wider variants are chosen at
// runtime from what the CPU reports and must agree with the reference
// bit-for-bit (see tests/test_kernels.cpp).

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sdm::simd {

enum class Isa : std::uint8_t { scalar, avx2 };

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct KernelTable {
    Isa isa;
    /// Sum of popcounts over `n` words.
    std::uint64_t (*popcount_words)(const std::uint64_t* words, std::size_t n);
    /// Position (0-based) of the k-th set bit of `word`, k in [1, popcount].
    unsigned (*select_in_word)(std::uint64_t word, unsigned k);
    /// First index i with values[i] <= threshold, or npos.
    std::size_t (*find_first_le)(const std::int32_t* values, std::size_t n, std::int32_t threshold);
    /// Last index i with values[i] <= threshold, or npos.
    std::size_t (*find_last_le)(const std::int32_t* values, std::size_t n, std::int32_t threshold);
    /// Index of the leftmost minimum; n must be > 0.
    std::size_t (*argmin_u32)(const std::uint32_t* values, std::size_t n);
    /// Length of the common prefix of a[0..n) and b[0..n).
    std::size_t (*mismatch_bytes)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Whether `isa` was compiled in and is supported by this CPU.
bool available(Isa isa);

/// Table for a specific ISA; falls back to scalar when unavailable.
const KernelTable& kernels_for(Isa isa);

/// Process-wide table. Picks the widest available ISA unless the SDM_ISA
/// environment variable names another one ("scalar", "avx2").
const KernelTable& kernels();

std::vector<Isa> available_isas();
std::string_view isa_name(Isa isa);

namespace detail {
// Defined in kernels_avx2.cpp when the compiler supports AVX2; null otherwise.
const KernelTable* avx2_table();
}  // namespace detail

}  // namespace sdm::simd
