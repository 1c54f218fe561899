// AVX2 + BMI2 variants. This file is compiled with -mavx2 -mbmi2 -mpopcnt when
// the toolchain targets x86; otherwise only the null table accessor remains.

#include "sdm/kernels.hpp"

#if defined(__AVX2__) && defined(__BMI2__)

#include <immintrin.h>

#include <bit>
#include <limits>

namespace sdm::simd {
namespace {

// Nibble-lookup popcount (Mula), accumulated through SAD against zero.
std::uint64_t popcount_words_avx2(const std::uint64_t* words, std::size_t n) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        const __m256i lo = _mm256_and_si256(v, low_mask);
        const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
        const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(words[i]));
    return total;
}

unsigned select_in_word_bmi2(std::uint64_t word, unsigned k) {
    return static_cast<unsigned>(_tzcnt_u64(_pdep_u64(std::uint64_t{1} << (k - 1), word)));
}

std::size_t find_first_le_avx2(const std::int32_t* values, std::size_t n, std::int32_t threshold) {
    const __m256i thr = _mm256_set1_epi32(threshold);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
        const unsigned gt = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(v, thr))));
        const unsigned le = ~gt & 0xffu;
        if (le != 0) return i + static_cast<std::size_t>(std::countr_zero(le));
    }
    for (; i < n; ++i)
        if (values[i] <= threshold) return i;
    return npos;
}

std::size_t find_last_le_avx2(const std::int32_t* values, std::size_t n, std::int32_t threshold) {
    const __m256i thr = _mm256_set1_epi32(threshold);
    std::size_t end = n;
    for (; end >= 8; end -= 8) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + end - 8));
        const unsigned gt = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(v, thr))));
        const unsigned le = ~gt & 0xffu;
        if (le != 0) return end - 8 + static_cast<std::size_t>(31 - std::countl_zero(le));
    }
    for (std::size_t i = end; i-- > 0;)
        if (values[i] <= threshold) return i;
    return npos;
}

std::size_t argmin_u32_avx2(const std::uint32_t* values, std::size_t n) {
    if (n < 16) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (values[i] < values[best]) best = i;
        return best;
    }
    __m256i mins = _mm256_set1_epi32(-1);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        mins = _mm256_min_epu32(mins, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i)));
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), mins);
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t lane : lanes) best = lane < best ? lane : best;
    for (; i < n; ++i) best = values[i] < best ? values[i] : best;

    const __m256i target = _mm256_set1_epi32(static_cast<int>(best));
    for (i = 0; i + 8 <= n; i += 8) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
        const unsigned eq = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, target))));
        if (eq != 0) return i + static_cast<std::size_t>(std::countr_zero(eq));
    }
    for (; i < n; ++i)
        if (values[i] == best) return i;
    return 0;  // unreachable
}

std::size_t mismatch_bytes_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        if (eq != 0xffffffffu) return i + static_cast<std::size_t>(std::countr_zero(~eq));
    }
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

constexpr KernelTable kAvx2{
    Isa::avx2,          popcount_words_avx2, select_in_word_bmi2, find_first_le_avx2,
    find_last_le_avx2,  argmin_u32_avx2,     mismatch_bytes_avx2,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace sdm::simd

#else

namespace sdm::simd::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace sdm::simd::detail

#endif
