#include "sdm/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace sdm::simd {
namespace {

std::uint64_t popcount_words_scalar(const std::uint64_t* words, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

unsigned select_in_word_scalar(std::uint64_t word, unsigned k) {
    // Clear the lowest k-1 set bits, then the answer is the next one.
    for (unsigned i = 1; i < k; ++i) word &= word - 1;
    return static_cast<unsigned>(std::countr_zero(word));
}

std::size_t find_first_le_scalar(const std::int32_t* values, std::size_t n, std::int32_t threshold) {
    for (std::size_t i = 0; i < n; ++i)
        if (values[i] <= threshold) return i;
    return npos;
}

std::size_t find_last_le_scalar(const std::int32_t* values, std::size_t n, std::int32_t threshold) {
    for (std::size_t i = n; i-- > 0;)
        if (values[i] <= threshold) return i;
    return npos;
}

std::size_t argmin_u32_scalar(const std::uint32_t* values, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (values[i] < values[best]) best = i;
    return best;
}

std::size_t mismatch_bytes_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

constexpr KernelTable kScalar{
    Isa::scalar,          popcount_words_scalar, select_in_word_scalar, find_first_le_scalar,
    find_last_le_scalar,  argmin_u32_scalar,     mismatch_bytes_scalar,
};

const KernelTable& pick_default() {
    if (const char* forced = std::getenv("SDM_ISA")) {
        std::string name(forced);
        if (name == "scalar") return kScalar;
        if (name == "avx2") return kernels_for(Isa::avx2);
    }
    if (available(Isa::avx2)) return *detail::avx2_table();
    return kScalar;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

bool available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
                   __builtin_cpu_supports("bmi") && __builtin_cpu_supports("bmi2") && __builtin_cpu_supports("popcnt");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
    if (isa == Isa::avx2 && available(Isa::avx2)) return *detail::avx2_table();
    return kScalar;
}

const KernelTable& kernels() {
    static const KernelTable& table = pick_default();
    return table;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (available(Isa::avx2)) out.push_back(Isa::avx2);
    return out;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace sdm::simd
