#include <gtest/gtest.h>

#include <bit>
#include <limits>
#include <random>
#include <vector>

#include "sdm/kernels.hpp"
#include "support.hpp"

using namespace sdm;

namespace {

class KernelEquivalence : public ::testing::TestWithParam<simd::Isa> {
protected:
    const simd::KernelTable& ref = simd::scalar_kernels();
    const simd::KernelTable& alt() const { return simd::kernels_for(GetParam()); }
    std::mt19937_64 rng{sdm::testing::test_seed()};
};

TEST_P(KernelEquivalence, PopcountWords) {
    for (std::size_t n = 0; n < 70; ++n) {
        std::vector<std::uint64_t> words(n);
        for (auto& w : words) w = rng();
        ASSERT_EQ(ref.popcount_words(words.data(), n), alt().popcount_words(words.data(), n)) << "n=" << n;
    }
    std::vector<std::uint64_t> ones(33, ~std::uint64_t{0});
    EXPECT_EQ(alt().popcount_words(ones.data(), ones.size()), 33u * 64u);
}

TEST_P(KernelEquivalence, SelectInWord) {
    for (int trial = 0; trial < 2000; ++trial) {
        std::uint64_t w = rng() & rng();
        if (trial % 7 == 0) w = rng();
        if (w == 0) w = 1;
        const unsigned pc = static_cast<unsigned>(std::popcount(w));
        for (unsigned k = 1; k <= pc; ++k) ASSERT_EQ(ref.select_in_word(w, k), alt().select_in_word(w, k));
    }
    EXPECT_EQ(alt().select_in_word(std::uint64_t{1} << 63, 1), 63u);
}

TEST_P(KernelEquivalence, ExcessScans) {
    std::uniform_int_distribution<int> val(-20, 20);
    for (std::size_t n = 0; n < 80; ++n) {
        std::vector<std::int32_t> v(n);
        for (auto& x : v) x = val(rng);
        for (int thr = -22; thr <= 22; thr += 3) {
            ASSERT_EQ(ref.find_first_le(v.data(), n, thr), alt().find_first_le(v.data(), n, thr));
            ASSERT_EQ(ref.find_last_le(v.data(), n, thr), alt().find_last_le(v.data(), n, thr));
        }
    }
    std::vector<std::int32_t> extreme{std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::min()};
    EXPECT_EQ(alt().find_first_le(extreme.data(), 2, 0), 1u);
}

TEST_P(KernelEquivalence, ArgminLeftmost) {
    std::uniform_int_distribution<std::uint32_t> val(0, 9);
    for (std::size_t n = 1; n < 300; n += 7) {
        std::vector<std::uint32_t> v(n);
        for (auto& x : v) x = val(rng) + 1000000u * (rng() % 3 == 0);
        ASSERT_EQ(ref.argmin_u32(v.data(), n), alt().argmin_u32(v.data(), n)) << "n=" << n;
    }
    std::vector<std::uint32_t> big(40, 0xffffffffu);
    big[37] = 0xfffffffeu;
    EXPECT_EQ(alt().argmin_u32(big.data(), big.size()), 37u);
}

TEST_P(KernelEquivalence, MismatchBytes) {
    for (std::size_t n = 0; n < 130; ++n) {
        std::vector<std::uint8_t> a(n), b;
        for (auto& x : a) x = static_cast<std::uint8_t>(rng() % 4);
        b = a;
        ASSERT_EQ(alt().mismatch_bytes(a.data(), b.data(), n), n);
        if (n == 0) continue;
        const std::size_t at = rng() % n;
        b[at] ^= 0x40;
        ASSERT_EQ(ref.mismatch_bytes(a.data(), b.data(), n), at);
        ASSERT_EQ(alt().mismatch_bytes(a.data(), b.data(), n), at);
    }
}

INSTANTIATE_TEST_SUITE_P(AllIsas, KernelEquivalence, ::testing::ValuesIn(simd::available_isas()),
                         [](const auto& info) { return std::string(simd::isa_name(info.param)); });

TEST(KernelDispatch, ScalarAlwaysAvailable) {
    EXPECT_TRUE(simd::available(simd::Isa::scalar));
    EXPECT_EQ(simd::kernels_for(simd::Isa::scalar).isa, simd::Isa::scalar);
    EXPECT_TRUE(simd::available(simd::kernels().isa));
}

}  // namespace
