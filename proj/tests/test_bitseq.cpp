#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdm/balanced_parens.hpp"
#include "sdm/bit_vector.hpp"
#include "sdm/errors.hpp"
#include "support.hpp"

using namespace sdm;
using sdm::testing::ParenOracle;

namespace {

TEST(BitVector, WorkedExample) {
    const auto bv = BitVector::from_string("10110100");
    EXPECT_EQ(bv.rank1(4), 3u);
    EXPECT_EQ(bv.rank1(8), 4u);
    EXPECT_EQ(bv.select1(2), 2u);
    EXPECT_EQ(bv.select1(4), 5u);
    EXPECT_EQ(bv.rank0(8), 4u);
    EXPECT_EQ(bv.to_string(), "10110100");
}

TEST(BitVector, ErrorPaths) {
    const auto bv = BitVector::from_string("10110100");
    EXPECT_THROW(bv.rank1(9), std::out_of_range);
    EXPECT_THROW(bv.select1(0), std::out_of_range);
    EXPECT_THROW(bv.select1(5), std::out_of_range);
    EXPECT_THROW(bv.access(8), std::out_of_range);
    EXPECT_THROW(BitVector::from_string("10x1"), std::invalid_argument);
}

TEST(BitVector, EmptyAndAllZeros) {
    BitVector empty;
    EXPECT_EQ(empty.size(), 0u);
    EXPECT_EQ(empty.rank1(0), 0u);
    EXPECT_THROW(empty.select1(1), std::out_of_range);
    const BitVector zeros(std::vector<bool>(1000, false));
    EXPECT_EQ(zeros.rank1(1000), 0u);
    EXPECT_EQ(zeros.next_one(0), 1000u);
    EXPECT_EQ(zeros.prev_zero(1000), 999u);
}

TEST(BitVector, DifferentialAgainstLinearScan) {
    std::mt19937_64 rng(sdm::testing::test_seed());
    std::uniform_int_distribution<std::size_t> len(1, 2500);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto bits = sdm::testing::random_bits(rng, len(rng), dens(rng));
        const BitVector bv(bits);
        std::size_t ones = 0;
        for (std::size_t i = 0; i <= bits.size(); ++i) {
            ASSERT_EQ(bv.rank1(i), ones) << "trial " << trial << " i=" << i;
            if (i < bits.size()) {
                ASSERT_EQ(bv[i], bits[i]);
                if (bits[i]) {
                    ++ones;
                    ASSERT_EQ(bv.select1(ones), i);
                }
            }
        }
        ASSERT_EQ(bv.count_ones(), ones);
        const std::size_t probe = rng() % (bits.size() + 1);
        std::size_t expect_next = probe;
        while (expect_next < bits.size() && !bits[expect_next]) ++expect_next;
        ASSERT_EQ(bv.next_one(probe), expect_next);
        std::size_t expect_prev = BitVector::npos;
        for (std::size_t i = probe; i-- > 0;)
            if (!bits[i]) {
                expect_prev = i;
                break;
            }
        ASSERT_EQ(bv.prev_zero(probe), expect_prev);
    }
}

TEST(BitVector, LongSequencesCrossManySuperblocks) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 1);
    for (double density : {0.001, 0.02, 0.5, 0.98}) {
        const auto bits = sdm::testing::random_bits(rng, 300000, density);
        const BitVector bv(bits);
        std::size_t ones = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (i % 97 == 0) {
                ASSERT_EQ(bv.rank1(i), ones);
            }
            if (bits[i] && ++ones % 13 == 1) {
                ASSERT_EQ(bv.select1(ones), i);
            }
        }
        ASSERT_EQ(bv.rank1(bits.size()), ones);
        if (ones > 0) {
            ASSERT_EQ(bv.select1(ones), sdm::testing::naive_select1(bits, ones));
        }
    }
}

TEST(BitVector, SerializationRoundTrip) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 2);
    const BitVector bv(sdm::testing::random_bits(rng, 5000, 0.3));
    ByteWriter w;
    bv.save(w);
    ByteReader r(w.bytes());
    const auto back = BitVector::load(r);
    EXPECT_TRUE(r.done());
    EXPECT_EQ(back, bv);
    EXPECT_EQ(back.select1(100), bv.select1(100));

    ByteReader truncated(std::span(w.bytes()).first(w.bytes().size() - 3));
    EXPECT_THROW(BitVector::load(truncated), FormatError);
}

TEST(BalancedParens, WorkedExample) {
    const auto bp = BalancedParens::from_string("(()(()))");
    EXPECT_EQ(bp.find_close(0), 7u);
    EXPECT_EQ(bp.find_close(3), 6u);
    EXPECT_EQ(bp.find_open(7), 0u);
    EXPECT_EQ(bp.find_open(5), 4u);
    EXPECT_EQ(bp.enclose(4), 3u);
    EXPECT_EQ(bp.enclose(1), 0u);
    EXPECT_FALSE(bp.enclose(0).has_value());
}

TEST(BalancedParens, SinglePair) {
    const auto bp = BalancedParens::from_string("()");
    EXPECT_EQ(bp.find_close(0), 1u);
    EXPECT_EQ(bp.find_open(1), 0u);
    EXPECT_FALSE(bp.enclose(0).has_value());
}

TEST(BalancedParens, ErrorPaths) {
    const auto bp = BalancedParens::from_string("(()(()))");
    EXPECT_THROW(bp.find_close(2), WrongSideError);
    EXPECT_THROW(bp.find_open(0), WrongSideError);
    EXPECT_THROW(bp.enclose(7), WrongSideError);
    EXPECT_THROW(bp.find_close(8), std::out_of_range);
    EXPECT_THROW(bp.find_open(8), std::out_of_range);
    EXPECT_THROW(BalancedParens::from_string("(()"), std::invalid_argument);
    EXPECT_THROW(BalancedParens::from_string("())("), std::invalid_argument);
}

void check_against_stack(const std::string& s, bool every_position, std::mt19937_64& rng) {
    const auto bp = BalancedParens::from_string(s);
    const ParenOracle oracle(s);
    auto check = [&](std::size_t i) {
        if (s[i] == '(') {
            ASSERT_EQ(bp.find_close(i), oracle.match[i]) << "find_close(" << i << ")";
            const auto e = bp.enclose(i);
            ASSERT_EQ(e.has_value(), oracle.parent[i].has_value()) << "enclose(" << i << ")";
            if (e) {
                ASSERT_EQ(*e, *oracle.parent[i]) << "enclose(" << i << ")";
            }
        } else {
            ASSERT_EQ(bp.find_open(i), oracle.match[i]) << "find_open(" << i << ")";
        }
    };
    if (every_position) {
        for (std::size_t i = 0; i < s.size(); ++i) check(i);
    } else {
        for (int q = 0; q < 20000; ++q) check(rng() % s.size());
    }
}

TEST(BalancedParens, DifferentialAgainstStackOracle) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 3);
    std::uniform_int_distribution<std::size_t> pairs(1, 600);
    for (int trial = 0; trial < 10000; ++trial) {
        SCOPED_TRACE(trial);
        check_against_stack(sdm::testing::random_parens(rng, pairs(rng)), true, rng);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

TEST(BalancedParens, LongSequencesUseBlockJumps) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 4);
    const std::size_t deep = 60000;
    check_against_stack(std::string(deep, '(') + std::string(deep, ')'), false, rng);
    std::string flat;
    for (std::size_t i = 0; i < deep; ++i) flat += "()";
    check_against_stack("(" + flat + ")", false, rng);
    for (double bias : {0.5, 0.7, 0.9}) check_against_stack(sdm::testing::random_walk_parens(rng, 150000, bias), false, rng);
    // Outermost pair enclosing very long sibling runs forces min-tree jumps.
    std::string wide = "(" + std::string(40000, '(') + std::string(40000, ')') + flat + ")";
    const auto bp = BalancedParens::from_string(wide);
    EXPECT_EQ(bp.find_close(0), wide.size() - 1);
    EXPECT_EQ(bp.find_open(wide.size() - 1), 0u);
    EXPECT_EQ(bp.enclose(wide.size() - 3), 0u);
}

TEST(BalancedParens, SerializationRoundTrip) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 5);
    const auto s = sdm::testing::random_parens(rng, 800);
    const auto bp = BalancedParens::from_string(s);
    ByteWriter w;
    bp.save(w);
    ByteReader r(w.bytes());
    const auto back = BalancedParens::load(r);
    EXPECT_EQ(back.to_string(), s);
    EXPECT_EQ(back.find_close(0), bp.find_close(0));

    ByteWriter bad;
    BitVector::from_string("(((").save(bad);
    ByteReader rb(bad.bytes());
    EXPECT_THROW(BalancedParens::load(rb), FormatError);
}

}  // namespace
