#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "sdm/gst.hpp"
#include "support.hpp"

using namespace sdm;
using Tree = GeneralizedSuffixTree;

namespace {

const char kD = static_cast<char>(kDelimiter);

Tree build(const std::vector<std::string>& patterns) { return Tree(Dictionary::ingest(patterns)); }

/// Node whose incoming edge contains the end of `label` (the locus of label).
Tree::NodeId locus(const Tree& t, const std::string& label) {
    Tree::NodeId v = t.root();
    std::size_t i = 0;
    while (i < label.size()) {
        const auto c = t.child(v, static_cast<std::uint8_t>(label[i]));
        if (!c) return Tree::kNone;
        v = *c;
        for (std::size_t k = 0; k < t.edge_length(v) && i < label.size(); ++k, ++i)
            if (t.edge_char(v, k) != static_cast<std::uint8_t>(label[i])) return Tree::kNone;
    }
    return v;
}

std::size_t nodes_on_path(const Tree& t, Tree::NodeId v) {
    std::size_t n = 1;
    for (; v != t.root(); v = t.parent(v)) ++n;
    return n;
}

TEST(Gst, SinglePatternOfOneChar) {
    const auto t = build({"a"});
    EXPECT_EQ(t.node_count(), 3u);
    EXPECT_EQ(t.children(t.root()).size(), 2u);
    for (const auto& c : t.children(t.root())) EXPECT_TRUE(t.is_leaf(c.node));
    EXPECT_EQ(t.suffix_link(t.root()), t.root());
}

TEST(Gst, WorkedDictionary) {
    const auto t = build({"a", "ate", "bath", "later"});
    const auto a = locus(t, "a");
    const auto ate = locus(t, "ate");
    ASSERT_NE(a, Tree::kNone);
    ASSERT_NE(ate, Tree::kNone);
    EXPECT_FALSE(t.is_leaf(a));
    EXPECT_FALSE(t.is_leaf(ate));
    EXPECT_EQ(t.depth(a), 1u);
    EXPECT_EQ(t.depth(ate), 3u);
    EXPECT_EQ(t.path_label(ate), "ate");
    EXPECT_TRUE(t.is_marked(a));
    EXPECT_TRUE(t.is_marked(ate));
    EXPECT_EQ(t.marked_count(), 2u);
    EXPECT_EQ(t.marked_pattern(ate), 1u);

    EXPECT_EQ(t.mark(locus(t, "ater")), ate);
    EXPECT_EQ(t.mark(locus(t, "ath")), a);
    EXPECT_EQ(t.mark(t.root()), Tree::kNone);

    const auto b = t.child(t.root(), 'b');
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(t.path_label(*b), std::string("bath") + kD);
    EXPECT_TRUE(t.first_leaf(*b));
    EXPECT_EQ(t.child(t.root(), 'a'), a);
    EXPECT_FALSE(t.child(t.root(), 'z').has_value());
    EXPECT_FALSE(t.child(ate, 'q').has_value());

    const auto te = locus(t, "te");
    ASSERT_FALSE(t.is_leaf(te));
    EXPECT_EQ(t.path_label(te), "te");
    EXPECT_EQ(t.suffix_link(ate), te);
    EXPECT_EQ(t.suffix_link(t.leaf_of(2, 0)), t.leaf_of(2, 1));
    EXPECT_EQ(t.suffix_link(t.leaf_of(2, 4)), t.root());

    const auto e = t.edge_data(t.leaf_of(3, 0));
    EXPECT_EQ(static_cast<char>(e[0]), 'l');
}

void check_structure(const std::vector<std::string>& patterns) {
    const auto dict = Dictionary::ingest(patterns);
    const Tree t(dict);
    const std::size_t ell = dict.length();
    ASSERT_LE(t.node_count(), 2 * ell);

    for (std::size_t k = 0; k < dict.pattern_count(); ++k) {
        const std::string& p = dict.pattern(k);
        for (std::size_t j = 0; j <= p.size(); ++j) {
            const auto leaf = t.leaf_of(k, j);
            ASSERT_TRUE(t.is_leaf(leaf));
            ASSERT_EQ(t.path_label(leaf), p.substr(j) + kD);
            ASSERT_EQ(t.string_num(leaf), k);
            ASSERT_EQ(t.suffix_start(leaf), j);
            ASSERT_EQ(t.first_leaf(leaf), j == 0);
            ASSERT_EQ(t.suffix_link(leaf), j < p.size() ? t.leaf_of(k, j + 1) : t.root());
        }
    }

    const auto expected = sdm::testing::naive_internal_labels(dict.patterns());
    std::set<std::string> labels;
    std::set<std::string> pattern_set(dict.patterns().begin(), dict.patterns().end());
    std::size_t leaves = 0;
    for (Tree::NodeId v = 0; v < t.node_count(); ++v) {
        const std::string label = t.path_label(v);
        ASSERT_EQ(t.depth(v), label.size());
        if (v != t.root()) {
            ASSERT_EQ(t.depth(v), t.depth(t.parent(v)) + t.edge_length(v));
            ASSERT_EQ(t.path_label(t.suffix_link(v)), label.substr(1)) << "link of " << label;
        }
        if (t.is_leaf(v)) {
            ++leaves;
            continue;
        }
        if (v != t.root()) {
            labels.insert(label);
            ASSERT_GE(t.children(v).size(), 2u);
        }
        std::set<std::pair<int, std::uint32_t>> keys;
        for (const auto& c : t.children(v)) {
            ASSERT_EQ(t.edge_char(c.node, 0), c.byte);
            ASSERT_TRUE(keys.insert({c.byte, c.tiebreak}).second);
            if (c.byte != kDelimiter) {
                ASSERT_EQ(t.child(v, c.byte), c.node);
            }
        }
        for (int b = 2; b < 256; ++b) {
            const auto c = t.child(v, static_cast<std::uint8_t>(b));
            if (c) {
                ASSERT_EQ(t.edge_char(*c, 0), b);
            } else {
                for (const auto& ch : t.children(v)) ASSERT_NE(ch.byte, b);
            }
        }

        // Mark: deepest ancestor-or-self whose label is a pattern.
        Tree::NodeId want = Tree::kNone;
        for (Tree::NodeId u = v; u != t.root(); u = t.parent(u)) {
            if (pattern_set.count(t.path_label(u))) {
                want = u;
                break;
            }
        }
        ASSERT_EQ(t.mark(v), want) << "mark of " << label;
        ASSERT_EQ(t.is_marked(v), v != t.root() && pattern_set.count(label) > 0);
    }
    ASSERT_EQ(labels, expected);
    ASSERT_EQ(leaves, ell);
}

TEST(Gst, StructureAgainstNaiveOracles) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 20);
    for (const std::string alphabet : {"ab", "acgt", "abcdefghijklmnopqrstuvwxyz"}) {
        for (int trial = 0; trial < 150; ++trial) {
            SCOPED_TRACE(trial);
            check_structure(sdm::testing::random_dictionary(rng, alphabet, 12, 16));
            if (::testing::Test::HasFatalFailure()) return;
        }
    }
}

TEST(Gst, RepetitivePatterns) {
    check_structure({"aaaa", "aa", "aaa", "a"});
    check_structure({"abab", "baba", "ab", "bab"});
    check_structure({"mississippi", "issi", "ssi", "pi", "sip"});
}

// The suffix-link target's root path loses at most one node; it can lose one.
TEST(Gst, NodeCountAlongLinkedPaths) {
    const auto t = build({"abx", "aby", "ac"});
    const auto ab = locus(t, "ab");
    ASSERT_FALSE(t.is_leaf(ab));
    EXPECT_EQ(nodes_on_path(t, ab), 3u);
    EXPECT_EQ(nodes_on_path(t, t.suffix_link(ab)), 2u);

    std::mt19937_64 rng(sdm::testing::test_seed() + 21);
    for (int trial = 0; trial < 300; ++trial) {
        const Tree tr(Dictionary::ingest(sdm::testing::random_dictionary(rng, "acgt", 16, 24)));
        for (Tree::NodeId v = 1; v < tr.node_count(); ++v)
            ASSERT_GE(nodes_on_path(tr, tr.suffix_link(v)) + 1, nodes_on_path(tr, v));
    }
}

TEST(Gst, ResidentSizeIsAccounted) {
    const auto t = build({"abracadabra", "cadabra"});
    EXPECT_GT(t.size_in_bytes(), t.node_count() * 32);
}

}  // namespace
