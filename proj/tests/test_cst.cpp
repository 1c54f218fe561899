#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "sdm/cst.hpp"
#include "sdm/gst.hpp"
#include "support.hpp"

using namespace sdm;
using Gst = GeneralizedSuffixTree;
using Cst = CompressedSuffixTree;

namespace {

const char kD = static_cast<char>(kDelimiter);

std::string label_of(const Cst& t, Cst::Node v) {
    const std::size_t d = t.string_depth(v);
    return d == 0 ? std::string() : t.csa().extract(t.leaf_suffix(v), d);
}

struct NodeMap {
    std::map<Cst::Node, Gst::NodeId> to_gst;
};

/// Pairs nodes of the two backends: leaves by (pattern, offset), internal nodes by label.
NodeMap pair_nodes(const Cst& c, const Gst& g) {
    std::map<std::string, Gst::NodeId> internal;
    for (Gst::NodeId v = 0; v < g.node_count(); ++v)
        if (!g.is_leaf(v)) internal[g.path_label(v)] = v;
    NodeMap m;
    const auto& bits = c.topology();
    for (std::size_t p = 0; p < bits.size(); ++p) {
        if (!bits.is_open(p)) continue;
        if (c.is_leaf(p)) {
            const std::size_t pos = c.leaf_suffix(p);
            const std::size_t pat = c.pattern_of(pos);
            const std::size_t start = pat == 0 ? 0 : c.delimiters()[pat - 1] + 1;
            m.to_gst[p] = g.leaf_of(pat, pos - start);
        } else {
            const auto it = internal.find(label_of(c, p));
            m.to_gst[p] = it == internal.end() ? Gst::kNone : it->second;
        }
    }
    return m;
}

void cross_check(const std::vector<std::string>& patterns, const CstOptions& opt, const std::string& alphabet) {
    const auto dict = Dictionary::ingest(patterns);
    const Gst g(dict);
    const Cst c(dict, opt);
    ASSERT_EQ(c.node_count(), g.node_count());
    ASSERT_EQ(c.lb(c.root()), 0u);
    ASSERT_EQ(c.rb(c.root()), dict.length() - 1);
    const auto m = pair_nodes(c, g);
    ASSERT_EQ(m.to_gst.size(), g.node_count());
    std::map<Gst::NodeId, Cst::Node> back;
    for (const auto& [cv, gv] : m.to_gst) {
        ASSERT_NE(gv, Gst::kNone) << "unmatched internal node " << label_of(c, cv);
        ASSERT_TRUE(back.emplace(gv, cv).second);
    }
    std::size_t prev_leaf_rank = 0;
    bool first_leaf = true;
    for (const auto& [cv, gv] : m.to_gst) {
        ASSERT_EQ(c.string_depth(cv), g.depth(gv));
        ASSERT_EQ(c.is_leaf(cv), g.is_leaf(gv));
        ASSERT_EQ(c.edge_length(cv), cv == c.root() ? 0u : g.edge_length(gv));
        if (c.is_leaf(cv)) {
            ASSERT_EQ(c.lb(cv), c.rb(cv));
            if (!first_leaf) {
                ASSERT_EQ(c.lb(cv), prev_leaf_rank + 1);
            }
            prev_leaf_rank = c.lb(cv);
            first_leaf = false;
        }
        const auto link = c.suffix_link(cv);
        ASSERT_EQ(m.to_gst.at(link), g.suffix_link(gv)) << "link of " << label_of(c, cv);
        if (cv != c.root()) {
            ASSERT_EQ(m.to_gst.at(c.parent(cv)), g.parent(gv));
            ASSERT_EQ(c.string_depth(link) + 1, c.string_depth(cv));
            ASSERT_LT(c.lb(c.parent(cv)) + c.rb(cv), c.rb(c.parent(cv)) + c.lb(cv) + 1 + (c.rb(cv) - c.lb(cv)) * 2 + 1);
        }
        for (char ch : alphabet) {
            const auto cc = c.child(cv, static_cast<std::uint8_t>(ch));
            const auto gc = g.child(gv, static_cast<std::uint8_t>(ch));
            ASSERT_EQ(cc.has_value(), gc.has_value()) << "child '" << ch << "' of " << label_of(c, cv);
            if (cc) {
                ASSERT_EQ(m.to_gst.at(*cc), *gc);
            }
        }
        if (!c.is_leaf(cv)) {
            const auto dc = c.child(cv, kDelimiter);
            const auto kids = c.children(cv);
            ASSERT_EQ(kids.size(), g.children(gv).size());
            if (g.children(gv).front().byte == kDelimiter) {
                ASSERT_TRUE(dc.has_value());
                ASSERT_EQ(*dc, kids.front());
            } else {
                ASSERT_FALSE(dc.has_value());
            }
            for (std::size_t i = 1; i < kids.size(); ++i) ASSERT_EQ(c.lb(kids[i]), c.rb(kids[i - 1]) + 1);
            ASSERT_EQ(c.lb(kids.front()), c.lb(cv));
            ASSERT_EQ(c.rb(kids.back()), c.rb(cv));
        }
    }
}

TEST(Cst, TwoLeafTopology) {
    const auto dict = Dictionary::ingest({"z"});
    const Cst c(dict, {CsaProfile::plain, LcpProfile::plain, 1});
    EXPECT_EQ(c.topology().to_string(), "(()())");
    EXPECT_EQ(c.node_count(), 3u);
    EXPECT_EQ(c.parent(1), c.root());
    EXPECT_EQ(c.parent(3), c.root());
    EXPECT_THROW(c.parent(c.root()), std::invalid_argument);
    EXPECT_EQ(c.child(c.root(), kDelimiter), 1u);
    EXPECT_EQ(c.child(c.root(), 'z'), 3u);
    EXPECT_FALSE(c.child(c.root(), 'y').has_value());
    EXPECT_FALSE(c.child(1, 'z').has_value());
}

TEST(Cst, WorkedDictionary) {
    for (const auto& opt : {CstOptions{CsaProfile::plain, LcpProfile::plain, 1}, CstOptions{}}) {
        const auto dict = Dictionary::ingest({"a", "ate", "bath", "later"});
        const Cst c(dict, opt);
        const Gst g(dict);
        EXPECT_EQ(c.node_count(), g.node_count());
        EXPECT_EQ(c.lb(c.root()), 0u);
        EXPECT_EQ(c.rb(c.root()), 16u);
        EXPECT_EQ(c.edge_length(c.root()), 0u);
        EXPECT_EQ(c.string_depth(c.root()), 0u);

        const auto bath = c.leaf(c.csa().inverse(6));
        EXPECT_EQ(c.char_at_node_pos(bath, 3), 'h');
        EXPECT_EQ(c.char_at_node_pos(bath, 4), kDelimiter);
        EXPECT_THROW(c.char_at_node_pos(bath, 5), std::out_of_range);
        EXPECT_EQ(c.suffix_link(bath), c.leaf(c.csa().inverse(7)));

        const auto a = *c.child(c.root(), 'a');
        const auto at = *c.child(a, 't');
        const auto ate = *c.child(at, 'e');
        EXPECT_EQ(label_of(c, ate), "ate");
        EXPECT_EQ(c.parent(ate), at);
        EXPECT_EQ(c.parent(at), a);
        EXPECT_EQ(label_of(c, c.suffix_link(ate)), "te");
        EXPECT_EQ(c.suffix_link(a), c.root());
        EXPECT_EQ(c.lca(ate, a), a);
        EXPECT_EQ(c.lca(ate, ate), ate);
        EXPECT_EQ(c.lca(ate, c.root()), c.root());
        EXPECT_EQ(c.lca(ate, *c.child(at, 'h')), at);

        const auto marks = pattern_nodes(c);
        ASSERT_EQ(marks.size(), 2u);
        EXPECT_EQ(marks[0], std::make_pair(a, std::size_t{0}));
        EXPECT_EQ(marks[1], std::make_pair(ate, std::size_t{1}));
    }
}

TEST(Cst, RunOfOneCharacter) {
    const auto dict = Dictionary::ingest({"aaaa"});
    const Cst c(dict, {CsaProfile::sampled, LcpProfile::compact, 2});
    EXPECT_EQ(c.node_count(), 9u);
    // Internal nodes a, aa, aaa each hang off the previous one.
    Cst::Node v = c.root();
    for (std::size_t d = 1; d <= 3; ++d) {
        v = *c.child(v, 'a');
        EXPECT_FALSE(c.is_leaf(v));
        EXPECT_EQ(c.string_depth(v), d);
        EXPECT_EQ(c.children(v).size(), 2u);
    }
    v = *c.child(v, 'a');
    EXPECT_TRUE(c.is_leaf(v));
    EXPECT_EQ(c.string_depth(v), 5u);
    EXPECT_EQ(c.leaf_suffix(v), 0u);
}

TEST(Cst, LcaAgainstUpwardWalk) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 30);
    for (int trial = 0; trial < 40; ++trial) {
        const auto dict = Dictionary::ingest(sdm::testing::random_dictionary(rng, "acgt", 20, 30));
        const Cst c(dict, trial % 2 ? CstOptions{} : CstOptions{CsaProfile::plain, LcpProfile::plain, 1});
        std::vector<Cst::Node> nodes;
        for (std::size_t p = 0; p < c.topology().size(); ++p)
            if (c.topology().is_open(p)) nodes.push_back(p);
        auto ancestors = [&](Cst::Node v) {
            std::vector<Cst::Node> up{v};
            while (v != c.root()) up.push_back(v = c.parent(v));
            return up;
        };
        for (int q = 0; q < 300; ++q) {
            const auto u = nodes[rng() % nodes.size()], v = nodes[rng() % nodes.size()];
            const auto au = ancestors(u), av = ancestors(v);
            Cst::Node want = c.root();
            for (auto x : au)
                if (std::find(av.begin(), av.end(), x) != av.end()) {
                    want = x;
                    break;
                }
            ASSERT_EQ(c.lca(u, v), want);
        }
    }
}

TEST(Cst, CrossBackendIsomorphism) {
    std::mt19937_64 rng(sdm::testing::test_seed() + 31);
    const std::vector<std::string> alphabets{"ab", "acgt", "abcdefghijklmnopqrstuvwxyz"};
    for (int trial = 0; trial < 1000; ++trial) {
        SCOPED_TRACE(trial);
        const auto& alphabet = alphabets[trial % 3];
        CstOptions opt;
        switch (trial % 4) {
            case 0: opt = {CsaProfile::plain, LcpProfile::plain, 1}; break;
            case 1: opt = {CsaProfile::plain, LcpProfile::compact, 1}; break;
            case 2: opt = {CsaProfile::sampled, LcpProfile::plain, 4}; break;
            default: opt = {CsaProfile::sampled, LcpProfile::compact, trial % 40 == 3 ? 32u : 8u}; break;
        }
        cross_check(sdm::testing::random_dictionary(rng, alphabet, 32, trial % 10 == 0 ? 64 : 16), opt, alphabet);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

TEST(Cst, DelimiterHeavyDictionaries) {
    // Many patterns ending at the same internal node give it many delimiter leaves.
    std::vector<std::string> pats;
    for (int i = 0; i < 40; ++i) pats.push_back(std::string(1 + i % 3, 'x') + std::string(1, static_cast<char>('a' + i % 26)) + "y");
    std::sort(pats.begin(), pats.end());
    pats.erase(std::unique(pats.begin(), pats.end()), pats.end());
    cross_check(pats, {}, "abcdefghijklmnopqrstuvwxyz");
    cross_check({"y", "xy", "xxy", "xxxy", "ay", "by", "cy"}, {CsaProfile::sampled, LcpProfile::compact, 3}, "abcxy");
}

}  // namespace
