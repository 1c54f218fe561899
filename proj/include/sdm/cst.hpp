#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sdm/balanced_parens.hpp"
#include "sdm/bit_vector.hpp"
#include "sdm/csa.hpp"
#include "sdm/dictionary.hpp"
#include "sdm/lcp.hpp"

namespace sdm {

struct CstOptions {
    CsaProfile csa = CsaProfile::sampled;
    LcpProfile lcp = LcpProfile::compact;
    std::size_t sample_rate = CompressedSuffixArray::kDefaultSampleRate;
};

/// Suffix tree of the dictionary concatenation held as a compressed suffix
/// array, an LCP store and a balanced-parentheses topology.
///
/// A node is the position of its '(' in B. Leaves appear in suffix-rank order,
/// so lb/rb are ranks among the leaf '(' positions. Each delimiter occurrence
/// acts as its own symbol, which makes the tree isomorphic to the pointer
/// generalized suffix tree of the same patterns.
class CompressedSuffixTree {
public:
    using Node = std::size_t;

    CompressedSuffixTree() = default;
    CompressedSuffixTree(const Dictionary& dict, const CstOptions& options = {});
    /// Reassembles a tree from stored parts; directories are rebuilt.
    CompressedSuffixTree(BalancedParens topology, BitVector leaves, CompressedSuffixArray csa, LcpStore lcp,
                         std::vector<std::uint32_t> delimiters);

    Node root() const { return 0; }
    std::size_t node_count() const { return bp_.node_count(); }
    std::size_t leaf_count() const { return csa_.size(); }
    std::size_t text_length() const { return csa_.size(); }
    std::size_t pattern_count() const { return delimiters_.size(); }
    std::size_t pattern_length(std::size_t id) const;

    bool is_leaf(Node v) const { return !bp_.is_open(v + 1); }
    std::size_t lb(Node v) const { return leaves_.rank1_unchecked(v); }
    std::size_t rb(Node v) const { return leaves_.rank1_unchecked(bp_.find_close(v)) - 1; }
    /// Leaf of the suffix at `rank`.
    Node leaf(std::size_t rank) const { return leaves_.select1(rank + 1); }

    /// Throws std::invalid_argument for the root.
    Node parent(Node v) const;
    std::optional<Node> child(Node v, std::uint8_t c) const;
    /// Children in left-to-right order.
    std::vector<Node> children(Node v) const;
    Node suffix_link(Node v) const;
    Node lca(Node u, Node v) const;

    std::size_t string_depth(Node v) const;
    std::size_t edge_length(Node v) const { return v == root() ? 0 : string_depth(v) - string_depth(parent(v)); }
    /// Byte at depth k of v's path label; throws std::out_of_range unless k < string_depth(v).
    std::uint8_t char_at_node_pos(Node v, std::size_t k) const;

    /// Pattern id owning text position pos of the concatenation.
    std::size_t pattern_of(std::size_t pos) const;
    /// Start position of the suffix at leaf v.
    std::size_t leaf_suffix(Node v) const { return csa_.access(lb(v)); }

    const BalancedParens& topology() const { return bp_; }
    const BitVector& leaf_bits() const { return leaves_; }
    const CompressedSuffixArray& csa() const { return csa_; }
    const LcpStore& lcp() const { return lcp_; }
    const std::vector<std::uint32_t>& delimiters() const { return delimiters_; }

    /// Resident bytes including rebuilt directories.
    std::size_t size_in_bytes() const;

private:
    std::size_t leaf_depth_at(std::size_t pos) const;
    Node lca_adjacent(std::size_t k) const;

    BalancedParens bp_;
    BitVector leaves_;
    CompressedSuffixArray csa_;
    LcpStore lcp_;
    LcpRmq rmq_;
    std::vector<std::uint32_t> delimiters_;
};

/// Internal nodes whose path label is a whole pattern: (node, pattern id).
std::vector<std::pair<CompressedSuffixTree::Node, std::size_t>> pattern_nodes(const CompressedSuffixTree& cst);

}  // namespace sdm
