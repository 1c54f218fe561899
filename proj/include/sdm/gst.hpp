#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdm/dictionary.hpp"

namespace sdm {

/// Pointer-based generalized suffix tree over the dictionary patterns, built
/// online per pattern, with suffix links on every node and pattern marks.
///
/// Every delimiter occurrence behaves as its own symbol, so each suffix of
/// each pattern ends in its own leaf. Edge labels run up to and including
/// the delimiter on leaf edges.
class GeneralizedSuffixTree {
public:
    using NodeId = std::uint32_t;
    static constexpr NodeId kRoot = 0;
    static constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

    struct Child {
        std::uint8_t byte;
        std::uint32_t tiebreak;  // pattern id for delimiter edges, else 0
        NodeId node;
    };

    explicit GeneralizedSuffixTree(Dictionary dict);

    const Dictionary& dictionary() const { return dict_; }
    std::size_t node_count() const { return nodes_.size(); }
    NodeId root() const { return kRoot; }

    bool is_leaf(NodeId v) const { return nodes_[v].children.empty() && v != kRoot; }
    NodeId parent(NodeId v) const { return nodes_[v].parent; }
    NodeId suffix_link(NodeId v) const { return nodes_[v].link; }
    std::size_t depth(NodeId v) const { return nodes_[v].depth; }
    std::size_t edge_length(NodeId v) const { return nodes_[v].length; }
    /// Pattern owning the edge label text.
    std::size_t string_num(NodeId v) const { return nodes_[v].string_num; }
    /// Label start offset inside that pattern.
    std::size_t edge_begin(NodeId v) const { return nodes_[v].begin; }
    std::uint8_t edge_char(NodeId v, std::size_t k) const { return text_[nodes_[v].text_begin + k]; }
    const std::uint8_t* edge_data(NodeId v) const { return text_.data() + nodes_[v].text_begin; }
    std::span<const Child> children(NodeId v) const { return nodes_[v].children; }

    /// Child whose edge starts with c. For the delimiter this is the first
    /// delimiter edge (lowest pattern id).
    std::optional<NodeId> child(NodeId v, std::uint8_t c) const;

    /// Leaf for suffix 0 of some pattern.
    bool first_leaf(NodeId v) const { return is_leaf(v) && nodes_[v].suffix_start == 0; }
    /// Offset of a leaf's suffix inside its pattern.
    std::size_t suffix_start(NodeId v) const { return nodes_[v].suffix_start; }
    NodeId leaf_of(std::size_t pattern, std::size_t offset) const;

    /// Internal node whose path label equals a pattern.
    bool is_marked(NodeId v) const { return nodes_[v].marked_pattern != kNone; }
    std::size_t marked_pattern(NodeId v) const { return nodes_[v].marked_pattern; }
    std::size_t marked_count() const { return marked_count_; }
    /// Deepest marked ancestor-or-self, or kNone.
    NodeId mark(NodeId v) const { return nodes_[v].mark; }

    std::string path_label(NodeId v) const;

    /// Heap bytes held by the tree, including the retained pattern text.
    std::size_t size_in_bytes() const;

private:
    struct Node {
        std::uint32_t string_num = 0;
        std::uint32_t begin = 0;
        std::uint32_t text_begin = 0;
        std::uint32_t length = 0;
        std::uint32_t depth = 0;
        NodeId parent = kNone;
        NodeId link = kRoot;
        NodeId mark = kNone;
        std::uint32_t marked_pattern = kNone;
        std::uint32_t suffix_start = kNone;
        std::vector<Child> children;
    };

    void insert_pattern(std::size_t id);
    void finish();
    NodeId find_child(NodeId v, std::uint8_t byte, std::uint32_t tiebreak) const;
    void add_child(NodeId v, NodeId c);
    void replace_child(NodeId v, NodeId old_child, NodeId new_child);
    std::uint32_t key_tiebreak(NodeId v) const;

    Dictionary dict_;
    std::vector<std::uint8_t> text_;
    std::vector<Node> nodes_;
    std::vector<std::vector<NodeId>> leaves_;  // leaves_[pattern][offset]
    std::size_t marked_count_ = 0;
};

}  // namespace sdm
