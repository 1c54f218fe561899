#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "sdm/balanced_parens.hpp"
#include "sdm/bit_vector.hpp"
#include "sdm/int_vector.hpp"
#include "sdm/serialize.hpp"

namespace sdm {

/// Lowest-marked-ancestor support over any BP-encoded ordered tree.
///
/// M has one bit per parenthesis of the tree's B and is set at both
/// parentheses of every marked node. D is the subsequence of B at the set
/// positions, so it is the BP sequence of the marked nodes alone. Nodes are
/// open-parenthesis positions in B.
class MarkedAncestorIndex {
public:
    using Node = std::size_t;

    struct Payload {
        std::uint32_t pattern_id;
        std::uint32_t length;
    };

    MarkedAncestorIndex() = default;

    /// One DFS over `tree`; `payload_of` is called once per marked node, in preorder.
    static MarkedAncestorIndex build(const BalancedParens& tree, const std::function<bool(Node)>& marked,
                                     const std::function<Payload(Node)>& payload_of = {});

    std::size_t marked_count() const { return d_.node_count(); }
    bool is_marked(Node v) const { return m_[v]; }
    const BitVector& m_bits() const { return m_; }
    const BalancedParens& d_parens() const { return d_; }

    /// Deepest marked ancestor-or-self of v; the root position 0 when there is none.
    Node lma(const BalancedParens& tree, Node v) const;

    /// All marked ancestors-or-self of v, deepest first.
    std::vector<Node> marked_chain(const BalancedParens& tree, Node v) const;

    /// Payload of a marked node.
    Payload payload(Node v) const;

    std::size_t size_in_bytes() const;

    const PackedIntVector& payload_ids() const { return ids_; }
    const PackedIntVector& payload_lengths() const { return lengths_; }

    /// Reassembles stored parts; throws FormatError unless they agree with a tree of `tree_size` parentheses.
    static MarkedAncestorIndex from_parts(BitVector m, BalancedParens d, PackedIntVector ids, PackedIntVector lengths,
                                          std::size_t tree_size);

    void save(ByteWriter& out) const;
    static MarkedAncestorIndex load(ByteReader& in, std::size_t tree_size);

private:
    BitVector m_;
    BalancedParens d_;
    PackedIntVector ids_;
    PackedIntVector lengths_;
};

}  // namespace sdm
