#include "sdm/lma.hpp"

#include <stdexcept>

#include "sdm/errors.hpp"

namespace sdm {

MarkedAncestorIndex MarkedAncestorIndex::build(const BalancedParens& tree, const std::function<bool(Node)>& marked,
                                               const std::function<Payload(Node)>& payload_of) {
    const std::size_t n = tree.size();
    BitVectorBuilder m(n);
    BitVectorBuilder d;
    std::vector<std::uint32_t> ids, lengths;
    // Parenthesis positions of the currently open nodes.
    std::vector<std::pair<std::size_t, bool>> open;
    for (std::size_t i = 0; i < n; ++i) {
        if (tree.is_open(i)) {
            const bool mk = marked(i);
            open.emplace_back(i, mk);
            if (mk) {
                m.set(i);
                d.push_back(true);
                const Payload p = payload_of ? payload_of(i) : Payload{0, 0};
                ids.push_back(p.pattern_id);
                lengths.push_back(p.length);
            }
        } else {
            if (open.back().second) {
                m.set(i);
                d.push_back(false);
            }
            open.pop_back();
        }
    }
    MarkedAncestorIndex out;
    out.m_ = std::move(m).freeze();
    out.d_ = BalancedParens(std::move(d).freeze());
    out.ids_ = PackedIntVector::from(std::span<const std::uint32_t>(ids));
    out.lengths_ = PackedIntVector::from(std::span<const std::uint32_t>(lengths));
    return out;
}

MarkedAncestorIndex::Node MarkedAncestorIndex::lma(const BalancedParens& tree, Node v) const {
    if (v >= m_.size() || !tree.is_open(v)) throw std::out_of_range("lma: not an open parenthesis of the tree");
    if (m_[v]) return v;
    const std::size_t pre_y = m_.rank1_unchecked(v + 1);
    if (pre_y == 0) return 0;
    const std::size_t y = m_.select1(pre_y);
    if (tree.is_open(y)) return y;
    const std::size_t y1 = m_.rank1_unchecked(y);
    const std::size_t y2 = d_.find_open(y1);
    const auto y3 = d_.enclose(y2);
    if (!y3) return 0;
    return m_.select1(*y3 + 1);
}

std::vector<MarkedAncestorIndex::Node> MarkedAncestorIndex::marked_chain(const BalancedParens& tree, Node v) const {
    std::vector<Node> chain;
    Node r = lma(tree, v);
    while (m_[r]) {
        chain.push_back(r);
        const auto up = tree.enclose(r);
        if (!up) break;
        r = lma(tree, *up);
    }
    return chain;
}

MarkedAncestorIndex::Payload MarkedAncestorIndex::payload(Node v) const {
    if (v >= m_.size() || !m_[v]) throw std::invalid_argument("payload: node is not marked");
    const std::size_t k = d_.bits().rank1_unchecked(m_.rank1_unchecked(v));
    return {static_cast<std::uint32_t>(ids_[k]), static_cast<std::uint32_t>(lengths_[k])};
}

std::size_t MarkedAncestorIndex::size_in_bytes() const {
    return sizeof(*this) + m_.size_in_bytes() + d_.size_in_bytes() + ids_.size_in_bytes() +
           lengths_.size_in_bytes();
}

void MarkedAncestorIndex::save(ByteWriter& out) const {
    m_.save(out);
    d_.save(out);
    ids_.save(out);
    lengths_.save(out);
}

MarkedAncestorIndex MarkedAncestorIndex::from_parts(BitVector m, BalancedParens d, PackedIntVector ids,
                                                    PackedIntVector lengths, std::size_t tree_size) {
    if (m.size() != tree_size || m.count_ones() != d.size() || ids.size() != d.node_count() ||
        lengths.size() != d.node_count())
        throw FormatError("marked-ancestor index does not match the tree");
    MarkedAncestorIndex out;
    out.m_ = std::move(m);
    out.d_ = std::move(d);
    out.ids_ = std::move(ids);
    out.lengths_ = std::move(lengths);
    return out;
}

MarkedAncestorIndex MarkedAncestorIndex::load(ByteReader& in, std::size_t tree_size) {
    auto m = BitVector::load(in);
    auto d = BalancedParens::load(in);
    auto ids = PackedIntVector::load(in);
    auto lengths = PackedIntVector::load(in);
    return from_parts(std::move(m), std::move(d), std::move(ids), std::move(lengths), tree_size);
}

}  // namespace sdm
