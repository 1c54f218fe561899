#include "sdm/gst.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdm {
namespace {

constexpr std::uint32_t kOpen = std::numeric_limits<std::uint32_t>::max();

bool child_less(const GeneralizedSuffixTree::Child& a, std::pair<std::uint8_t, std::uint32_t> key) {
    return a.byte != key.first ? a.byte < key.first : a.tiebreak < key.second;
}

}  // namespace

GeneralizedSuffixTree::GeneralizedSuffixTree(Dictionary dict) : dict_(std::move(dict)) {
    const auto bytes = dict_.bytes();
    text_.assign(bytes.begin(), bytes.end());
    nodes_.reserve(2 * text_.size() + 1);
    nodes_.emplace_back();
    leaves_.resize(dict_.pattern_count());
    for (std::size_t k = 0; k < dict_.pattern_count(); ++k) insert_pattern(k);
    finish();
}

std::uint32_t GeneralizedSuffixTree::key_tiebreak(NodeId v) const {
    return text_[nodes_[v].text_begin] == kDelimiter ? nodes_[v].string_num : 0;
}

GeneralizedSuffixTree::NodeId GeneralizedSuffixTree::find_child(NodeId v, std::uint8_t byte,
                                                                std::uint32_t tiebreak) const {
    const auto& ch = nodes_[v].children;
    const auto it = std::lower_bound(ch.begin(), ch.end(), std::pair{byte, tiebreak}, child_less);
    return it != ch.end() && it->byte == byte && it->tiebreak == tiebreak ? it->node : kNone;
}

void GeneralizedSuffixTree::add_child(NodeId v, NodeId c) {
    const Child entry{text_[nodes_[c].text_begin], key_tiebreak(c), c};
    auto& ch = nodes_[v].children;
    const auto it = std::lower_bound(ch.begin(), ch.end(), std::pair{entry.byte, entry.tiebreak}, child_less);
    ch.insert(it, entry);
}

void GeneralizedSuffixTree::replace_child(NodeId v, NodeId old_child, NodeId new_child) {
    for (auto& c : nodes_[v].children) {
        if (c.node == old_child) {
            c.node = new_child;
            return;
        }
    }
    throw std::logic_error("GeneralizedSuffixTree: child to replace not found");
}

void GeneralizedSuffixTree::insert_pattern(std::size_t k) {
    const std::uint32_t start = static_cast<std::uint32_t>(dict_.pattern_start(k));
    const std::size_t m = dict_.pattern(k).size() + 1;
    const std::uint8_t* s = text_.data() + start;
    const auto id = static_cast<std::uint32_t>(k);
    leaves_[k].assign(m, kNone);

    auto edge_len = [&](NodeId v, std::size_t i) -> std::size_t {
        return nodes_[v].length == kOpen ? i + 1 - nodes_[v].begin : nodes_[v].length;
    };
    auto new_leaf = [&](NodeId parent, std::size_t i, std::size_t suffix) {
        Node leaf;
        leaf.string_num = id;
        leaf.begin = static_cast<std::uint32_t>(i);
        leaf.text_begin = start + static_cast<std::uint32_t>(i);
        leaf.length = kOpen;
        leaf.parent = parent;
        leaf.suffix_start = static_cast<std::uint32_t>(suffix);
        const auto v = static_cast<NodeId>(nodes_.size());
        nodes_.push_back(std::move(leaf));
        add_child(parent, v);
        leaves_[k][suffix] = v;
    };

    NodeId active_node = kRoot;
    std::size_t active_edge = 0, active_length = 0, remainder = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint8_t c = s[i];
        NodeId last_new = kNone;
        ++remainder;
        while (remainder > 0) {
            if (active_length == 0) active_edge = i;
            const std::uint8_t ec = s[active_edge];
            const NodeId next = find_child(active_node, ec, ec == kDelimiter ? id : 0);
            if (next == kNone) {
                new_leaf(active_node, i, i + 1 - remainder);
                if (last_new != kNone) {
                    nodes_[last_new].link = active_node;
                    last_new = kNone;
                }
            } else {
                const std::size_t el = edge_len(next, i);
                if (active_length >= el) {
                    active_edge += el;
                    active_length -= el;
                    active_node = next;
                    continue;
                }
                if (c != kDelimiter && text_[nodes_[next].text_begin + active_length] == c) {
                    if (last_new != kNone) nodes_[last_new].link = active_node;
                    ++active_length;
                    break;
                }
                Node mid;
                mid.string_num = nodes_[next].string_num;
                mid.begin = nodes_[next].begin;
                mid.text_begin = nodes_[next].text_begin;
                mid.length = static_cast<std::uint32_t>(active_length);
                mid.parent = active_node;
                const auto mid_id = static_cast<NodeId>(nodes_.size());
                nodes_.push_back(std::move(mid));
                replace_child(active_node, next, mid_id);
                Node& tail = nodes_[next];
                tail.begin += static_cast<std::uint32_t>(active_length);
                tail.text_begin += static_cast<std::uint32_t>(active_length);
                if (tail.length != kOpen) tail.length -= static_cast<std::uint32_t>(active_length);
                tail.parent = mid_id;
                add_child(mid_id, next);
                new_leaf(mid_id, i, i + 1 - remainder);
                if (last_new != kNone) nodes_[last_new].link = mid_id;
                last_new = mid_id;
            }
            --remainder;
            if (active_node == kRoot && active_length > 0) {
                --active_length;
                active_edge = i + 1 - remainder;
            } else if (active_node != kRoot) {
                active_node = nodes_[active_node].link;
            }
        }
    }
    for (NodeId leaf : leaves_[k]) nodes_[leaf].length = static_cast<std::uint32_t>(m - nodes_[leaf].begin);
}

void GeneralizedSuffixTree::finish() {
    for (auto& row : leaves_)
        for (std::size_t j = 0; j < row.size(); ++j) nodes_[row[j]].link = j + 1 < row.size() ? row[j + 1] : kRoot;
    nodes_[kRoot].link = kRoot;

    std::vector<NodeId> order;
    order.reserve(nodes_.size());
    std::vector<NodeId> stack{kRoot};
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (const auto& c : nodes_[v].children) {
            nodes_[c.node].depth = nodes_[v].depth + nodes_[c.node].length;
            stack.push_back(c.node);
        }
    }

    for (std::size_t k = 0; k < leaves_.size(); ++k) {
        const NodeId p = nodes_[leaves_[k][0]].parent;
        if (nodes_[p].depth == dict_.pattern(k).size()) {
            nodes_[p].marked_pattern = static_cast<std::uint32_t>(k);
            ++marked_count_;
        }
    }
    for (NodeId v : order) {
        if (nodes_[v].marked_pattern != kNone) nodes_[v].mark = v;
        else if (v != kRoot) nodes_[v].mark = nodes_[nodes_[v].parent].mark;
    }
}

std::optional<GeneralizedSuffixTree::NodeId> GeneralizedSuffixTree::child(NodeId v, std::uint8_t c) const {
    const auto& ch = nodes_[v].children;
    const auto it = std::lower_bound(ch.begin(), ch.end(), std::pair{c, std::uint32_t{0}}, child_less);
    if (it == ch.end() || it->byte != c) return std::nullopt;
    return it->node;
}

GeneralizedSuffixTree::NodeId GeneralizedSuffixTree::leaf_of(std::size_t pattern, std::size_t offset) const {
    return leaves_.at(pattern).at(offset);
}

std::string GeneralizedSuffixTree::path_label(NodeId v) const {
    std::string label;
    for (; v != kRoot; v = nodes_[v].parent) {
        const auto* data = edge_data(v);
        label.insert(label.begin(), data, data + nodes_[v].length);
    }
    return label;
}

std::size_t GeneralizedSuffixTree::size_in_bytes() const {
    std::size_t bytes = sizeof(*this) + nodes_.capacity() * sizeof(Node) + text_.capacity();
    for (const auto& n : nodes_) bytes += n.children.capacity() * sizeof(Child);
    for (const auto& row : leaves_) bytes += sizeof(row) + row.capacity() * sizeof(NodeId);
    bytes += dict_.concat().capacity() + dict_.delimiter_positions().capacity() * sizeof(std::uint32_t);
    for (const auto& p : dict_.patterns()) bytes += sizeof(p) + p.capacity();
    return bytes;
}

}  // namespace sdm
