#include "sdm/cst.hpp"

#include <algorithm>
#include <stdexcept>

#include "sdm/errors.hpp"
#include "sdm/suffix_array.hpp"

namespace sdm {
namespace {

// Emits the tree of LCP intervals: for each rank, the opens of intervals
// starting there, the leaf, then the closes of intervals ending there.
BitVector topology_from_lcp(std::span<const std::uint32_t> lcp, BitVector& leaf_bits) {
    const std::size_t n = lcp.size();
    std::vector<std::uint32_t> opens(n, 0), closes(n, 0);
    struct Interval {
        std::uint32_t depth;
        std::size_t lb;
    };
    std::vector<Interval> stack{{0, 0}};
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t lb = i - 1;
        const std::uint32_t h = i < n ? lcp[i] : 0;
        while (h < stack.back().depth) {
            const Interval top = stack.back();
            stack.pop_back();
            ++opens[top.lb];
            ++closes[i - 1];
            lb = top.lb;
        }
        if (h > stack.back().depth) stack.push_back({h, lb});
    }
    ++opens[0];
    ++closes[n - 1];

    BitVectorBuilder bp;
    BitVectorBuilder leaves;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < opens[i]; ++k) {
            bp.push_back(true);
            leaves.push_back(false);
        }
        bp.push_back(true);
        leaves.push_back(true);
        bp.push_back(false);
        leaves.push_back(false);
        for (std::uint32_t k = 0; k < closes[i]; ++k) {
            bp.push_back(false);
            leaves.push_back(false);
        }
    }
    leaf_bits = std::move(leaves).freeze();
    return std::move(bp).freeze();
}

}  // namespace

CompressedSuffixTree::CompressedSuffixTree(const Dictionary& dict, const CstOptions& options)
    : delimiters_(dict.delimiter_positions()) {
    const auto text = dict.bytes();
    const auto sa = build_suffix_array(text);
    const auto lcp = build_lcp(text, sa, kDelimiter);
    bp_ = BalancedParens(topology_from_lcp(lcp, leaves_));
    csa_ = CompressedSuffixArray(text, sa, options.csa, options.sample_rate);
    lcp_ = LcpStore(lcp, options.lcp);
    rmq_ = LcpRmq(lcp_, options.lcp);
}

CompressedSuffixTree::CompressedSuffixTree(BalancedParens topology, BitVector leaves, CompressedSuffixArray csa,
                                           LcpStore lcp, std::vector<std::uint32_t> delimiters)
    : bp_(std::move(topology)),
      leaves_(std::move(leaves)),
      csa_(std::move(csa)),
      lcp_(std::move(lcp)),
      delimiters_(std::move(delimiters)) {
    const std::size_t n = csa_.size();
    if (leaves_.size() != bp_.size() || leaves_.count_ones() != n || lcp_.size() != n || delimiters_.empty() ||
        delimiters_.back() != n - 1 || !std::is_sorted(delimiters_.begin(), delimiters_.end()) ||
        bp_.node_count() > 2 * n)
        throw FormatError("compressed suffix tree components are inconsistent");
    rmq_ = LcpRmq(lcp_, lcp_.profile());
}

std::size_t CompressedSuffixTree::pattern_length(std::size_t id) const {
    const std::size_t start = id == 0 ? 0 : delimiters_.at(id - 1) + 1;
    return delimiters_.at(id) - start;
}

CompressedSuffixTree::Node CompressedSuffixTree::parent(Node v) const {
    const auto p = bp_.enclose(v);
    if (!p) throw std::invalid_argument("CompressedSuffixTree::parent: root has no parent");
    return *p;
}

std::size_t CompressedSuffixTree::leaf_depth_at(std::size_t pos) const {
    return *std::lower_bound(delimiters_.begin(), delimiters_.end(), pos) - pos + 1;
}

std::size_t CompressedSuffixTree::string_depth(Node v) const {
    if (v == root()) return 0;
    if (is_leaf(v)) return leaf_depth_at(csa_.access(lb(v)));
    const Node second = bp_.find_close(v + 1) + 1;
    return lcp_[leaves_.rank1_unchecked(second)];
}

std::uint8_t CompressedSuffixTree::char_at_node_pos(Node v, std::size_t k) const {
    if (k >= string_depth(v)) throw std::out_of_range("char_at_node_pos: offset past the path label");
    return csa_.char_at(lb(v), k);
}

std::optional<CompressedSuffixTree::Node> CompressedSuffixTree::child(Node v, std::uint8_t c) const {
    if (is_leaf(v)) return std::nullopt;
    std::size_t first;
    if (v == root()) {
        if (csa_.band_begin(c) == csa_.band_end(c)) return std::nullopt;
        first = csa_.band_begin(c);
    } else {
        const std::size_t d = string_depth(v);
        std::size_t lo = lb(v), hi = rb(v) + 1;
        const std::size_t left = lo;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (csa_.char_at(mid, d) < c) lo = mid + 1;
            else hi = mid;
        }
        if (lo > rb(v) || csa_.char_at(lo, d) != c) return std::nullopt;
        if (lo == left) return v + 1;
        first = lo;
    }
    if (first == lb(v)) return v + 1;
    // The topmost node whose leftmost leaf is `first` opens right after the last ')' before that leaf.
    return bp_.bits().prev_zero(leaf(first)) + 1;
}

std::vector<CompressedSuffixTree::Node> CompressedSuffixTree::children(Node v) const {
    std::vector<Node> out;
    if (is_leaf(v)) return out;
    const Node end = bp_.find_close(v);
    for (Node w = v + 1; w < end; w = bp_.find_close(w) + 1) out.push_back(w);
    return out;
}

CompressedSuffixTree::Node CompressedSuffixTree::lca_adjacent(std::size_t k) const {
    // The first '(' after leaf k-1 opens the sibling subtree holding leaf k.
    return *bp_.enclose(bp_.bits().next_one(leaf(k - 1) + 2));
}

CompressedSuffixTree::Node CompressedSuffixTree::lca(Node u, Node v) const {
    if (u > v) std::swap(u, v);
    if (u == v || v <= bp_.find_close(u)) return u;
    const std::size_t k = rmq_.argmin(lcp_, rb(u) + 1, lb(v));
    return lca_adjacent(k);
}

CompressedSuffixTree::Node CompressedSuffixTree::suffix_link(Node v) const {
    if (v == root()) return root();
    if (is_leaf(v)) {
        const std::size_t r = lb(v);
        if (csa_.first_char(r) == kDelimiter) return root();
        return leaf(csa_.psi(r));
    }
    if (string_depth(v) == 1) return root();
    return lca(leaf(csa_.psi(lb(v))), leaf(csa_.psi(rb(v))));
}

std::size_t CompressedSuffixTree::pattern_of(std::size_t pos) const {
    if (pos >= text_length()) throw std::out_of_range("pattern_of: position past end");
    return static_cast<std::size_t>(std::lower_bound(delimiters_.begin(), delimiters_.end(), pos) - delimiters_.begin());
}

std::size_t CompressedSuffixTree::size_in_bytes() const {
    return sizeof(*this) - sizeof(bp_) - sizeof(leaves_) - sizeof(csa_) - sizeof(lcp_) - sizeof(rmq_) +
           bp_.size_in_bytes() + leaves_.size_in_bytes() + csa_.size_in_bytes() + lcp_.size_in_bytes() +
           rmq_.size_in_bytes() + delimiters_.capacity() * sizeof(std::uint32_t);
}

std::vector<std::pair<CompressedSuffixTree::Node, std::size_t>> pattern_nodes(const CompressedSuffixTree& cst) {
    std::vector<std::pair<CompressedSuffixTree::Node, std::size_t>> out;
    const auto& delims = cst.delimiters();
    for (std::size_t k = 0; k < delims.size(); ++k) {
        const std::size_t start = k == 0 ? 0 : delims[k - 1] + 1;
        const auto leaf = cst.leaf(cst.csa().inverse(start));
        const auto p = cst.parent(leaf);
        if (p != cst.root() && cst.string_depth(p) == delims[k] - start) out.emplace_back(p, k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sdm
