#pragma once

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "sdm/cst_index.hpp"
#include "sdm/errors.hpp"
#include "sdm/gst.hpp"
#include "sdm/kernels.hpp"

namespace sdm {

/// Longest pattern ending at a text position.
struct Occurrence {
    std::size_t end_pos = 0;
    std::size_t pattern_id = 0;
    std::size_t length = 0;
    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct MatchCounters {
    std::uint64_t comparisons = 0;   // text byte against tree byte, including branch lookups
    std::uint64_t suffix_links = 0;
    std::uint64_t up_steps = 0;      // parent moves during skip-count
};

/// Pattern found at a locus: id and length.
struct PatternHit {
    std::size_t pattern_id;
    std::size_t length;
};

/// Keeps the longest occurrence per end position and releases them in
/// ascending order once no later checkpoint can still produce that position.
class CanonicalWriter {
public:
    using Sink = std::function<void(const Occurrence&)>;
    explicit CanonicalWriter(Sink sink) : sink_(std::move(sink)) {}

    void offer(const Occurrence& occ);
    /// Emits every held occurrence ending before `pos`.
    void release_before(std::size_t pos);
    void release_all() { release_before(static_cast<std::size_t>(-1)); }
    std::size_t emitted() const { return emitted_; }

private:
    Sink sink_;
    std::map<std::size_t, Occurrence> pending_;
    std::size_t emitted_ = 0;
};

/// Adapter over the pointer suffix tree.
class GstBackend {
public:
    using Node = GeneralizedSuffixTree::NodeId;
    explicit GstBackend(const GeneralizedSuffixTree& tree) : t_(tree) {}

    Node root() const { return t_.root(); }
    std::optional<Node> child(Node v, std::uint8_t c) const { return t_.child(v, c); }
    Node parent(Node v) const { return t_.parent(v); }
    Node suffix_link(Node v) const { return t_.suffix_link(v); }
    std::size_t depth(Node v) const { return t_.depth(v); }
    std::uint8_t edge_char(Node v, std::size_t /*parent_depth*/, std::size_t k) const { return t_.edge_char(v, k); }
    const std::uint8_t* edge_data(Node v) const { return t_.edge_data(v); }

    /// Locus sits right before the delimiter on the edge into a pattern's first leaf.
    std::optional<PatternHit> pattern_at_locus(Node v, std::size_t parent_depth, std::size_t k) const {
        if (t_.first_leaf(v) && k + 1 == t_.edge_length(v)) return PatternHit{t_.string_num(v), parent_depth + k};
        return std::nullopt;
    }

    template <class F>
    void for_each_marked(Node v, F&& f) const {
        for (Node m = t_.mark(v); m != GeneralizedSuffixTree::kNone;) {
            f(PatternHit{t_.marked_pattern(m), t_.depth(m)});
            const Node p = t_.parent(m);
            m = p == t_.root() ? GeneralizedSuffixTree::kNone : t_.mark(p);
        }
    }

    const GeneralizedSuffixTree& tree() const { return t_; }

private:
    const GeneralizedSuffixTree& t_;
};

/// Adapter over the compressed suffix tree plus marked-ancestor index. Holds
/// a one-entry cursor so walking along an edge costs one psi per byte.
class CstBackend {
public:
    using Node = CompressedSuffixTree::Node;
    explicit CstBackend(const CstIndex& index) : ix_(index) {}

    Node root() const { return ix_.cst.root(); }
    std::optional<Node> child(Node v, std::uint8_t c) const { return ix_.cst.child(v, c); }
    Node parent(Node v) const { return ix_.cst.parent(v); }
    Node suffix_link(Node v) const { return ix_.cst.suffix_link(v); }
    std::size_t depth(Node v) const { return ix_.cst.string_depth(v); }
    std::uint8_t edge_char(Node v, std::size_t parent_depth, std::size_t k) const;

    /// Announcement through the self-index: the locus byte is the delimiter and
    /// the suffix under v starts the concatenation or follows a delimiter.
    std::optional<PatternHit> pattern_at_locus(Node v, std::size_t parent_depth, std::size_t k) const;

    template <class F>
    void for_each_marked(Node v, F&& f) const {
        for (Node m : ix_.marks.marked_chain(ix_.cst.topology(), v)) {
            const auto p = ix_.marks.payload(m);
            f(PatternHit{p.pattern_id, p.length});
        }
    }

    const CstIndex& index() const { return ix_; }

private:
    const CstIndex& ix_;
    mutable Node cursor_node_ = static_cast<Node>(-1);
    mutable std::size_t cursor_depth_ = 0;
    mutable std::size_t cursor_rank_ = 0;
};

/// Position of the matcher in the tree. The locus is `cur_node_index` bytes
/// down the edge into `cur_node`; that edge started at text offset `text_index`.
template <class NodeT>
struct MatchState {
    NodeT cur_node{};
    std::size_t cur_node_index = 0;
    std::size_t text_index = 0;
    std::size_t skipcount = 0;
    bool used_skip_count = false;
    std::size_t parent_depth = 0;  // string depth of cur_node's parent
    std::size_t edge_length = 0;   // length of the edge into cur_node (0 at the root)

    std::size_t matched() const { return parent_depth + cur_node_index; }
    std::size_t end() const { return text_index + cur_node_index; }
    std::size_t start() const { return end() - matched(); }
    bool at_node() const { return cur_node_index == edge_length; }
};

/// Streaming longest-match scanner over either backend. Feed text in any
/// number of pieces, then call finish(); occurrences go to the sink in
/// ascending end position, one per position.
template <class Backend>
class Matcher {
public:
    using Node = typename Backend::Node;
    using State = MatchState<Node>;

    Matcher(const Backend& backend, CanonicalWriter::Sink sink) : b_(backend), out_(std::move(sink)) {
        state_.cur_node = b_.root();
    }

    /// Throws ValidationError (absolute offset) if the piece holds a reserved byte; nothing of it is consumed then.
    void feed(std::string_view text) {
        validate_text(text, fed_);
        const auto* p = reinterpret_cast<const std::uint8_t*>(text.data());
        const std::size_t n = text.size();
        for (std::size_t i = 0; i < n;) {
            if constexpr (requires { b_.edge_data(state_.cur_node); }) {
                if (!state_.at_node()) {
                    const std::size_t room = std::min(state_.edge_length - state_.cur_node_index, n - i);
                    const std::size_t same = simd::kernels().mismatch_bytes(
                        b_.edge_data(state_.cur_node) + state_.cur_node_index, p + i, room);
                    state_.cur_node_index += same;
                    counters_.comparisons += same;
                    i += same;
                    if (same == room) continue;
                }
            }
            step(p[i++]);
        }
        fed_ += n;
    }

    /// Reports what the text end leaves pending by following suffix links to the root.
    std::size_t finish() {
        for (;;) {
            checkpoint(state_);
            if (state_.cur_node == b_.root()) break;
            handle_mismatch(state_);
        }
        out_.release_all();
        return out_.emitted();
    }

    const State& state() const { return state_; }
    const MatchCounters& counters() const { return counters_; }
    std::size_t position() const { return state_.end(); }

    /// Tries to extend the locus by byte c; true on success.
    bool extend(State& s, std::uint8_t c) {
        ++counters_.comparisons;
        if (s.at_node()) {
            const auto next = b_.child(s.cur_node, c);
            if (!next) return false;
            const std::size_t d = s.parent_depth + s.edge_length;
            s.text_index = s.end();
            s.parent_depth = d;
            s.cur_node = *next;
            s.edge_length = b_.depth(*next) - d;
            s.cur_node_index = 1;
            return true;
        }
        if (b_.edge_char(s.cur_node, s.parent_depth, s.cur_node_index) != c) return false;
        ++s.cur_node_index;
        return true;
    }

    /// Moves a non-root locus to the locus of its label minus the first byte.
    void handle_mismatch(State& s) {
        if (s.cur_node == b_.root()) {
            ++s.text_index;
            return;
        }
        if (s.parent_depth == 0 && s.cur_node_index == 1) {
            // One matched byte under the root: its suffix is empty.
            ++counters_.suffix_links;
            s.text_index = s.end();
            s.cur_node = b_.root();
            s.cur_node_index = 0;
            s.edge_length = 0;
            s.used_skip_count = false;
            return;
        }
        skip_count(s);
    }

    /// Follows the suffix link of cur_node and walks up by the bytes of its
    /// edge that lie past the locus.
    void skip_count(State& s) {
        const std::size_t text_pos = s.end();
        std::size_t skip = s.edge_length - s.cur_node_index;
        Node cur = b_.suffix_link(s.cur_node);
        ++counters_.suffix_links;
        std::size_t cur_depth = s.parent_depth + s.edge_length - 1;
        std::size_t par_depth = 0;
        s.used_skip_count = true;
        for (;;) {
            if (cur == b_.root()) {
                par_depth = 0;
                break;
            }
            par_depth = b_.depth(b_.parent(cur));
            const std::size_t len = cur_depth - par_depth;
            if (skip == 0 || skip < len) break;
            skip -= len;
            cur = b_.parent(cur);
            cur_depth = par_depth;
            ++counters_.up_steps;
        }
        s.skipcount = skip;
        s.cur_node = cur;
        s.parent_depth = cur == b_.root() ? 0 : par_depth;
        s.edge_length = cur == b_.root() ? 0 : cur_depth - par_depth;
        s.cur_node_index = s.edge_length - skip;
        s.text_index = text_pos - s.cur_node_index;
        s.skipcount = 0;
        if (s.at_node()) s.used_skip_count = false;
    }

    /// Reports every pattern that is a prefix of the current locus label.
    void checkpoint(const State& s) {
        if (s.cur_node == b_.root()) return;
        const std::size_t start = s.start();
        if (!s.at_node()) {
            if (const auto hit = b_.pattern_at_locus(s.cur_node, s.parent_depth, s.cur_node_index))
                offer(start, *hit);
        }
        const Node anchor = s.at_node() ? s.cur_node : b_.parent(s.cur_node);
        if (anchor != b_.root()) b_.for_each_marked(anchor, [&](const PatternHit& h) { offer(start, h); });
    }

private:
    void step(std::uint8_t c) {
        for (;;) {
            if (extend(state_, c)) return;
            checkpoint(state_);
            if (state_.cur_node == b_.root()) {
                handle_mismatch(state_);
                out_.release_before(state_.start());
                return;
            }
            handle_mismatch(state_);
            out_.release_before(state_.start());
        }
    }

    void offer(std::size_t start, const PatternHit& h) {
        out_.offer(Occurrence{start + h.length - 1, h.pattern_id, h.length});
    }

    Backend b_;
    CanonicalWriter out_;
    State state_{};
    MatchCounters counters_;
    std::size_t fed_ = 0;
};

/// Whole-text convenience wrappers; the text is validated first.
std::vector<Occurrence> search(const GeneralizedSuffixTree& tree, std::string_view text,
                               MatchCounters* counters = nullptr);
std::vector<Occurrence> search(const CstIndex& index, std::string_view text, MatchCounters* counters = nullptr);

/// Streams `in` through the matcher in fixed-size chunks.
template <class Backend>
std::size_t search_stream(const Backend& backend, std::istream& in, const CanonicalWriter::Sink& sink,
                          MatchCounters* counters = nullptr) {
    Matcher<Backend> m(backend, sink);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const auto got = static_cast<std::size_t>(in.gcount());
        if (got == 0) break;
        m.feed(std::string_view(buf.data(), got));
    }
    const std::size_t n = m.finish();
    if (counters) *counters = m.counters();
    return n;
}

}  // namespace sdm
