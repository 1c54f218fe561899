#include "sdm/matcher.hpp"

namespace sdm {

void CanonicalWriter::offer(const Occurrence& occ) {
    auto [it, inserted] = pending_.try_emplace(occ.end_pos, occ);
    if (!inserted && occ.length > it->second.length) it->second = occ;
}

void CanonicalWriter::release_before(std::size_t pos) {
    auto it = pending_.begin();
    for (; it != pending_.end() && it->first < pos; ++it) {
        sink_(it->second);
        ++emitted_;
    }
    pending_.erase(pending_.begin(), it);
}

std::uint8_t CstBackend::edge_char(Node v, std::size_t parent_depth, std::size_t k) const {
    const auto& csa = ix_.cst.csa();
    const std::size_t d = parent_depth + k;
    if (v == cursor_node_ && d == cursor_depth_ + 1) {
        cursor_rank_ = csa.psi(cursor_rank_);
    } else if (!(v == cursor_node_ && d == cursor_depth_)) {
        cursor_rank_ = csa.shifted_rank(ix_.cst.lb(v), d);
    }
    cursor_node_ = v;
    cursor_depth_ = d;
    return csa.first_char(cursor_rank_);
}

std::optional<PatternHit> CstBackend::pattern_at_locus(Node v, std::size_t parent_depth, std::size_t k) const {
    if (edge_char(v, parent_depth, k) != kDelimiter) return std::nullopt;
    const auto& cst = ix_.cst;
    const std::size_t start = cst.csa().access(cst.lb(v));
    // start == 0: the first pattern; otherwise a delimiter must precede the suffix.
    if (start != 0 && cst.csa().extract_char(start - 1) != kDelimiter) return std::nullopt;
    return PatternHit{cst.pattern_of(start), parent_depth + k};
}

namespace {

template <class Backend>
std::vector<Occurrence> run(const Backend& backend, std::string_view text, MatchCounters* counters) {
    std::vector<Occurrence> out;
    Matcher<Backend> m(backend, [&](const Occurrence& o) { out.push_back(o); });
    m.feed(text);
    m.finish();
    if (counters) *counters = m.counters();
    return out;
}

}  // namespace

std::vector<Occurrence> search(const GeneralizedSuffixTree& tree, std::string_view text, MatchCounters* counters) {
    return run(GstBackend(tree), text, counters);
}

std::vector<Occurrence> search(const CstIndex& index, std::string_view text, MatchCounters* counters) {
    return run(CstBackend(index), text, counters);
}

}  // namespace sdm
