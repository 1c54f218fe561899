#include "sdm/suffix_array.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sdm {
namespace {

using Index = std::uint32_t;
constexpr Index kEmpty = std::numeric_limits<Index>::max();

// Recursive SA-IS over an integer alphabet [0, upper]. The end of the string
// behaves as a virtual sentinel smaller than every symbol.
std::vector<Index> sais(const std::vector<Index>& s, Index upper) {
    const Index n = static_cast<Index>(s.size());
    if (n == 0) return {};
    if (n == 1) return {0};
    if (n == 2) return s[0] < s[1] ? std::vector<Index>{0, 1} : std::vector<Index>{1, 0};

    std::vector<Index> sa(n);
    std::vector<bool> is_s(n, false);
    for (Index i = n - 1; i-- > 0;) is_s[i] = s[i] == s[i + 1] ? is_s[i + 1] : s[i] < s[i + 1];

    // Bucket starts: sum_l[c] is where the L-suffixes of c begin, sum_s[c] where the S-suffixes begin.
    std::vector<Index> sum_l(upper + 2, 0), sum_s(upper + 2, 0);
    for (Index i = 0; i < n; ++i) {
        if (!is_s[i]) ++sum_s[s[i]];
        else ++sum_l[s[i] + 1];
    }
    for (Index c = 0; c <= upper; ++c) {
        sum_s[c] += sum_l[c];
        if (c < upper) sum_l[c + 1] += sum_s[c];
    }

    auto induce = [&](const std::vector<Index>& lms) {
        std::fill(sa.begin(), sa.end(), kEmpty);
        std::vector<Index> buf(upper + 2);
        std::copy(sum_s.begin(), sum_s.end(), buf.begin());
        for (Index d : lms)
            if (d != n) sa[buf[s[d]]++] = d;
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        sa[buf[s[n - 1]]++] = n - 1;
        for (Index i = 0; i < n; ++i) {
            const Index v = sa[i];
            if (v != kEmpty && v >= 1 && !is_s[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        for (Index i = n; i-- > 0;) {
            const Index v = sa[i];
            if (v != kEmpty && v >= 1 && is_s[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
        }
    };

    std::vector<Index> lms_map(n + 1, kEmpty);
    std::vector<Index> lms;
    for (Index i = 1; i < n; ++i) {
        if (!is_s[i - 1] && is_s[i]) {
            lms_map[i] = static_cast<Index>(lms.size());
            lms.push_back(i);
        }
    }
    const Index m = static_cast<Index>(lms.size());
    induce(lms);
    if (m == 0) return sa;

    std::vector<Index> sorted_lms;
    sorted_lms.reserve(m);
    for (Index v : sa)
        if (lms_map[v] != kEmpty) sorted_lms.push_back(v);

    // Name LMS substrings; equal substrings share a name.
    std::vector<Index> rec(m);
    Index name = 0;
    rec[lms_map[sorted_lms[0]]] = 0;
    for (Index i = 1; i < m; ++i) {
        Index l = sorted_lms[i - 1], r = sorted_lms[i];
        const Index end_l = lms_map[l] + 1 < m ? lms[lms_map[l] + 1] : n;
        const Index end_r = lms_map[r] + 1 < m ? lms[lms_map[r] + 1] : n;
        bool same = end_l - l == end_r - r;
        if (same) {
            while (l < end_l && s[l] == s[r]) ++l, ++r;
            if (l == n || s[l] != s[r]) same = false;
        }
        if (!same) ++name;
        rec[lms_map[sorted_lms[i]]] = name;
    }

    const auto rec_sa = sais(rec, name);
    for (Index i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
    induce(sorted_lms);
    return sa;
}

}  // namespace

std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint8_t> text) {
    if (text.size() >= std::numeric_limits<Index>::max()) throw std::length_error("suffix array: text too long");
    std::vector<Index> s(text.begin(), text.end());
    return sais(s, 255);
}

std::vector<std::uint32_t> inverse_permutation(std::span<const std::uint32_t> sa) {
    std::vector<std::uint32_t> isa(sa.size());
    for (std::uint32_t i = 0; i < sa.size(); ++i) isa[sa[i]] = i;
    return isa;
}

std::vector<std::uint32_t> build_lcp(std::span<const std::uint8_t> text, std::span<const std::uint32_t> sa,
                                     std::optional<std::uint8_t> stop_byte) {
    const std::size_t n = text.size();
    if (sa.size() != n) throw std::invalid_argument("build_lcp: suffix array size differs from text");
    const auto isa = inverse_permutation(sa);
    const int stop = stop_byte ? *stop_byte : -1;
    std::vector<std::uint32_t> lcp(n, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (isa[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[isa[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h] && text[i + h] != stop) ++h;
        lcp[isa[i]] = static_cast<std::uint32_t>(h);
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace sdm
