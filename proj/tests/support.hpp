#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing in
// here calls into the code under test except to build inputs.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sdm::testing {

inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("SDM_SEED")) return std::strtoull(s, nullptr, 10);
    return 20240601;
}

inline std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t length, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<bool> bits(length);
    for (std::size_t i = 0; i < length; ++i) bits[i] = coin(rng);
    return bits;
}

/// Well-formed parentheses built by inserting "()" at random positions.
inline std::string random_parens(std::mt19937_64& rng, std::size_t pairs) {
    std::string s;
    s.reserve(2 * pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
        std::uniform_int_distribution<std::size_t> at(0, s.size());
        s.insert(at(rng), "()");
    }
    return s;
}

/// Linear-time random walk that stays non-negative; for long sequences.
inline std::string random_walk_parens(std::mt19937_64& rng, std::size_t pairs, double open_bias = 0.5) {
    std::string s;
    s.reserve(2 * pairs);
    std::bernoulli_distribution coin(open_bias);
    std::size_t opens = 0, depth = 0;
    while (s.size() < 2 * pairs) {
        const bool open = opens < pairs && (depth == 0 || coin(rng));
        s.push_back(open ? '(' : ')');
        if (open) ++opens, ++depth;
        else --depth;
    }
    return s;
}

/// Random ordered tree in BP form wrapped in a single root, with `nodes` nodes.
inline std::string random_tree(std::mt19937_64& rng, std::size_t nodes) {
    return "(" + random_parens(rng, nodes - 1) + ")";
}

struct ParenOracle {
    std::vector<std::size_t> match;                  // matching position for every paren
    std::vector<std::optional<std::size_t>> parent;  // enclosing open for every open position

    explicit ParenOracle(const std::string& s) : match(s.size()), parent(s.size()) {
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') {
                parent[i] = stack.empty() ? std::nullopt : std::optional<std::size_t>(stack.back());
                stack.push_back(i);
            } else {
                match[i] = stack.back();
                match[stack.back()] = i;
                stack.pop_back();
            }
        }
    }
};

inline std::size_t naive_rank1(const std::vector<bool>& bits, std::size_t i) {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(i), true));
}

inline std::size_t naive_select1(const std::vector<bool>& bits, std::size_t k) {
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] && --k == 0) return i;
    return bits.size();
}

inline std::string random_string(std::mt19937_64& rng, std::size_t length, int sigma, char base = 'a') {
    std::uniform_int_distribution<int> pick(0, sigma - 1);
    std::string s(length, base);
    for (auto& c : s) c = static_cast<char>(base + pick(rng));
    return s;
}

inline std::string alphabet_string(std::mt19937_64& rng, std::size_t length, const std::string& alphabet) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s(length, alphabet[0]);
    for (auto& c : s) c = alphabet[pick(rng)];
    return s;
}

/// Suffix array by sorting whole suffixes.
inline std::vector<std::uint32_t> naive_suffix_array(const std::string& s) {
    std::vector<std::uint32_t> sa(s.size());
    for (std::uint32_t i = 0; i < sa.size(); ++i) sa[i] = i;
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end(),
                                            [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
    });
    return sa;
}

/// Pairwise LCP of adjacent sorted suffixes; a delimiter byte never matches.
inline std::vector<std::uint32_t> naive_lcp(const std::string& s, const std::vector<std::uint32_t>& sa,
                                            char delimiter = '\x01') {
    std::vector<std::uint32_t> lcp(sa.size(), 0);
    for (std::size_t i = 1; i < sa.size(); ++i) {
        std::size_t a = sa[i - 1], b = sa[i], h = 0;
        while (a + h < s.size() && b + h < s.size() && s[a + h] == s[b + h] && s[a + h] != delimiter) ++h;
        lcp[i] = static_cast<std::uint32_t>(h);
    }
    return lcp;
}

/// Random dictionary in which roughly half the patterns are prefixes, suffixes
/// or inner substrings of earlier ones. Distinct patterns only.
inline std::vector<std::string> random_dictionary(std::mt19937_64& rng, const std::string& alphabet,
                                                  std::size_t max_patterns, std::size_t max_length) {
    std::uniform_int_distribution<std::size_t> count(1, max_patterns), len(1, max_length);
    const std::size_t d = count(rng);
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t attempts = 0; out.size() < d && attempts < 8 * d; ++attempts) {
        std::string p;
        if (!out.empty() && rng() % 2 == 0) {
            const std::string& base = out[rng() % out.size()];
            const std::size_t l = 1 + rng() % base.size();
            switch (rng() % 3) {
                case 0: p = base.substr(0, l); break;
                case 1: p = base.substr(base.size() - l); break;
                default: p = base.substr(rng() % (base.size() - l + 1), l); break;
            }
        } else {
            p = alphabet_string(rng, len(rng), alphabet);
        }
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

/// Text that splices pattern copies into random filler so matches are common.
inline std::string random_text(std::mt19937_64& rng, const std::vector<std::string>& patterns,
                               const std::string& alphabet, std::size_t length) {
    std::string t;
    t.reserve(length + 64);
    while (t.size() < length) {
        if (rng() % 3 == 0) t += patterns[rng() % patterns.size()];
        else t += alphabet_string(rng, 1 + rng() % 8, alphabet);
    }
    t.resize(length);
    return t;
}

/// Path labels of the internal nodes (root excluded) of the suffix tree of the
/// patterns when each pattern end is its own symbol: exactly the substrings
/// followed by at least two distinct symbols.
inline std::set<std::string> naive_internal_labels(const std::vector<std::string>& patterns) {
    std::map<std::string, std::set<int>> next;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        const std::string& p = patterns[k];
        for (std::size_t j = 0; j < p.size(); ++j) {
            for (std::size_t len = 1; j + len <= p.size(); ++len) {
                const int sym = j + len < p.size() ? static_cast<unsigned char>(p[j + len]) : 256 + static_cast<int>(k);
                next[p.substr(j, len)].insert(sym);
            }
        }
    }
    std::set<std::string> labels;
    for (const auto& [alpha, syms] : next)
        if (syms.size() >= 2) labels.insert(alpha);
    return labels;
}

/// Occurrences as (end position, pattern id, length): for each end position the
/// longest pattern ending there, by testing every pattern at every position.
struct OracleHit {
    std::size_t end_pos;
    std::size_t pattern_id;
    std::size_t length;
    friend bool operator==(const OracleHit&, const OracleHit&) = default;
};

inline std::vector<OracleHit> brute_force_longest(const std::vector<std::string>& patterns, const std::string& text) {
    std::vector<OracleHit> out;
    for (std::size_t end = 0; end < text.size(); ++end) {
        std::size_t best = patterns.size();
        for (std::size_t k = 0; k < patterns.size(); ++k) {
            const std::string& p = patterns[k];
            if (p.size() > end + 1) continue;
            if (text.compare(end + 1 - p.size(), p.size(), p) != 0) continue;
            if (best == patterns.size() || p.size() > patterns[best].size()) best = k;
        }
        if (best != patterns.size()) out.push_back({end, best, patterns[best].size()});
    }
    return out;
}

}  // namespace sdm::testing
