#include "sdm/balanced_parens.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "sdm/errors.hpp"
#include "sdm/kernels.hpp"

namespace sdm {
namespace {

struct ByteTables {
    std::array<std::int8_t, 256> excess{};
    std::array<std::int8_t, 256> fwd_min{};  // min prefix excess after 1..8 bits, low bit first
    std::array<std::int8_t, 256> bwd_min{};  // min of -(sum of the top j bits), j = 1..8
};

constexpr ByteTables make_tables() {
    ByteTables t;
    for (int b = 0; b < 256; ++b) {
        int run = 0;
        int lo = 8;
        for (int j = 0; j < 8; ++j) {
            run += ((b >> j) & 1) ? 1 : -1;
            lo = std::min(lo, run);
        }
        t.excess[b] = static_cast<std::int8_t>(run);
        t.fwd_min[b] = static_cast<std::int8_t>(lo);
        int back = 0;
        int blo = 8;
        for (int j = 7; j >= 0; --j) {
            back -= ((b >> j) & 1) ? 1 : -1;
            blo = std::min(blo, back);
        }
        t.bwd_min[b] = static_cast<std::int8_t>(blo);
    }
    return t;
}

constexpr ByteTables kTables = make_tables();

}  // namespace

BalancedParens::BalancedParens(BitVector bits) : bits_(std::move(bits)) { build_support(); }

BalancedParens BalancedParens::from_string(std::string_view parens) {
    return BalancedParens(BitVector::from_string(parens));
}

BalancedParens BalancedParens::load(ByteReader& in) {
    try {
        return BalancedParens(BitVector::load(in));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void BalancedParens::build_support() {
    const std::size_t n = bits_.size();
    if (n % 2 != 0) throw std::invalid_argument("BalancedParens: odd length");
    blocks_ = (n + kBlockBits - 1) / kBlockBits;
    block_min_.assign(blocks_, std::numeric_limits<std::int32_t>::max());

    std::int64_t cur = 0;
    std::int64_t global_min = 0;
    for (std::size_t b = 0; b < blocks_; ++b) {
        const std::size_t begin = b * kBlockBits;
        const std::size_t end = std::min(begin + kBlockBits, n);
        std::int64_t lo = cur;
        std::size_t t = begin;
        for (; t + 8 <= end; t += 8) {
            const std::uint8_t byte = byte_at(t);
            lo = std::min<std::int64_t>(lo, cur + kTables.fwd_min[byte]);
            cur += kTables.excess[byte];
        }
        for (; t < end; ++t) {
            cur += bits_[t] ? 1 : -1;
            lo = std::min(lo, cur);
        }
        block_min_[b] = static_cast<std::int32_t>(lo);
        global_min = std::min(global_min, lo);
    }
    if (global_min < 0 || cur != 0) throw std::invalid_argument("BalancedParens: sequence is not balanced");

    leaf_base_ = std::bit_ceil(std::max<std::size_t>(blocks_, 1));
    tree_.assign(2 * leaf_base_, std::numeric_limits<std::int32_t>::max());
    std::copy(block_min_.begin(), block_min_.end(), tree_.begin() + static_cast<std::ptrdiff_t>(leaf_base_));
    for (std::size_t i = leaf_base_; i-- > 1;) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
}

std::size_t BalancedParens::scan_forward(std::size_t from, std::size_t limit, std::int64_t cur,
                                         std::int64_t target) const {
    std::size_t t = from;
    while (t < limit) {
        if ((t & 7) == 0 && t + 8 <= limit) {
            const std::uint8_t byte = byte_at(t);
            if (cur + kTables.fwd_min[byte] > target) {
                cur += kTables.excess[byte];
                t += 8;
                continue;
            }
        }
        cur += bits_[t] ? 1 : -1;
        ++t;
        if (cur <= target) return t;
    }
    return npos;
}

std::size_t BalancedParens::scan_backward(std::size_t from, std::size_t limit, std::int64_t cur,
                                          std::int64_t target) const {
    std::size_t t = from;
    while (t > limit) {
        if ((t & 7) == 0 && t >= limit + 8) {
            const std::uint8_t byte = byte_at(t - 8);
            if (cur + kTables.bwd_min[byte] > target) {
                cur -= kTables.excess[byte];
                t -= 8;
                continue;
            }
        }
        --t;
        cur -= bits_[t] ? 1 : -1;
        if (cur <= target) return t;
    }
    return npos;
}

std::size_t BalancedParens::tree_first_le(std::size_t from, std::int64_t target) const {
    if (from >= blocks_) return npos;
    std::size_t i = leaf_base_ + from;
    while (tree_[i] > target) {
        while (i & 1) {
            if (i == 1) return npos;
            i >>= 1;
        }
        ++i;
    }
    while (i < leaf_base_) {
        i *= 2;
        if (tree_[i] > target) ++i;
    }
    return i - leaf_base_ < blocks_ ? i - leaf_base_ : npos;
}

std::size_t BalancedParens::tree_last_le(std::size_t to, std::int64_t target) const {
    std::size_t i = leaf_base_ + to;
    while (tree_[i] > target) {
        while (!(i & 1)) i >>= 1;
        if (i == 1) return npos;
        --i;
    }
    while (i < leaf_base_) {
        i = 2 * i + 1;
        if (tree_[i] > target) --i;
    }
    return i - leaf_base_;
}

std::size_t BalancedParens::fwd_search(std::size_t k, std::int64_t target) const {
    const std::size_t n = size();
    if (k >= n) return npos;
    const std::size_t limit = std::min((k / kBlockBits + 1) * kBlockBits, n);
    if (const std::size_t r = scan_forward(k, limit, excess(k), target); r != npos) return r;

    const std::size_t b = k / kBlockBits + 1;
    if (b >= blocks_) return npos;
    const std::size_t span = std::min<std::size_t>(64, blocks_ - b);
    const std::size_t hit = simd::kernels().find_first_le(block_min_.data() + b, span, static_cast<std::int32_t>(target));
    const std::size_t block = hit != simd::npos ? b + hit : tree_first_le(b + span, target);
    if (block == npos) return npos;
    const std::size_t start = block * kBlockBits;
    return scan_forward(start, std::min(start + kBlockBits, n), excess(start), target);
}

std::size_t BalancedParens::bwd_search(std::size_t k, std::int64_t target) const {
    if (k == 0) return npos;
    k = std::min(k, size());
    const std::size_t first_block = (k - 1) / kBlockBits;
    if (const std::size_t r = scan_backward(k, first_block * kBlockBits, excess(k), target); r != npos) return r;
    if (first_block == 0) return npos;

    const std::size_t lo = first_block >= 64 ? first_block - 64 : 0;
    const std::size_t hit =
        simd::kernels().find_last_le(block_min_.data() + lo, first_block - lo, static_cast<std::int32_t>(target));
    std::size_t block = npos;
    if (hit != simd::npos) block = lo + hit;
    else if (lo > 0) block = tree_last_le(lo - 1, target);
    if (block == npos) return npos;
    const std::size_t end = (block + 1) * kBlockBits;
    return scan_backward(end, block * kBlockBits, excess(end), target);
}

std::size_t BalancedParens::find_close(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("find_close: position past end");
    if (!is_open(i)) throw WrongSideError("find_close: position holds ')'");
    return fwd_search(i, excess(i)) - 1;
}

std::size_t BalancedParens::find_open(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("find_open: position past end");
    if (is_open(i)) throw WrongSideError("find_open: position holds '('");
    return bwd_search(i + 1, excess(i + 1));
}

std::optional<std::size_t> BalancedParens::enclose(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("enclose: position past end");
    if (!is_open(i)) throw WrongSideError("enclose: position holds ')'");
    const std::int64_t e = excess(i);
    if (e == 0) return std::nullopt;
    return bwd_search(i, e - 1);
}

std::string BalancedParens::to_string() const {
    std::string s(size(), ')');
    for (std::size_t i = 0; i < size(); ++i)
        if (is_open(i)) s[i] = '(';
    return s;
}

std::size_t BalancedParens::size_in_bytes() const {
    return sizeof(*this) - sizeof(BitVector) + bits_.size_in_bytes() + block_min_.size() * sizeof(std::int32_t) +
           tree_.size() * sizeof(std::int32_t);
}

}  // namespace sdm
