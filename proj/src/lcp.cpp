#include "sdm/lcp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

#include "sdm/errors.hpp"
#include "sdm/kernels.hpp"

namespace sdm {

const char* profile_name(LcpProfile p) { return p == LcpProfile::plain ? "plain" : "compact"; }

LcpStore::LcpStore(std::span<const std::uint32_t> lcp, LcpProfile profile) : profile_(profile) {
    if (profile_ == LcpProfile::plain) {
        words_.assign(lcp.begin(), lcp.end());
        return;
    }
    bytes_.resize(lcp.size());
    for (std::size_t i = 0; i < lcp.size(); ++i) {
        if (lcp[i] < kEscape) {
            bytes_[i] = static_cast<std::uint8_t>(lcp[i]);
        } else {
            bytes_[i] = kEscape;
            escape_pos_.push_back(static_cast<std::uint32_t>(i));
            escape_val_.push_back(lcp[i]);
        }
    }
}

std::uint32_t LcpStore::escaped(std::size_t i) const {
    const auto it = std::lower_bound(escape_pos_.begin(), escape_pos_.end(), static_cast<std::uint32_t>(i));
    return escape_val_[static_cast<std::size_t>(it - escape_pos_.begin())];
}

std::uint32_t LcpStore::at(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("LcpStore::at: index past end");
    return (*this)[i];
}

void LcpStore::decode(std::size_t begin, std::size_t count, std::uint32_t* out) const {
    if (profile_ == LcpProfile::plain) {
        std::copy_n(words_.begin() + static_cast<std::ptrdiff_t>(begin), count, out);
        return;
    }
    auto esc = std::lower_bound(escape_pos_.begin(), escape_pos_.end(), static_cast<std::uint32_t>(begin));
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint8_t b = bytes_[begin + k];
        if (b != kEscape) {
            out[k] = b;
        } else {
            out[k] = escape_val_[static_cast<std::size_t>(esc - escape_pos_.begin())];
            ++esc;
        }
    }
}

std::size_t LcpStore::size_in_bytes() const {
    return sizeof(*this) + words_.size() * sizeof(std::uint32_t) + bytes_.size() +
           (escape_pos_.size() + escape_val_.size()) * sizeof(std::uint32_t);
}

void LcpStore::save(ByteWriter& out) const {
    out.put<std::uint8_t>(static_cast<std::uint8_t>(profile_));
    if (profile_ == LcpProfile::plain) {
        out.put_array<std::uint32_t>(words_);
        return;
    }
    out.put_array<std::uint8_t>(bytes_);
    out.put_array<std::uint32_t>(escape_pos_);
    out.put_array<std::uint32_t>(escape_val_);
}

LcpStore LcpStore::load(ByteReader& in) {
    LcpStore s;
    const auto tag = in.get<std::uint8_t>();
    if (tag > 1) throw FormatError("unknown LCP profile tag");
    s.profile_ = static_cast<LcpProfile>(tag);
    if (s.profile_ == LcpProfile::plain) {
        s.words_ = in.get_array<std::uint32_t>();
        return s;
    }
    s.bytes_ = in.get_array<std::uint8_t>();
    s.escape_pos_ = in.get_array<std::uint32_t>();
    s.escape_val_ = in.get_array<std::uint32_t>();
    const auto escapes = static_cast<std::size_t>(std::count(s.bytes_.begin(), s.bytes_.end(), kEscape));
    if (s.escape_pos_.size() != escapes || s.escape_val_.size() != escapes ||
        !std::is_sorted(s.escape_pos_.begin(), s.escape_pos_.end()))
        throw FormatError("LCP escape table does not match the byte array");
    for (std::uint32_t p : s.escape_pos_)
        if (p >= s.bytes_.size() || s.bytes_[p] != kEscape) throw FormatError("LCP escape table points at a plain entry");
    return s;
}

template <class Values>
void LcpRmq::build_table(const Values& values, std::size_t n) {
    levels_.clear();
    for (unsigned k = 0; (std::size_t{2} << k) <= n; ++k) {
        const std::size_t span = std::size_t{2} << k;
        const std::size_t half = span / 2;
        PackedIntVector level(n - span + 1, k + 1);
        for (std::size_t i = 0; i + span <= n; ++i) {
            std::size_t a = i, b = i + half;
            if (k > 0) {
                a += levels_[k - 1][a];
                b += levels_[k - 1][b];
            }
            level.set(i, (values(b) < values(a) ? b : a) - i);
        }
        levels_.push_back(std::move(level));
    }
}

template <class Values>
std::size_t LcpRmq::table_query(const Values& values, std::size_t i, std::size_t j) const {
    const std::size_t len = j - i + 1;
    if (len == 1) return i;
    const unsigned k = static_cast<unsigned>(std::bit_width(len)) - 1;
    const std::size_t a = i + levels_[k - 1][i];
    const std::size_t right = j + 1 - (std::size_t{1} << k);
    const std::size_t b = right + levels_[k - 1][right];
    return values(b) < values(a) ? b : a;
}

LcpRmq::LcpRmq(const LcpStore& lcp, LcpProfile profile) : profile_(profile), n_(lcp.size()) {
    if (profile_ == LcpProfile::plain) {
        build_table([&](std::size_t i) { return lcp[i]; }, n_);
        return;
    }
    const std::size_t blocks = (n_ + kBlock - 1) / kBlock;
    block_min_.resize(blocks);
    block_pos_.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(begin + kBlock, n_);
        const std::size_t pos = scan(lcp, begin, end - 1);
        block_pos_[b] = static_cast<std::uint32_t>(pos);
        block_min_[b] = lcp[pos];
    }
    build_table([&](std::size_t b) { return block_min_[b]; }, blocks);
}

std::size_t LcpRmq::scan(const LcpStore& lcp, std::size_t i, std::size_t j) const {
    const auto& k = simd::kernels();
    const std::size_t count = j - i + 1;
    if (const auto words = lcp.plain_words(); !words.empty()) return i + k.argmin_u32(words.data() + i, count);
    std::array<std::uint32_t, kBlock> buf;
    lcp.decode(i, count, buf.data());
    return i + k.argmin_u32(buf.data(), count);
}

std::size_t LcpRmq::argmin(const LcpStore& lcp, std::size_t i, std::size_t j) const {
    if (i > j || j >= n_) throw std::out_of_range("LcpRmq::argmin: bad range");
    if (profile_ == LcpProfile::plain) return table_query([&](std::size_t x) { return lcp[x]; }, i, j);

    const std::size_t bi = i / kBlock, bj = j / kBlock;
    if (bi == bj) return scan(lcp, i, j);
    std::size_t best = scan(lcp, i, (bi + 1) * kBlock - 1);
    auto take = [&](std::size_t cand) {
        if (lcp[cand] < lcp[best]) best = cand;
    };
    if (bj > bi + 1) take(block_pos_[table_query([&](std::size_t b) { return block_min_[b]; }, bi + 1, bj - 1)]);
    take(scan(lcp, bj * kBlock, j));
    return best;
}

std::size_t LcpRmq::size_in_bytes() const {
    std::size_t bytes = sizeof(*this) + (block_min_.size() + block_pos_.size()) * sizeof(std::uint32_t);
    for (const auto& level : levels_) bytes += level.size_in_bytes();
    return bytes;
}

}  // namespace sdm
