#include "sdm/bit_vector.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "sdm/errors.hpp"
#include "sdm/kernels.hpp"

namespace sdm {

BitVector::BitVector(std::vector<std::uint64_t> words, std::size_t length)
    : words_(std::move(words)), length_(length) {
    if (words_.size() * 64 < length_) throw std::invalid_argument("BitVector: word array shorter than length");
    words_.resize((length_ + 63) / 64);
    if (const unsigned rem = length_ & 63; rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
    build_directories();
}

BitVector::BitVector(const std::vector<bool>& bits) {
    BitVectorBuilder b;
    b.reserve(bits.size());
    for (bool bit : bits) b.push_back(bit);
    *this = std::move(b).freeze();
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVectorBuilder b;
    b.reserve(bits.size());
    for (char c : bits) {
        if (c == '1' || c == '(') b.push_back(true);
        else if (c == '0' || c == ')') b.push_back(false);
        else throw std::invalid_argument("BitVector::from_string: unexpected character");
    }
    return std::move(b).freeze();
}

void BitVector::build_directories() {
    if (length_ > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("BitVector: length exceeds 32-bit rank directory");
    const auto& k = simd::kernels();
    const std::size_t nsb = (words_.size() + kWordsPerSuperblock - 1) / kWordsPerSuperblock;
    super_.assign(nsb + 1, 0);
    std::uint64_t ones = 0;
    for (std::size_t sb = 0; sb < nsb; ++sb) {
        super_[sb] = static_cast<std::uint32_t>(ones);
        const std::size_t begin = sb * kWordsPerSuperblock;
        const std::size_t count = std::min(kWordsPerSuperblock, words_.size() - begin);
        ones += k.popcount_words(words_.data() + begin, count);
    }
    super_[nsb] = static_cast<std::uint32_t>(ones);

    select_sample_.clear();
    std::size_t next = 1;  // 1-based index of the next one to sample
    for (std::size_t sb = 0; sb < nsb; ++sb) {
        while (next <= ones && super_[sb + 1] >= next) {
            select_sample_.push_back(static_cast<std::uint32_t>(sb));
            next += kSelectSample;
        }
    }
}

std::size_t BitVector::select1(std::size_t k) const {
    if (k == 0 || k > count_ones()) throw std::out_of_range("BitVector::select1: k outside [1, popcount]");
    const std::size_t j = (k - 1) / kSelectSample;
    std::size_t lo = select_sample_[j];
    std::size_t hi = j + 1 < select_sample_.size() ? select_sample_[j + 1] : super_.size() - 2;
    // Last superblock in [lo, hi] with fewer than k ones before it.
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (super_[mid] < k) lo = mid;
        else hi = mid - 1;
    }
    std::size_t remaining = k - super_[lo];
    std::size_t w = lo * kWordsPerSuperblock;
    for (;; ++w) {
        const auto pc = static_cast<std::size_t>(std::popcount(words_[w]));
        if (remaining <= pc) break;
        remaining -= pc;
    }
    return w * 64 + simd::kernels().select_in_word(words_[w], static_cast<unsigned>(remaining));
}

std::size_t BitVector::next_one(std::size_t i) const {
    if (i >= length_) return length_;
    std::size_t w = i >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (word == 0) {
        if (++w == words_.size()) return length_;
        word = words_[w];
    }
    return std::min(length_, w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
}

std::size_t BitVector::prev_zero(std::size_t i) const {
    if (i == 0) return npos;
    i = std::min(i, length_);
    std::size_t w = (i - 1) >> 6;
    const unsigned top = static_cast<unsigned>((i - 1) & 63);
    // Zeros at positions <= i-1 within the word.
    std::uint64_t zeros = ~words_[w];
    if (top != 63) zeros &= (std::uint64_t{1} << (top + 1)) - 1;
    while (zeros == 0) {
        if (w == 0) return npos;
        zeros = ~words_[--w];
    }
    return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(zeros));
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if ((*this)[i]) s[i] = '1';
    return s;
}

std::size_t BitVector::size_in_bytes() const {
    return sizeof(*this) + words_.size() * sizeof(std::uint64_t) + super_.size() * sizeof(std::uint32_t) +
           select_sample_.size() * sizeof(std::uint32_t);
}

void BitVector::save(ByteWriter& out) const {
    out.put<std::uint64_t>(length_);
    out.put_array<std::uint64_t>(words_);
}

BitVector BitVector::load(ByteReader& in) {
    const auto length = in.get<std::uint64_t>();
    auto words = in.get_array<std::uint64_t>();
    if (words.size() != (length + 63) / 64) throw FormatError("bit vector word count does not match length");
    return BitVector(std::move(words), static_cast<std::size_t>(length));
}

}  // namespace sdm
