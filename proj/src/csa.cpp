#include "sdm/csa.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "sdm/errors.hpp"
#include "sdm/suffix_array.hpp"

namespace sdm {
namespace {

class BitAppender {
public:
    void put(std::uint64_t value, unsigned bits) {
        if (bits == 0) return;
        const unsigned off = size_ & 63;
        if (off == 0) words_.push_back(0);
        words_.back() |= value << off;
        if (off + bits > 64) words_.push_back(value >> (64 - off));
        size_ += bits;
    }
    // v >= 1: z zeros, a one, then the low z bits of v (z = floor(log2 v)).
    void put_gamma(std::uint64_t v) {
        const unsigned z = static_cast<unsigned>(std::bit_width(v)) - 1;
        if (z >= 63) throw std::length_error("gamma code value too large");
        put(std::uint64_t{1} << z, z + 1);
        put(v & ((std::uint64_t{1} << z) - 1), z);
    }
    std::size_t size() const { return size_; }
    std::vector<std::uint64_t> finish() && {
        words_.push_back(0);
        words_.push_back(0);
        return std::move(words_);
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

inline std::uint64_t peek64(const std::vector<std::uint64_t>& words, std::size_t pos) {
    const std::size_t w = pos >> 6;
    const unsigned off = pos & 63;
    std::uint64_t v = words[w] >> off;
    if (off != 0) v |= words[w + 1] << (64 - off);
    return v;
}

inline std::uint64_t read_gamma(const std::vector<std::uint64_t>& words, std::size_t& pos) {
    const unsigned z = static_cast<unsigned>(std::countr_zero(peek64(words, pos)));
    pos += z + 1;
    const std::uint64_t low = z == 0 ? 0 : peek64(words, pos) & ((std::uint64_t{1} << z) - 1);
    pos += z;
    return (std::uint64_t{1} << z) | low;
}

}  // namespace

const char* profile_name(CsaProfile p) { return p == CsaProfile::plain ? "plain" : "sampled"; }

CompressedSuffixArray::CompressedSuffixArray(std::span<const std::uint8_t> text, std::span<const std::uint32_t> sa,
                                             CsaProfile profile, std::size_t sample_rate)
    : n_(text.size()), profile_(profile), sample_rate_(profile == CsaProfile::plain ? 1 : sample_rate) {
    if (n_ == 0) throw std::invalid_argument("CompressedSuffixArray: empty text");
    if (sa.size() != n_) throw std::invalid_argument("CompressedSuffixArray: suffix array size differs from text");
    if (sample_rate_ == 0) throw std::invalid_argument("CompressedSuffixArray: sample rate must be positive");

    std::array<std::uint32_t, 256> freq{};
    for (std::uint8_t c : text) ++freq[c];
    counts_[0] = 0;
    for (int c = 0; c < 256; ++c) counts_[c + 1] = counts_[c] + freq[c];
    build_char_index();

    const auto isa = inverse_permutation(sa);
    if (profile_ == CsaProfile::plain) {
        sa_ = PackedIntVector::from<std::uint32_t>(sa);
        isa_ = PackedIntVector::from<std::uint32_t>(isa);
        return;
    }

    std::vector<std::uint32_t> psi(n_);
    for (std::size_t i = 0; i < n_; ++i) psi[i] = isa[(sa[i] + 1) % n_];
    encode_psi(psi);

    BitVectorBuilder marked(n_);
    std::size_t sampled = 0;
    for (std::size_t r = 0; r < n_; ++r) {
        if (sa[r] % sample_rate_ == 0 || sa[r] == n_ - 1) {
            marked.set(r);
            ++sampled;
        }
    }
    sa_marked_ = std::move(marked).freeze();
    sa_samples_ = PackedIntVector(sampled, PackedIntVector::width_for(n_ - 1));
    for (std::size_t r = 0, k = 0; r < n_; ++r)
        if (sa_marked_[r]) sa_samples_.set(k++, sa[r]);

    isa_samples_ = PackedIntVector((n_ - 1) / sample_rate_ + 1, PackedIntVector::width_for(n_ - 1));
    for (std::size_t q = 0; q * sample_rate_ < n_; ++q) isa_samples_.set(q, isa[q * sample_rate_]);
}

void CompressedSuffixArray::build_char_index() {
    chars_.clear();
    char_starts_.clear();
    for (int c = 0; c < 256; ++c) {
        if (counts_[c + 1] > counts_[c]) {
            chars_.push_back(static_cast<std::uint8_t>(c));
            char_starts_.push_back(counts_[c]);
        }
    }
}

void CompressedSuffixArray::encode_psi(std::span<const std::uint32_t> psi) {
    const std::size_t blocks = (n_ + kPsiBlock - 1) / kPsiBlock;
    std::vector<std::uint64_t> values(blocks), offsets(blocks);
    BitAppender bits;
    std::size_t band_end = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        const bool band_start = i == band_end;
        if (band_start) band_end = this->band_end(first_char(i));
        if (i % kPsiBlock == 0) {
            values[i / kPsiBlock] = psi[i];
            offsets[i / kPsiBlock] = bits.size();
        } else if (band_start || i == 1) {
            bits.put_gamma(std::uint64_t{psi[i]} + 1);
        } else {
            bits.put_gamma(psi[i] - psi[i - 1]);
        }
    }
    psi_block_offset_ = PackedIntVector::from<std::uint64_t>(offsets);
    psi_block_value_ = PackedIntVector::from<std::uint64_t>(values);
    psi_bits_ = std::move(bits).finish();
}

std::size_t CompressedSuffixArray::psi_sampled(std::size_t rank) const {
    const std::size_t block = rank / kPsiBlock;
    std::size_t start = block * kPsiBlock;
    std::size_t value = psi_block_value_[block];
    std::size_t pos = psi_block_offset_[block];
    std::size_t band_end = this->band_end(first_char(start));
    for (std::size_t j = start + 1; j <= rank; ++j) {
        const std::uint64_t g = read_gamma(psi_bits_, pos);
        if (j == band_end) {
            band_end = this->band_end(first_char(j));
            value = g - 1;
        } else if (j == 1) {
            value = g - 1;
        } else {
            value += g;
        }
    }
    return value;
}

std::size_t CompressedSuffixArray::psi(std::size_t rank) const {
    if (rank >= n_) throw std::out_of_range("CompressedSuffixArray::psi: rank past end");
    if (profile_ == CsaProfile::plain) return isa_[(sa_[rank] + 1) % n_];
    return psi_sampled(rank);
}

std::size_t CompressedSuffixArray::access_sampled(std::size_t rank) const {
    std::size_t steps = 0;
    while (!sa_marked_[rank]) {
        rank = psi_sampled(rank);
        ++steps;
    }
    return sa_samples_[sa_marked_.rank1_unchecked(rank)] - steps;
}

std::size_t CompressedSuffixArray::inverse_sampled(std::size_t pos) const {
    const std::size_t q = pos / sample_rate_;
    std::size_t rank = isa_samples_[q];
    for (std::size_t t = q * sample_rate_; t < pos; ++t) rank = psi_sampled(rank);
    return rank;
}

std::size_t CompressedSuffixArray::access(std::size_t rank) const {
    if (rank >= n_) throw std::out_of_range("CompressedSuffixArray::access: rank past end");
    return profile_ == CsaProfile::plain ? sa_[rank] : access_sampled(rank);
}

std::size_t CompressedSuffixArray::inverse(std::size_t pos) const {
    if (pos >= n_) throw std::out_of_range("CompressedSuffixArray::inverse: position past end");
    return profile_ == CsaProfile::plain ? isa_[pos] : inverse_sampled(pos);
}

std::uint8_t CompressedSuffixArray::first_char(std::size_t rank) const {
    const auto it = std::upper_bound(char_starts_.begin(), char_starts_.end(), static_cast<std::uint32_t>(rank));
    return chars_[static_cast<std::size_t>(it - char_starts_.begin()) - 1];
}

std::uint8_t CompressedSuffixArray::extract_char(std::size_t pos) const { return first_char(inverse(pos)); }

std::string CompressedSuffixArray::extract(std::size_t pos, std::size_t length) const {
    if (pos > n_ || length > n_ - pos) throw std::out_of_range("CompressedSuffixArray::extract: range past end");
    std::string out(length, '\0');
    if (length == 0) return out;
    std::size_t rank = inverse(pos);
    for (std::size_t k = 0; k < length; ++k) {
        out[k] = static_cast<char>(first_char(rank));
        if (k + 1 < length) rank = psi(rank);
    }
    return out;
}

std::size_t CompressedSuffixArray::shifted_rank(std::size_t rank, std::size_t depth) const {
    if (profile_ == CsaProfile::plain) return isa_[sa_[rank] + depth];
    if (depth <= sample_rate_) {
        for (std::size_t k = 0; k < depth; ++k) rank = psi_sampled(rank);
        return rank;
    }
    return inverse_sampled(access_sampled(rank) + depth);
}

std::uint8_t CompressedSuffixArray::char_at(std::size_t rank, std::size_t depth) const {
    return first_char(shifted_rank(rank, depth));
}

std::size_t CompressedSuffixArray::size_in_bytes() const {
    return sizeof(*this) + chars_.size() + char_starts_.size() * sizeof(std::uint32_t) + sa_.size_in_bytes() +
           isa_.size_in_bytes() + psi_bits_.size() * sizeof(std::uint64_t) + psi_block_value_.size_in_bytes() +
           psi_block_offset_.size_in_bytes() + sa_marked_.size_in_bytes() + sa_samples_.size_in_bytes() +
           isa_samples_.size_in_bytes();
}

void CompressedSuffixArray::save(ByteWriter& out) const {
    out.put<std::uint64_t>(n_);
    out.put<std::uint8_t>(static_cast<std::uint8_t>(profile_));
    out.put<std::uint64_t>(sample_rate_);
    for (std::uint32_t c : counts_) out.put(c);
    if (profile_ == CsaProfile::plain) {
        sa_.save(out);
        isa_.save(out);
        return;
    }
    out.put_array<std::uint64_t>(psi_bits_);
    psi_block_value_.save(out);
    psi_block_offset_.save(out);
    sa_marked_.save(out);
    sa_samples_.save(out);
    isa_samples_.save(out);
}

CompressedSuffixArray CompressedSuffixArray::load(ByteReader& in) {
    CompressedSuffixArray csa;
    csa.n_ = static_cast<std::size_t>(in.get<std::uint64_t>());
    const auto tag = in.get<std::uint8_t>();
    if (tag > 1) throw FormatError("unknown suffix array profile tag");
    csa.profile_ = static_cast<CsaProfile>(tag);
    csa.sample_rate_ = static_cast<std::size_t>(in.get<std::uint64_t>());
    for (auto& c : csa.counts_) c = in.get<std::uint32_t>();
    if (csa.n_ == 0 || csa.sample_rate_ == 0 || csa.counts_[0] != 0 || csa.counts_[256] != csa.n_)
        throw FormatError("suffix array header is inconsistent");
    for (int c = 0; c < 256; ++c)
        if (csa.counts_[c + 1] < csa.counts_[c]) throw FormatError("character counts are not monotone");
    csa.build_char_index();

    if (csa.profile_ == CsaProfile::plain) {
        csa.sa_ = PackedIntVector::load(in);
        csa.isa_ = PackedIntVector::load(in);
        if (csa.sa_.size() != csa.n_ || csa.isa_.size() != csa.n_) throw FormatError("suffix array length mismatch");
        return csa;
    }
    csa.psi_bits_ = in.get_array<std::uint64_t>();
    csa.psi_block_value_ = PackedIntVector::load(in);
    csa.psi_block_offset_ = PackedIntVector::load(in);
    csa.sa_marked_ = BitVector::load(in);
    csa.sa_samples_ = PackedIntVector::load(in);
    csa.isa_samples_ = PackedIntVector::load(in);
    const std::size_t blocks = (csa.n_ + kPsiBlock - 1) / kPsiBlock;
    if (csa.psi_bits_.size() < 2 || csa.psi_block_value_.size() != blocks || csa.psi_block_offset_.size() != blocks ||
        csa.sa_marked_.size() != csa.n_ || csa.sa_samples_.size() != csa.sa_marked_.count_ones() ||
        csa.isa_samples_.size() != (csa.n_ - 1) / csa.sample_rate_ + 1)
        throw FormatError("sampled suffix array components are inconsistent");
    return csa;
}

}  // namespace sdm
