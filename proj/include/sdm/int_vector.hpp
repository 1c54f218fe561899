#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdm/serialize.hpp"

namespace sdm {

/// Fixed-width unsigned integers packed back to back into 64-bit words.
class PackedIntVector {
public:
    PackedIntVector() = default;
    PackedIntVector(std::size_t size, unsigned width) : size_(size), width_(width) {
        if (width == 0 || width > 64) throw std::invalid_argument("PackedIntVector: width must be in [1, 64]");
        words_.assign((size * width + 63) / 64 + 1, 0);
    }

    /// Smallest width able to hold `max_value`.
    static unsigned width_for(std::uint64_t max_value) {
        return max_value == 0 ? 1u : static_cast<unsigned>(std::bit_width(max_value));
    }

    template <class T>
    static PackedIntVector from(std::span<const T> values) {
        std::uint64_t hi = 0;
        for (T v : values) hi = std::max<std::uint64_t>(hi, static_cast<std::uint64_t>(v));
        PackedIntVector out(values.size(), width_for(hi));
        for (std::size_t i = 0; i < values.size(); ++i) out.set(i, static_cast<std::uint64_t>(values[i]));
        return out;
    }

    std::size_t size() const { return size_; }
    unsigned width() const { return width_; }

    std::uint64_t operator[](std::size_t i) const {
        const std::size_t bit = i * width_;
        const std::size_t w = bit >> 6;
        const unsigned off = bit & 63;
        std::uint64_t v = words_[w] >> off;
        if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
        return width_ == 64 ? v : v & ((std::uint64_t{1} << width_) - 1);
    }

    void set(std::size_t i, std::uint64_t value) {
        const std::uint64_t mask = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
        value &= mask;
        const std::size_t bit = i * width_;
        const std::size_t w = bit >> 6;
        const unsigned off = bit & 63;
        words_[w] = (words_[w] & ~(mask << off)) | (value << off);
        if (off + width_ > 64) {
            const unsigned spill = 64 - off;
            words_[w + 1] = (words_[w + 1] & ~(mask >> spill)) | (value >> spill);
        }
    }

    std::size_t size_in_bytes() const { return sizeof(*this) + words_.size() * sizeof(std::uint64_t); }

    void save(ByteWriter& out) const {
        out.put<std::uint64_t>(size_);
        out.put<std::uint8_t>(static_cast<std::uint8_t>(width_));
        out.put_array<std::uint64_t>(words_);
    }

    static PackedIntVector load(ByteReader& in) {
        PackedIntVector v;
        v.size_ = static_cast<std::size_t>(in.get<std::uint64_t>());
        v.width_ = in.get<std::uint8_t>();
        v.words_ = in.get_array<std::uint64_t>();
        if (v.width_ == 0 || v.width_ > 64 || v.words_.size() != (v.size_ * v.width_ + 63) / 64 + 1)
            throw FormatError("packed integer vector header does not match payload");
        return v;
    }

    friend bool operator==(const PackedIntVector&, const PackedIntVector&) = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
    unsigned width_ = 1;
};

}  // namespace sdm
