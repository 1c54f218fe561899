#pragma once

// Little-endian binary writer/reader used by every serializable component.

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "sdm/errors.hpp"

namespace sdm {

class ByteWriter {
public:
    template <class T>
        requires std::is_integral_v<T>
    void put(T value) {
        using U = std::make_unsigned_t<T>;
        auto u = static_cast<U>(value);
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            bytes_.push_back(static_cast<std::uint8_t>(u & 0xffu));
            if constexpr (sizeof(T) > 1) u = static_cast<U>(u >> 8);
        }
    }

    template <class T>
        requires std::is_integral_v<T>
    void put_array(std::span<const T> values) {
        put<std::uint64_t>(values.size());
        for (T v : values) put(v);
    }

    void put_bytes(std::span<const std::uint8_t> data) {
        put<std::uint64_t>(data.size());
        bytes_.insert(bytes_.end(), data.begin(), data.end());
    }

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    template <class T>
        requires std::is_integral_v<T>
    T get() {
        need(sizeof(T));
        using U = std::make_unsigned_t<T>;
        U u = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(static_cast<U>(data_[pos_ + i]) << (8 * i));
        pos_ += sizeof(T);
        return static_cast<T>(u);
    }

    template <class T>
        requires std::is_integral_v<T>
    std::vector<T> get_array() {
        const auto n = get<std::uint64_t>();
        if (n > remaining() / sizeof(T)) throw FormatError("array length exceeds section size");
        std::vector<T> out(static_cast<std::size_t>(n));
        for (auto& v : out) v = get<T>();
        return out;
    }

    std::vector<std::uint8_t> get_bytes() {
        const auto n = get<std::uint64_t>();
        need(static_cast<std::size_t>(n));
        std::vector<std::uint8_t> out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                      data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += static_cast<std::size_t>(n);
        return out;
    }

    std::size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const {
        if (n > remaining()) throw FormatError("unexpected end of data");
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace sdm
