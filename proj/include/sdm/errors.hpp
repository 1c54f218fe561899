#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdm {

/// Bad user input: empty pattern, reserved byte, empty dictionary.
/// `position` is the offending pattern index or byte offset when one applies.
class ValidationError : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ValidationError(const std::string& what, std::size_t position = npos)
        : std::runtime_error(what), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Malformed or corrupt serialized data.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Wrong-orientation parenthesis passed to a BP query.
class WrongSideError : public std::invalid_argument {
public:
    explicit WrongSideError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sdm
