#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdm {

/// Terminates every pattern in the concatenation. 0x00 is reserved as well.
inline constexpr std::uint8_t kDelimiter = 0x01;

inline bool is_reserved_byte(std::uint8_t b) { return b <= kDelimiter; }

/// Patterns P_0..P_{d-1} laid out as P_0 # P_1 # ... P_{d-1} #.
///
/// Duplicate input patterns are dropped; pattern ids index the surviving
/// patterns in first-seen order.
class Dictionary {
public:
    Dictionary() = default;

    /// Throws ValidationError on an empty list, an empty pattern (position =
    /// input index) or a reserved byte (position = offset inside the pattern).
    static Dictionary ingest(const std::vector<std::string>& patterns);

    std::size_t pattern_count() const { return patterns_.size(); }
    const std::vector<std::string>& patterns() const { return patterns_; }
    const std::string& pattern(std::size_t id) const { return patterns_.at(id); }

    /// The concatenation; its length is the sum of pattern lengths plus d.
    const std::string& concat() const { return concat_; }
    std::size_t length() const { return concat_.size(); }
    std::span<const std::uint8_t> bytes() const {
        return {reinterpret_cast<const std::uint8_t*>(concat_.data()), concat_.size()};
    }

    /// Sorted delimiter positions; entry i terminates pattern i.
    const std::vector<std::uint32_t>& delimiter_positions() const { return delimiters_; }

    /// Pattern covering concat position `pos` (a delimiter belongs to the pattern it ends).
    std::size_t pattern_id(std::size_t pos) const;
    std::size_t pattern_start(std::size_t id) const { return id == 0 ? 0 : delimiters_.at(id - 1) + 1; }
    std::size_t max_pattern_length() const { return max_length_; }

    /// Input indices that repeated an earlier pattern and were dropped.
    const std::vector<std::size_t>& dropped_duplicates() const { return duplicates_; }

private:
    std::vector<std::string> patterns_;
    std::string concat_;
    std::vector<std::uint32_t> delimiters_;
    std::vector<std::size_t> duplicates_;
    std::size_t max_length_ = 0;
};

/// Newline-separated patterns. A trailing newline does not add a pattern.
std::vector<std::string> split_pattern_lines(std::string_view contents);

/// Reads and ingests a dictionary file. Throws std::runtime_error on I/O failure.
Dictionary read_dictionary_file(const std::filesystem::path& path);

/// Whole-file read as raw bytes.
std::string read_file(const std::filesystem::path& path);

/// Throws ValidationError (position = offset) if `text` holds a reserved byte.
void validate_text(std::string_view text, std::size_t base_offset = 0);

}  // namespace sdm
