#include "sdm/dictionary.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "sdm/errors.hpp"

namespace sdm {

Dictionary Dictionary::ingest(const std::vector<std::string>& patterns) {
    if (patterns.empty()) throw ValidationError("dictionary has no patterns");
    Dictionary dict;
    std::unordered_set<std::string_view> seen;
    seen.reserve(patterns.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const std::string& p = patterns[i];
        if (p.empty()) throw ValidationError("empty pattern at index " + std::to_string(i), i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (is_reserved_byte(static_cast<std::uint8_t>(p[k])))
                throw ValidationError("reserved byte in pattern " + std::to_string(i) + " at offset " + std::to_string(k), k);
        }
        if (!seen.insert(p).second) {
            dict.duplicates_.push_back(i);
            continue;
        }
        total += p.size() + 1;
    }
    if (total > std::numeric_limits<std::uint32_t>::max() / 2)
        throw ValidationError("dictionary exceeds the supported size");

    dict.concat_.reserve(total);
    std::unordered_set<std::size_t> dropped(dict.duplicates_.begin(), dict.duplicates_.end());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (dropped.count(i)) continue;
        dict.patterns_.push_back(patterns[i]);
        dict.concat_ += patterns[i];
        dict.delimiters_.push_back(static_cast<std::uint32_t>(dict.concat_.size()));
        dict.concat_.push_back(static_cast<char>(kDelimiter));
        dict.max_length_ = std::max(dict.max_length_, patterns[i].size());
    }
    return dict;
}

std::size_t Dictionary::pattern_id(std::size_t pos) const {
    if (pos >= concat_.size()) throw std::out_of_range("Dictionary::pattern_id: position past end");
    return static_cast<std::size_t>(std::lower_bound(delimiters_.begin(), delimiters_.end(), pos) - delimiters_.begin());
}

std::vector<std::string> split_pattern_lines(std::string_view contents) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < contents.size()) {
        const std::size_t nl = contents.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(contents.substr(start));
            break;
        }
        lines.emplace_back(contents.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read error on " + path.string());
    return std::move(buf).str();
}

Dictionary read_dictionary_file(const std::filesystem::path& path) {
    return Dictionary::ingest(split_pattern_lines(read_file(path)));
}

void validate_text(std::string_view text, std::size_t base_offset) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (is_reserved_byte(static_cast<std::uint8_t>(text[i])))
            throw ValidationError("reserved byte in text at offset " + std::to_string(base_offset + i), base_offset + i);
    }
}

}  // namespace sdm
