#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdm/cst.hpp"
#include "sdm/dictionary.hpp"
#include "sdm/lma.hpp"

namespace sdm {

/// Marks every internal node whose path label is a whole pattern; payload is
/// (pattern id, pattern length).
MarkedAncestorIndex mark_patterns(const CompressedSuffixTree& cst);

/// Compressed suffix tree of a dictionary together with its pattern marks.
struct CstIndex {
    CompressedSuffixTree cst;
    MarkedAncestorIndex marks;

    static CstIndex build(const Dictionary& dict, const CstOptions& options = {});
    std::size_t size_in_bytes() const { return cst.size_in_bytes() + marks.size_in_bytes(); }
};

inline constexpr char kIndexMagic[4] = {'S', 'D', 'M', 'X'};
inline constexpr std::uint16_t kIndexVersion = 1;

/// Index file image: magic, version, profile tags, a section table
/// (tag, offset, length, crc32) and the sections themselves.
std::vector<std::uint8_t> serialize_index(const CstIndex& index);
/// Throws FormatError on bad magic, version, checksum or structure.
CstIndex deserialize_index(std::span<const std::uint8_t> image);

void save_index_file(const CstIndex& index, const std::string& path);
CstIndex load_index_file(const std::string& path);

}  // namespace sdm
