#include "sdm/cst_index.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

#include "sdm/errors.hpp"

namespace sdm {
namespace {

enum class Section : std::uint32_t { topology = 1, leaves, csa, lcp, delimiters, marks_m, marks_d, payload };
constexpr std::array kSections{Section::topology, Section::leaves,  Section::csa,     Section::lcp,
                               Section::delimiters, Section::marks_m, Section::marks_d, Section::payload};

const char* section_name(Section s) {
    switch (s) {
        case Section::topology: return "topology";
        case Section::leaves: return "leaves";
        case Section::csa: return "csa";
        case Section::lcp: return "lcp";
        case Section::delimiters: return "delimiters";
        case Section::marks_m: return "marks-m";
        case Section::marks_d: return "marks-d";
        case Section::payload: return "payload";
    }
    return "unknown";
}

std::uint32_t checksum(std::span<const std::uint8_t> data) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large sections in chunks.
    constexpr std::size_t kChunk = 1u << 30;
    for (std::size_t off = 0; off < data.size(); off += kChunk) {
        const std::size_t len = std::min(kChunk, data.size() - off);
        crc = crc32(crc, data.data() + off, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> section_bytes(const CstIndex& index, Section s) {
    ByteWriter w;
    switch (s) {
        case Section::topology: index.cst.topology().save(w); break;
        case Section::leaves: index.cst.leaf_bits().save(w); break;
        case Section::csa: index.cst.csa().save(w); break;
        case Section::lcp: index.cst.lcp().save(w); break;
        case Section::delimiters: w.put_array<std::uint32_t>(index.cst.delimiters()); break;
        case Section::marks_m: index.marks.m_bits().save(w); break;
        case Section::marks_d: index.marks.d_parens().save(w); break;
        case Section::payload:
            index.marks.payload_ids().save(w);
            index.marks.payload_lengths().save(w);
            break;
    }
    return w.take();
}

constexpr std::size_t kHeaderBytes = 4 + 2 + 1 + 1 + 4 + 4;
constexpr std::size_t kEntryBytes = 4 + 8 + 8 + 4;

}  // namespace

MarkedAncestorIndex mark_patterns(const CompressedSuffixTree& cst) {
    const auto nodes = pattern_nodes(cst);
    return MarkedAncestorIndex::build(
        cst.topology(),
        [&](std::size_t v) {
            return std::binary_search(nodes.begin(), nodes.end(), std::pair<std::size_t, std::size_t>{v, 0},
                                      [](const auto& a, const auto& b) { return a.first < b.first; });
        },
        [&](std::size_t v) {
            const auto it = std::lower_bound(nodes.begin(), nodes.end(), std::pair<std::size_t, std::size_t>{v, 0});
            const std::size_t id = it->second;
            return MarkedAncestorIndex::Payload{static_cast<std::uint32_t>(id),
                                                static_cast<std::uint32_t>(cst.pattern_length(id))};
        });
}

CstIndex CstIndex::build(const Dictionary& dict, const CstOptions& options) {
    CstIndex out;
    out.cst = CompressedSuffixTree(dict, options);
    out.marks = mark_patterns(out.cst);
    return out;
}

std::vector<std::uint8_t> serialize_index(const CstIndex& index) {
    std::vector<std::vector<std::uint8_t>> bodies;
    for (Section s : kSections) bodies.push_back(section_bytes(index, s));

    ByteWriter head;
    for (char c : kIndexMagic) head.put(static_cast<std::uint8_t>(c));
    head.put(kIndexVersion);
    head.put(static_cast<std::uint8_t>(index.cst.csa().profile()));
    head.put(static_cast<std::uint8_t>(index.cst.lcp().profile()));
    head.put(static_cast<std::uint32_t>(index.cst.csa().sample_rate()));
    head.put(static_cast<std::uint32_t>(kSections.size()));
    std::uint64_t offset = kHeaderBytes + kEntryBytes * kSections.size();
    for (std::size_t i = 0; i < kSections.size(); ++i) {
        head.put(static_cast<std::uint32_t>(kSections[i]));
        head.put(offset);
        head.put(static_cast<std::uint64_t>(bodies[i].size()));
        head.put(checksum(bodies[i]));
        offset += bodies[i].size();
    }
    auto image = head.take();
    for (const auto& b : bodies) image.insert(image.end(), b.begin(), b.end());
    return image;
}

CstIndex deserialize_index(std::span<const std::uint8_t> image) {
    ByteReader head(image);
    if (image.size() < kHeaderBytes || std::memcmp(image.data(), kIndexMagic, 4) != 0)
        throw FormatError("not an index file (bad magic)");
    for (int i = 0; i < 4; ++i) head.get<std::uint8_t>();
    const auto version = head.get<std::uint16_t>();
    if (version != kIndexVersion)
        throw FormatError("unsupported index version " + std::to_string(version) + " (expected " +
                          std::to_string(kIndexVersion) + ")");
    const auto csa_tag = head.get<std::uint8_t>();
    const auto lcp_tag = head.get<std::uint8_t>();
    const auto sample_rate = head.get<std::uint32_t>();
    if (csa_tag > 1 || lcp_tag > 1) throw FormatError("unknown backend profile tag");
    const auto count = head.get<std::uint32_t>();
    if (count != kSections.size()) throw FormatError("unexpected section count");

    std::array<std::span<const std::uint8_t>, kSections.size()> body;
    for (std::size_t i = 0; i < count; ++i) {
        const auto tag = head.get<std::uint32_t>();
        const auto off = head.get<std::uint64_t>();
        const auto len = head.get<std::uint64_t>();
        const auto crc = head.get<std::uint32_t>();
        if (tag != static_cast<std::uint32_t>(kSections[i])) throw FormatError("section table out of order");
        if (off > image.size() || len > image.size() - off)
            throw FormatError(std::string("section ") + section_name(kSections[i]) + " runs past end of file");
        body[i] = image.subspan(static_cast<std::size_t>(off), static_cast<std::size_t>(len));
        if (checksum(body[i]) != crc)
            throw FormatError(std::string("checksum mismatch in section ") + section_name(kSections[i]) +
                              " (bytes " + std::to_string(off) + ".." + std::to_string(off + len) + ")");
    }

    auto reader = [&](Section s) { return ByteReader(body[static_cast<std::size_t>(s) - 1]); };
    auto finish = [](ByteReader& r, Section s) {
        if (!r.done()) throw FormatError(std::string("trailing bytes in section ") + section_name(s));
    };
    try {
        auto r = reader(Section::topology);
        auto topology = BalancedParens::load(r);
        finish(r, Section::topology);
        r = reader(Section::leaves);
        auto leaves = BitVector::load(r);
        finish(r, Section::leaves);
        r = reader(Section::csa);
        auto csa = CompressedSuffixArray::load(r);
        finish(r, Section::csa);
        if (static_cast<std::uint8_t>(csa.profile()) != csa_tag || csa.sample_rate() != sample_rate)
            throw FormatError("csa parameters disagree with header");
        r = reader(Section::lcp);
        auto lcp = LcpStore::load(r);
        finish(r, Section::lcp);
        if (static_cast<std::uint8_t>(lcp.profile()) != lcp_tag) throw FormatError("lcp profile disagrees with header");
        r = reader(Section::delimiters);
        auto delims = r.get_array<std::uint32_t>();
        finish(r, Section::delimiters);
        r = reader(Section::marks_m);
        auto m = BitVector::load(r);
        finish(r, Section::marks_m);
        r = reader(Section::marks_d);
        auto d = BalancedParens::load(r);
        finish(r, Section::marks_d);
        r = reader(Section::payload);
        auto ids = PackedIntVector::load(r);
        auto lengths = PackedIntVector::load(r);
        finish(r, Section::payload);

        CstIndex out;
        out.cst = CompressedSuffixTree(std::move(topology), std::move(leaves), std::move(csa), std::move(lcp),
                                       std::move(delims));
        const std::size_t tree_size = out.cst.topology().size();
        out.marks = MarkedAncestorIndex::from_parts(std::move(m), std::move(d), std::move(ids), std::move(lengths),
                                                    tree_size);
        // D must be B restricted to the positions set in M.
        const auto& bp = out.cst.topology();
        const auto& mb = out.marks.m_bits();
        const auto& dp = out.marks.d_parens();
        for (std::size_t i = mb.next_one(0), k = 0; i < mb.size(); i = mb.next_one(i + 1), ++k)
            if (bp.is_open(i) != dp.is_open(k)) throw FormatError("marks disagree with the tree topology");
        for (std::size_t k = 0; k < out.marks.payload_ids().size(); ++k)
            if (out.marks.payload_ids()[k] >= out.cst.pattern_count()) throw FormatError("payload names a missing pattern");
        return out;
    } catch (const std::out_of_range& e) {
        throw FormatError(std::string("malformed index: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("malformed index: ") + e.what());
    }
}

void save_index_file(const CstIndex& index, const std::string& path) {
    const auto image = serialize_index(index);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

CstIndex load_index_file(const std::string& path) {
    const std::string bytes = read_file(path);
    return deserialize_index(
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

}  // namespace sdm
