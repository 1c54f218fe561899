#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sdm/cst.hpp"
#include "sdm/matcher.hpp"

namespace sdm::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kVerifyFailed = 2 };

/// Longest pattern per end position by direct substring tests, grouped by pattern length.
std::vector<Occurrence> reference_matches(const std::vector<std::string>& patterns, std::string_view text);

/// One row of the bench table.
struct BenchRow {
    std::string config;
    std::size_t dictionary_bytes = 0;
    std::size_t patterns = 0;
    double build_seconds = 0;
    std::size_t resident_bytes = 0;
    std::size_t serialized_bytes = 0;  // 0 for the pointer tree, which is never serialized
    std::size_t peak_rss_bytes = 0;
    double search_seconds = 0;
    std::size_t text_bytes = 0;
    std::size_t occurrences = 0;
    MatchCounters counters;
};

/// Configuration names accepted by bench: "uncompressed" and "cst-<csa>-<lcp>".
std::vector<std::string> bench_config_names();
BenchRow bench_config(const std::string& config, const Dictionary& dict, std::string_view text,
                      std::size_t sample_rate = CompressedSuffixArray::kDefaultSampleRate);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows);

/// Parses and runs a command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdm::cli
