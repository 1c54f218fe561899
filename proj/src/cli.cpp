#include "sdm/cli.hpp"

#include <sys/resource.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <atomic>
#include <cstdlib>

#include "sdm/cst_index.hpp"
#include "sdm/errors.hpp"
#include "sdm/gst.hpp"

namespace sdm::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t peak_rss_bytes() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<std::size_t>(ru.ru_maxrss) * 1024;
}

CsaProfile parse_csa(const std::string& s) {
    if (s == "plain") return CsaProfile::plain;
    if (s == "sampled") return CsaProfile::sampled;
    throw ValidationError("unknown csa profile '" + s + "'");
}

LcpProfile parse_lcp(const std::string& s) {
    if (s == "plain") return LcpProfile::plain;
    if (s == "compact") return LcpProfile::compact;
    throw ValidationError("unknown lcp profile '" + s + "'");
}

std::string config_name(const CstOptions& o) {
    return std::string("cst-") + profile_name(o.csa) + "-" + profile_name(o.lcp);
}

void write_tsv(std::ostream& out, const std::vector<Occurrence>& occ) {
    for (const auto& o : occ) out << o.end_pos << '\t' << o.pattern_id << '\t' << o.length << '\n';
}

std::string show(const std::optional<Occurrence>& o) {
    if (!o) return "none";
    std::ostringstream os;
    os << "(end " << o->end_pos << ", pattern " << o->pattern_id << ", length " << o->length << ")";
    return os.str();
}

/// First end position where two canonical outputs disagree, with both records.
struct Divergence {
    std::size_t end_pos;
    std::optional<Occurrence> want, got;
};

std::optional<Divergence> first_divergence(const std::vector<Occurrence>& want, const std::vector<Occurrence>& got) {
    std::size_t i = 0, j = 0;
    while (i < want.size() || j < got.size()) {
        const std::size_t a = i < want.size() ? want[i].end_pos : static_cast<std::size_t>(-1);
        const std::size_t b = j < got.size() ? got[j].end_pos : static_cast<std::size_t>(-1);
        const std::size_t pos = std::min(a, b);
        std::optional<Occurrence> x = a == pos ? std::optional(want[i]) : std::nullopt;
        std::optional<Occurrence> y = b == pos ? std::optional(got[j]) : std::nullopt;
        if (x != y) return Divergence{pos, x, y};
        i += a == pos;
        j += b == pos;
    }
    return std::nullopt;
}

std::string random_word(std::mt19937_64& rng, std::size_t len, const std::string& alphabet) {
    std::string s(len, ' ');
    for (auto& c : s) c = alphabet[rng() % alphabet.size()];
    return s;
}

/// Random dictionary with nested patterns plus a text that splices them in.
std::pair<std::vector<std::string>, std::string> random_case(std::mt19937_64& rng, const std::string& alphabet) {
    const std::size_t d = 1 + rng() % 64;
    std::vector<std::string> pats;
    std::set<std::string> seen;
    for (std::size_t tries = 0; pats.size() < d && tries < 8 * d; ++tries) {
        std::string p;
        if (!pats.empty() && rng() % 2) {
            const std::string& base = pats[rng() % pats.size()];
            const std::size_t l = 1 + rng() % base.size();
            const std::size_t at = rng() % 3 == 0 ? 0 : rng() % (base.size() - l + 1);
            p = base.substr(at, l);
        } else {
            p = random_word(rng, 1 + rng() % 64, alphabet);
        }
        if (seen.insert(p).second) pats.push_back(p);
    }
    std::string text;
    const std::size_t n = rng() % 8193;
    while (text.size() < n) text += rng() % 3 ? random_word(rng, 1 + rng() % 8, alphabet) : pats[rng() % pats.size()];
    text.resize(n);
    return {pats, text};
}

struct VerifyOutcome {
    bool pass = true;
    std::string detail;
};

/// Runs both backends against the reference; `corrupt_bit` flips one bit of the serialized index first.
VerifyOutcome verify_case(const Dictionary& dict, std::string_view text, const CstOptions& opt,
                          std::optional<std::size_t> corrupt_bit) {
    const auto want = reference_matches(dict.patterns(), text);
    const GeneralizedSuffixTree gst(dict);
    if (const auto d = first_divergence(want, search(gst, text)))
        return {false, "backend uncompressed diverges at end position " + std::to_string(d->end_pos) + ": expected " +
                           show(d->want) + ", got " + show(d->got)};

    auto image = serialize_index(CstIndex::build(dict, opt));
    if (corrupt_bit) {
        if (*corrupt_bit >= image.size() * 8)
            throw ValidationError("--corrupt-bit " + std::to_string(*corrupt_bit) + " is past the index image (" +
                                  std::to_string(image.size() * 8) + " bits)");
        image[*corrupt_bit / 8] ^= static_cast<std::uint8_t>(1u << (*corrupt_bit % 8));
    }
    CstIndex ix;
    try {
        ix = deserialize_index(image);
    } catch (const FormatError& e) {
        return {false, "backend " + config_name(opt) + " index rejected at bit " +
                           std::to_string(corrupt_bit.value_or(0)) + " (byte " +
                           std::to_string(corrupt_bit.value_or(0) / 8) + "): " + e.what()};
    }
    if (const auto d = first_divergence(want, search(ix, text)))
        return {false, "backend " + config_name(opt) + " diverges at end position " + std::to_string(d->end_pos) +
                           ": expected " + show(d->want) + ", got " + show(d->got)};
    return {true, std::to_string(want.size()) + " occurrences"};
}

std::string text_of(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

}  // namespace

std::vector<Occurrence> reference_matches(const std::vector<std::string>& patterns, std::string_view text) {
    std::map<std::size_t, std::unordered_map<std::string_view, std::size_t>, std::greater<>> by_length;
    for (std::size_t k = 0; k < patterns.size(); ++k) by_length[patterns[k].size()].emplace(patterns[k], k);
    std::vector<Occurrence> out;
    for (std::size_t end = 0; end < text.size(); ++end) {
        for (const auto& [len, group] : by_length) {
            if (len > end + 1) continue;
            const auto it = group.find(text.substr(end + 1 - len, len));
            if (it != group.end()) {
                out.push_back({end, it->second, len});
                break;
            }
        }
    }
    return out;
}

std::vector<std::string> bench_config_names() {
    return {"uncompressed", "cst-plain-plain", "cst-plain-compact", "cst-sampled-plain", "cst-sampled-compact"};
}

BenchRow bench_config(const std::string& config, const Dictionary& dict, std::string_view text,
                      std::size_t sample_rate) {
    BenchRow row;
    row.config = config;
    row.dictionary_bytes = dict.length() - dict.pattern_count();
    row.patterns = dict.pattern_count();
    row.text_bytes = text.size();
    if (config == "uncompressed") {
        auto t0 = Clock::now();
        const GeneralizedSuffixTree gst(dict);
        row.build_seconds = seconds_since(t0);
        row.resident_bytes = gst.size_in_bytes();
        t0 = Clock::now();
        row.occurrences = search(gst, text, &row.counters).size();
        row.search_seconds = seconds_since(t0);
    } else {
        const auto dash = config.find('-', 4);
        if (config.rfind("cst-", 0) != 0 || dash == std::string::npos)
            throw ValidationError("unknown bench configuration '" + config + "'");
        const CstOptions opt{parse_csa(config.substr(4, dash - 4)), parse_lcp(config.substr(dash + 1)), sample_rate};
        auto t0 = Clock::now();
        const auto ix = CstIndex::build(dict, opt);
        row.build_seconds = seconds_since(t0);
        row.resident_bytes = ix.size_in_bytes();
        row.serialized_bytes = serialize_index(ix).size();
        t0 = Clock::now();
        row.occurrences = search(ix, text, &row.counters).size();
        row.search_seconds = seconds_since(t0);
    }
    row.peak_rss_bytes = peak_rss_bytes();
    return row;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "config,dictionary_bytes,patterns,build_seconds,resident_bytes,serialized_bytes,peak_rss_bytes,"
           "search_seconds,text_bytes,occurrences,comparisons,suffix_links,up_steps\n";
    for (const auto& r : rows)
        out << r.config << ',' << r.dictionary_bytes << ',' << r.patterns << ',' << r.build_seconds << ','
            << r.resident_bytes << ',' << r.serialized_bytes << ',' << r.peak_rss_bytes << ',' << r.search_seconds
            << ',' << r.text_bytes << ',' << r.occurrences << ',' << r.counters.comparisons << ','
            << r.counters.suffix_links << ',' << r.counters.up_steps << '\n';
}

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows) {
    auto mb = [](std::size_t b) { return static_cast<double>(b) / (1024.0 * 1024.0); };
    out << std::left << std::setw(22) << "config" << std::right << std::setw(12) << "space MB" << std::setw(12)
        << "file MB" << std::setw(12) << "build s" << std::setw(12) << "search s" << std::setw(14) << "occurrences"
        << std::setw(16) << "comparisons" << '\n';
    out << std::fixed;
    for (const auto& r : rows) {
        out << std::left << std::setw(22) << r.config << std::right << std::setprecision(2) << std::setw(12)
            << mb(r.resident_bytes) << std::setw(12);
        if (r.serialized_bytes) out << mb(r.serialized_bytes);
        else out << "-";
        out << std::setprecision(3) << std::setw(12) << r.build_seconds << std::setw(12) << r.search_seconds
            << std::setw(14) << r.occurrences << std::setw(16) << r.counters.comparisons << '\n';
    }
    out << std::defaultfloat;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dictionary matching over suffix trees"};
    app.require_subcommand(1);

    std::string dict_path, out_path, index_path, backend = "cst", csa = "sampled", lcp = "compact";
    std::vector<std::string> text_paths;
    std::string text_path, csv_path, configs;
    std::size_t sample_rate = CompressedSuffixArray::kDefaultSampleRate;
    std::size_t jobs = 1, max_text = std::size_t{1} << 20, random_trials = 0;
    std::optional<std::size_t> corrupt_bit;
    std::optional<std::uint64_t> seed;
    bool force = false, csv_stdout = false;

    auto add_profile = [&](CLI::App* sub) {
        sub->add_option("--csa", csa, "CSA profile: plain or sampled")->check(CLI::IsMember({"plain", "sampled"}));
        sub->add_option("--lcp", lcp, "LCP profile: plain or compact")->check(CLI::IsMember({"plain", "compact"}));
        sub->add_option("--sample-rate", sample_rate, "SA/ISA sample rate of the sampled CSA")
            ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    };

    auto* build = app.add_subcommand("build", "Build an index from a newline-delimited dictionary");
    build->add_option("dictionary", dict_path, "Dictionary file")->required();
    build->add_option("-o,--out", out_path, "Index file to write (cst backend)");
    build->add_option("--backend", backend, "gst or cst")->check(CLI::IsMember({"gst", "cst"}));
    add_profile(build);

    auto* searchc = app.add_subcommand("search", "Report the longest pattern ending at each text position");
    searchc->add_option("index", index_path, "Index file")->required();
    searchc->add_option("texts", text_paths, "Text files ('-' for stdin)")->required();
    searchc->add_option("-o,--out", out_path, "TSV output file (default stdout)");
    searchc->add_option("-j,--jobs", jobs, "Worker threads across text files")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Check both backends against direct substring tests");
    verify->add_option("dictionary", dict_path, "Dictionary file");
    verify->add_option("text", text_path, "Text file");
    verify->add_option("--random", random_trials, "Run this many random trials instead of files");
    verify->add_option("--seed", seed, "Seed for --random (default SDM_SEED or 1)");
    verify->add_option("--max-text-bytes", max_text, "Refuse larger texts unless --force");
    verify->add_flag("--force", force, "Lift the text size cap");
    verify->add_option("--corrupt-bit", corrupt_bit, "Flip this bit of the serialized index before loading");
    add_profile(verify);

    auto* bench = app.add_subcommand("bench", "Time and space per configuration");
    bench->add_option("dictionary", dict_path, "Dictionary file")->required();
    bench->add_option("text", text_path, "Text file")->required();
    bench->add_option("--configs", configs, "Comma-separated configurations (default all)");
    bench->add_option("--csv", csv_path, "Also write CSV here");
    bench->add_flag("--csv-stdout", csv_stdout, "Print CSV instead of the table");
    bench->add_option("--sample-rate", sample_rate, "Sample rate for sampled profiles")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (app.get_subcommands().empty()) err << app.help();
        return kValidation;
    }

    try {
        const CstOptions opt{parse_csa(csa), parse_lcp(lcp), sample_rate};

        if (build->parsed()) {
            const auto t0 = Clock::now();
            const Dictionary dict = read_dictionary_file(dict_path);
            for (std::size_t i : dict.dropped_duplicates())
                err << "warning: duplicate pattern on line " << i + 1 << " dropped\n";
            if (backend == "gst") {
                if (!out_path.empty()) throw ValidationError("the gst backend is built in memory only and cannot be saved");
                const GeneralizedSuffixTree gst(dict);
                out << "backend\tuncompressed\npatterns\t" << dict.pattern_count() << "\nnodes\t" << gst.node_count()
                    << "\nmarked\t" << gst.marked_count() << "\nresident_bytes\t" << gst.size_in_bytes()
                    << "\nbuild_seconds\t" << seconds_since(t0) << '\n';
                return kOk;
            }
            if (out_path.empty()) throw ValidationError("build: --out is required for the cst backend");
            const auto ix = CstIndex::build(dict, opt);
            save_index_file(ix, out_path);
            out << "backend\t" << config_name(opt) << "\npatterns\t" << dict.pattern_count() << "\nnodes\t"
                << ix.cst.node_count() << "\nmarked\t" << ix.marks.marked_count() << "\nresident_bytes\t"
                << ix.size_in_bytes() << "\nbuild_seconds\t" << seconds_since(t0) << '\n';
            return kOk;
        }

        if (searchc->parsed()) {
            const CstIndex ix = load_index_file(index_path);
            std::vector<std::string> results(text_paths.size());
            std::vector<std::size_t> counts(text_paths.size());
            std::vector<std::string> errors(text_paths.size());
            auto work = [&](std::size_t k) {
                try {
                    std::ostringstream os;
                    const std::string text = text_of(text_paths[k]);
                    const auto occ = search(ix, text);
                    write_tsv(os, occ);
                    results[k] = os.str();
                    counts[k] = occ.size();
                } catch (const std::exception& e) {
                    errors[k] = text_paths[k] + ": " + e.what();
                }
            };
            const std::size_t workers = std::min(jobs, text_paths.size());
            if (workers <= 1) {
                for (std::size_t k = 0; k < text_paths.size(); ++k) work(k);
            } else {
                std::vector<std::thread> pool;
                std::atomic<std::size_t> next{0};
                for (std::size_t w = 0; w < workers; ++w)
                    pool.emplace_back([&] {
                        for (std::size_t k; (k = next++) < text_paths.size();) work(k);
                    });
                for (auto& t : pool) t.join();
            }
            for (const auto& e : errors)
                if (!e.empty()) throw ValidationError(e);
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::trunc);
                if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
            }
            std::ostream& dest = out_path.empty() ? out : file;
            std::size_t total = 0;
            for (std::size_t k = 0; k < results.size(); ++k) {
                if (results.size() > 1) dest << "# " << text_paths[k] << '\n';
                dest << results[k];
                total += counts[k];
            }
            err << "occurrences\t" << total << '\n';
            return kOk;
        }

        if (verify->parsed()) {
            if (random_trials > 0) {
                std::uint64_t s = seed.value_or(1);
                if (!seed)
                    if (const char* env = std::getenv("SDM_SEED")) s = std::strtoull(env, nullptr, 10);
                out << "seed\t" << s << "\ntrials\t" << random_trials << '\n';
                std::mt19937_64 rng(s);
                const std::vector<std::string> alphabets{"ab", "acgt", "abcdefghijklmnopqrstuvwxyz"};
                const std::vector<CstOptions> profiles{{CsaProfile::plain, LcpProfile::plain, sample_rate},
                                                       {CsaProfile::plain, LcpProfile::compact, sample_rate},
                                                       {CsaProfile::sampled, LcpProfile::plain, sample_rate},
                                                       {CsaProfile::sampled, LcpProfile::compact, sample_rate}};
                for (std::size_t t = 0; t < random_trials; ++t) {
                    const auto [pats, text] = random_case(rng, alphabets[t % alphabets.size()]);
                    const auto r = verify_case(Dictionary::ingest(pats), text, profiles[t % profiles.size()], corrupt_bit);
                    if (!r.pass) {
                        out << "FAIL\ttrial " << t << " (seed " << s << "): " << r.detail << '\n';
                        return kVerifyFailed;
                    }
                }
                out << "PASS\n";
                return kOk;
            }
            if (dict_path.empty() || text_path.empty())
                throw ValidationError("verify: give a dictionary and a text, or --random N");
            const Dictionary dict = read_dictionary_file(dict_path);
            const std::string text = text_of(text_path);
            if (text.size() > max_text && !force)
                throw ValidationError("verify: text is " + std::to_string(text.size()) +
                                      " bytes, over the reference cap of " + std::to_string(max_text) +
                                      " (use --force or --max-text-bytes)");
            validate_text(text);
            const auto r = verify_case(dict, text, opt, corrupt_bit);
            out << (r.pass ? "PASS\t" : "FAIL\t") << r.detail << '\n';
            return r.pass ? kOk : kVerifyFailed;
        }

        if (bench->parsed()) {
            const Dictionary dict = read_dictionary_file(dict_path);
            const std::string text = text_of(text_path);
            validate_text(text);
            std::vector<std::string> names;
            if (configs.empty()) {
                names = bench_config_names();
            } else {
                std::stringstream ss(configs);
                for (std::string c; std::getline(ss, c, ',');)
                    if (!c.empty()) names.push_back(c);
            }
            std::vector<BenchRow> rows;
            for (const auto& name : names) rows.push_back(bench_config(name, dict, text, sample_rate));
            if (csv_stdout) write_bench_csv(out, rows);
            else write_bench_table(out, rows);
            if (!csv_path.empty()) {
                std::ofstream f(csv_path, std::ios::trunc);
                if (!f) throw std::runtime_error("cannot open " + csv_path + " for writing");
                write_bench_csv(f, rows);
            }
            return kOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}

}  // namespace sdm::cli
