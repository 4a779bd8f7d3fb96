// atr: approximate text retrieval over noisy plain-text corpora.
//
// Subcommands: search (scan files), explain (show the compiled pattern),
// estimate (expected occurrence counts and miss probabilities), bench
// (error-injection recall measurements).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atr/atr.hpp"

using nlohmann::json;

namespace {

struct CliConfig {
    atr::QueryConfig query;
    std::string affix_path;  // empty: use the built-in table
    bool case_sensitive = false;
    std::size_t context = 40;
    std::string output = "human";
};

void add_common_options(CLI::App& cmd, CliConfig& cfg) {
    cmd.add_option("--percent-scan", cfg.query.percent_scan,
                   "Share of the query carried by one component, 1-100")
        ->check(CLI::Range(1, 100));
    cmd.add_option("--gap-multiplier", cfg.query.gap_multiplier,
                   "Gap bound per segment-index step")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--min-gap-factor", cfg.query.min_gap_factor,
                   "Multiplier on the minimum layout distance")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--short-word-limit", cfg.query.short_word_limit,
                   "Words this short use the tight gap rule")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--affixes", cfg.affix_path,
                   "Affix table file (default: built-in table)")
        ->envname("ATR_AFFIXES");
    cmd.add_flag("--case-sensitive", cfg.case_sensitive,
                 "Match exact character case");
}

const atr::AffixTable& resolve_affixes(const CliConfig& cfg,
                                       atr::AffixTable& storage) {
    if (cfg.affix_path.empty()) return atr::default_affix_table();
    std::ifstream in(cfg.affix_path);
    if (!in) {
        throw std::runtime_error("cannot open affix file: " + cfg.affix_path);
    }
    storage = atr::load_affix_table(in);
    return storage;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return static_cast<bool>(in) || in.eof();
}

std::string sanitize_line(std::string_view snippet) {
    std::string out(snippet);
    for (char& c : out) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return out;
}

int cmd_search(const std::string& query, const std::vector<std::string>& paths,
               const CliConfig& cfg) {
    atr::AffixTable storage;
    const atr::AffixTable& table = resolve_affixes(cfg, storage);
    const atr::CompositeQuery cq =
        atr::compile_query(std::string_view(query), table, cfg.query);
    bool any_match = false;
    bool any_readable = false;
    for (const auto& path : paths) {
        std::string bytes;
        if (!read_file(path, bytes)) {
            std::cerr << "atr: cannot read " << path << "\n";
            continue;
        }
        any_readable = true;
        bool had_invalid = false;
        atr::Document doc = atr::Document::from_utf8(path, bytes, &had_invalid);
        if (had_invalid) {
            std::cerr << "atr: warning: " << path
                      << ": invalid UTF-8 replaced\n";
        }
        for (const atr::Match& match :
             atr::scan(cq, doc, !cfg.case_sensitive)) {
            any_match = true;
            const std::string snippet = atr::highlight(match, doc, cfg.context);
            if (cfg.output == "jsonl") {
                json spans = json::array();
                for (const atr::Span& span : match.spans) {
                    spans.push_back({span.begin, span.end});
                }
                json line = {{"file", path},
                             {"component", match.component_index},
                             {"spans", spans},
                             {"snippet", snippet}};
                std::cout << line.dump() << "\n";
            } else {
                std::cout << path << ":" << match.full_span.begin;
                if (cq.kind == atr::QueryKind::multi_word) {
                    std::cout << " [" << match.component_index << "]";
                }
                std::cout << " " << sanitize_line(snippet) << "\n";
            }
        }
    }
    if (!any_readable) {
        std::cerr << "atr: no readable input files\n";
        return 2;
    }
    return any_match ? 0 : 1;
}

int cmd_explain(const std::string& query, const CliConfig& cfg) {
    atr::AffixTable storage;
    const atr::AffixTable& table = resolve_affixes(cfg, storage);
    const auto words = atr::query_words(atr::utf8_decode(query).text);
    if (words.empty()) throw std::invalid_argument("empty query");
    const atr::CompositeQuery cq =
        atr::compile_query(std::string_view(query), table, cfg.query);
    std::string normalized;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) normalized.push_back(' ');
        normalized += atr::utf8_encode(words[i]);
    }
    std::cout << "query: " << normalized << "\n";
    if (cq.kind == atr::QueryKind::multi_word) {
        const atr::SegmentSequence seq =
            atr::build_segment_sequence(words, table);
        std::cout << "segments (m=" << seq.segment_count()
                  << ", n=" << seq.word_count << ", b=" << cq.block_count
                  << "):\n";
        for (std::size_t i = 0; i + 1 < seq.segments.size(); i += 2) {
            const auto& head = seq.segments[i];
            const auto& tail = seq.segments[i + 1];
            std::cout << "  "
                      << atr::utf8_encode(seq.query_layout.substr(
                             head.start, head.word_length))
                      << " -> " << atr::utf8_encode(head.text) << " | "
                      << atr::utf8_encode(tail.text) << "\n";
        }
        std::cout << "components:\n";
        for (const auto& comp : cq.components) {
            std::cout << atr::render_component(comp) << "\n";
        }
        std::cout << "composite:\n";
    } else if (cq.kind == atr::QueryKind::single_word) {
        std::cout << "single-word pattern, " << cq.components.size()
                  << " branches:\n";
    } else {
        std::cout << "literal:\n";
    }
    std::cout << atr::render_pattern(cq) << "\n";
    return 0;
}

int cmd_estimate(const std::string& query, std::size_t text_length,
                 double epsilon, const std::string& model_kind,
                 const std::string& alphabet, const std::string& corpus_path,
                 const CliConfig& cfg) {
    atr::AffixTable storage;
    const atr::AffixTable& table = resolve_affixes(cfg, storage);
    std::string effective_query = query;
    if (!cfg.case_sensitive) {
        for (char& c : effective_query) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
    }
    const atr::CompositeQuery cq =
        atr::compile_query(std::string_view(effective_query), table, cfg.query);
    const std::u32string alpha32 = atr::utf8_decode(alphabet).text;
    atr::CharModel model;
    if (model_kind == "uniform") {
        model = atr::CharModel::uniform(alpha32);
    } else if (model_kind == "empirical") {
        if (corpus_path.empty()) {
            throw std::runtime_error("empirical model needs --corpus");
        }
        std::string bytes;
        if (!read_file(corpus_path, bytes)) {
            throw std::runtime_error("cannot read corpus: " + corpus_path);
        }
        model = atr::CharModel::from_sample(alpha32,
                                            atr::utf8_decode(bytes).text);
    } else {
        throw std::runtime_error("unknown model: " + model_kind);
    }
    const atr::MissModel miss = atr::miss_probability(cq, epsilon);
    const double composite = atr::composite_expected(cq, text_length, model);
    if (cfg.output == "jsonl") {
        for (std::size_t i = 0; i < cq.components.size(); ++i) {
            const auto& comp = cq.components[i];
            json line = {
                {"component", i + 1},
                {"pattern", atr::render_component(comp)},
                {"literal_chars", comp.literal_length()},
                {"probability", atr::pattern_probability(comp, model)},
                {"expected_occurrences",
                 atr::expected_occurrences(comp, text_length, model)},
                {"miss", miss.per_component[i]}};
            std::cout << line.dump() << "\n";
        }
        json total = {{"composite_expected", composite},
                      {"composite_miss", miss.composite},
                      {"epsilon", epsilon},
                      {"text_length", text_length}};
        std::cout << total.dump() << "\n";
        return 0;
    }
    std::cout << "query: " << query << "\n";
    std::cout << "text length: " << text_length
              << "  alphabet: " << alpha32.size() << " (" << model_kind
              << ")  epsilon: " << epsilon << "\n";
    for (std::size_t i = 0; i < cq.components.size(); ++i) {
        const auto& comp = cq.components[i];
        std::cout << "component " << (i + 1) << ": "
                  << atr::render_component(comp) << "\n";
        std::cout << "  literal chars: " << comp.literal_length()
                  << "  P(Q): " << atr::pattern_probability(comp, model)
                  << "  E[occurrences]: "
                  << atr::expected_occurrences(comp, text_length, model)
                  << "  miss: " << miss.per_component[i] << "\n";
    }
    std::cout << "composite: E[occurrences]: " << composite
              << "  miss: " << miss.composite << "\n";
    return 0;
}

std::u32string default_carrier(const std::u32string& query_normalized,
                               std::uint64_t seed, std::size_t filler_words) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> word_len(3, 9);
    std::uniform_int_distribution<int> letter('a', 'z');
    auto filler = [&](std::size_t count) {
        std::u32string out;
        for (std::size_t w = 0; w < count; ++w) {
            const int len = word_len(rng);
            for (int i = 0; i < len; ++i) {
                out.push_back(static_cast<char32_t>(letter(rng)));
            }
            out.push_back(U' ');
        }
        return out;
    };
    std::u32string carrier = filler(filler_words / 2);
    carrier += query_normalized;
    carrier.push_back(U' ');
    carrier += filler(filler_words - filler_words / 2);
    return carrier;
}

int cmd_bench(const std::string& query, std::vector<double> epsilons,
              std::size_t trials, std::uint64_t seed,
              std::vector<std::size_t> blocks, const std::string& kinds_csv,
              const std::string& carrier_path, const CliConfig& cfg) {
    atr::AffixTable storage;
    const atr::AffixTable& table = resolve_affixes(cfg, storage);
    if (epsilons.empty()) epsilons = {0.0, 0.01, 0.02, 0.05};
    std::vector<atr::EditKind> kinds;
    std::stringstream kinds_stream(kinds_csv);
    std::string kind_name;
    while (std::getline(kinds_stream, kind_name, ',')) {
        if (kind_name == "substitution" || kind_name == "sub") {
            kinds.push_back(atr::EditKind::substitution);
        } else if (kind_name == "insertion" || kind_name == "ins") {
            kinds.push_back(atr::EditKind::insertion);
        } else if (kind_name == "deletion" || kind_name == "del") {
            kinds.push_back(atr::EditKind::deletion);
        } else {
            throw std::runtime_error("unknown edit kind: " + kind_name);
        }
    }
    const auto words = atr::query_words(atr::utf8_decode(query).text);
    if (words.empty()) throw std::invalid_argument("empty query");
    std::u32string normalized;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) normalized.push_back(U' ');
        normalized += words[i];
    }
    std::u32string carrier;
    if (!carrier_path.empty()) {
        std::string bytes;
        if (!read_file(carrier_path, bytes)) {
            throw std::runtime_error("cannot read carrier: " + carrier_path);
        }
        carrier = atr::utf8_decode(bytes).text;
    } else {
        carrier = default_carrier(normalized, seed, 60);
    }
    std::vector<atr::ErrorSpec> grid;
    for (double eps : epsilons) {
        grid.push_back(atr::ErrorSpec{eps, kinds, seed});
    }
    std::vector<std::optional<std::size_t>> block_grid;
    if (blocks.empty()) {
        block_grid.push_back(std::nullopt);
    } else {
        for (std::size_t b : blocks) block_grid.emplace_back(b);
    }
    for (const auto& forced : block_grid) {
        atr::RecallOptions options;
        options.blocks = forced;
        options.case_insensitive = !cfg.case_sensitive;
        const auto reports = atr::measure_recall(normalized, carrier, grid,
                                                 cfg.query, trials, table,
                                                 options);
        for (const atr::TrialReport& report : reports) {
            json line = {{"b", report.block_count},
                         {"epsilon", report.epsilon},
                         {"trials", report.trials},
                         {"recall", report.recall},
                         {"predicted_miss", report.predicted_miss},
                         {"observed_miss", report.observed_miss}};
            std::cout << line.dump() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate text retrieval"};
    app.require_subcommand(1);
    CliConfig cfg;

    std::string query;
    std::vector<std::string> paths;
    auto* search = app.add_subcommand("search", "Scan text files for a query");
    add_common_options(*search, cfg);
    search->add_option("query", query, "Search query")->required();
    search->add_option("paths", paths, "Text files to scan")->required();
    search->add_option("--context", cfg.context,
                       "Snippet context characters");
    search->add_option("--output", cfg.output, "human or jsonl")
        ->check(CLI::IsMember({"human", "jsonl"}));

    auto* explain =
        app.add_subcommand("explain", "Show how a query compiles");
    add_common_options(*explain, cfg);
    explain->add_option("query", query, "Query to explain")->required();

    std::size_t text_length = 100000;
    double epsilon = 0.01;
    std::string model_kind = "uniform";
    std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    std::string corpus_path;
    auto* estimate = app.add_subcommand(
        "estimate", "Expected occurrences and miss probabilities");
    add_common_options(*estimate, cfg);
    estimate->add_option("query", query, "Query to analyze")->required();
    estimate->add_option("--length", text_length, "Text length l_T");
    estimate->add_option("--epsilon", epsilon, "Per-character error rate")
        ->check(CLI::Range(0.0, 0.999999));
    estimate->add_option("--model", model_kind, "uniform or empirical")
        ->check(CLI::IsMember({"uniform", "empirical"}));
    estimate->add_option("--alphabet", alphabet, "Model alphabet characters");
    estimate->add_option("--corpus", corpus_path,
                         "Sample text for the empirical model");
    estimate->add_option("--output", cfg.output, "human or jsonl")
        ->check(CLI::IsMember({"human", "jsonl"}));

    std::vector<double> epsilons;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<std::size_t> blocks;
    std::string kinds_csv = "substitution";
    std::string carrier_path;
    auto* bench = app.add_subcommand(
        "bench", "Error-injection recall measurements (JSON lines)");
    add_common_options(*bench, cfg);
    bench->add_option("query", query, "Query to benchmark")->required();
    bench->add_option("--epsilon", epsilons,
                      "Error rates to test (repeatable)");
    bench->add_option("--trials", trials, "Trials per grid point")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "Root random seed");
    bench->add_option("--blocks", blocks,
                      "Force block counts (repeatable; default: from "
                      "percent-scan)");
    bench->add_option("--kinds", kinds_csv,
                      "Edit kinds: comma list of substitution,insertion,"
                      "deletion");
    bench->add_option("--carrier", carrier_path,
                      "Carrier text file containing the query verbatim "
                      "(default: generated)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (search->parsed()) return cmd_search(query, paths, cfg);
        if (explain->parsed()) return cmd_explain(query, cfg);
        if (estimate->parsed()) {
            return cmd_estimate(query, text_length, epsilon, model_kind,
                                alphabet, corpus_path, cfg);
        }
        if (bench->parsed()) {
            return cmd_bench(query, epsilons, trials, seed, blocks, kinds_csv,
                             carrier_path, cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "atr: error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
