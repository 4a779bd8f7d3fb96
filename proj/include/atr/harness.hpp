#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atr/affixes.hpp"
#include "atr/compiler.hpp"
#include "atr/estimator.hpp"
#include "atr/matcher.hpp"
#include "atr/query.hpp"
#include "atr/unicode.hpp"

namespace atr {

enum class EditKind { substitution, insertion, deletion };

/// Per-character corruption: with probability `rate` a character suffers
/// one edit drawn uniformly from `kinds`. Replacement and inserted
/// characters come uniformly from the input text's own alphabet.
struct ErrorSpec {
    double rate = 0.0;
    std::vector<EditKind> kinds = {EditKind::substitution};
    std::uint64_t seed = 0;
};

struct Edit {
    std::size_t position = 0;  // index into the original text
    EditKind kind = EditKind::substitution;
    std::optional<char32_t> before;
    std::optional<char32_t> after;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::vector<char32_t> text_alphabet(std::u32string_view text) {
    std::vector<char32_t> alphabet(text.begin(), text.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()),
                   alphabet.end());
    return alphabet;
}

}  // namespace detail

/// Corrupts `text` per the spec and returns the result with the edit log.
/// Deterministic for a fixed seed. Insertions land before the edited
/// character's position.
inline std::pair<std::u32string, std::vector<Edit>> inject_errors(
    std::u32string_view text, const ErrorSpec& spec) {
    if (spec.rate < 0.0 || spec.rate > 1.0) {
        throw std::invalid_argument("error rate must lie in [0, 1]");
    }
    if (spec.kinds.empty()) {
        throw std::invalid_argument("error spec needs at least one edit kind");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::vector<char32_t> alphabet = detail::text_alphabet(text);
    std::uniform_int_distribution<std::size_t> pick_char(
        0, alphabet.empty() ? 0 : alphabet.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_kind(0,
                                                         spec.kinds.size() - 1);
    std::u32string out;
    out.reserve(text.size());
    std::vector<Edit> log;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char32_t original = text[i];
        if (coin(rng) >= spec.rate) {
            out.push_back(original);
            continue;
        }
        const EditKind kind = spec.kinds[pick_kind(rng)];
        switch (kind) {
            case EditKind::substitution: {
                const char32_t repl = alphabet[pick_char(rng)];
                out.push_back(repl);
                log.push_back(Edit{i, kind, original, repl});
                break;
            }
            case EditKind::insertion: {
                const char32_t ins = alphabet[pick_char(rng)];
                out.push_back(ins);
                out.push_back(original);
                log.push_back(Edit{i, kind, std::nullopt, ins});
                break;
            }
            case EditKind::deletion: {
                log.push_back(Edit{i, kind, original, std::nullopt});
                break;
            }
        }
    }
    return {std::move(out), std::move(log)};
}

/// Maps a [begin, end) span of the original text through an edit log into
/// coordinates of the corrupted text.
inline Span map_span_through_edits(Span span, const std::vector<Edit>& log) {
    auto shifted = [&](std::size_t offset) {
        std::ptrdiff_t delta = 0;
        for (const Edit& edit : log) {
            if (edit.position >= offset) break;  // log is position-ordered
            if (edit.kind == EditKind::insertion) ++delta;
            if (edit.kind == EditKind::deletion) --delta;
        }
        return static_cast<std::size_t>(
            std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(offset) + delta));
    };
    Span out{shifted(span.begin), shifted(span.end)};
    if (out.end < out.begin) out.end = out.begin;
    return out;
}

/// Outcome of one (block count, error rate) measurement point.
struct TrialReport {
    std::size_t block_count = 0;
    double epsilon = 0.0;
    std::size_t trials = 0;
    double recall = 0.0;
    double predicted_miss = 0.0;
    double observed_miss = 0.0;
};

struct RecallOptions {
    std::optional<std::size_t> blocks;  // force a block count
    bool case_insensitive = true;
};

/// Plants nothing itself: the query must already occur verbatim (in its
/// single-space normalized form) in the carrier. For each error spec the
/// carrier is corrupted `trials` times and the planted region counts as
/// retrieved when some match overlaps its mapped location. Per-trial seeds
/// derive from the spec seed, so runs are reproducible.
inline std::vector<TrialReport> measure_recall(
    std::u32string_view query, std::u32string_view carrier,
    const std::vector<ErrorSpec>& grid, const QueryConfig& cfg,
    std::size_t trials, const AffixTable& table, RecallOptions options = {}) {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    const auto words = query_words(query);
    if (words.empty()) throw std::invalid_argument("empty query");
    std::u32string normalized;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) normalized.push_back(U' ');
        normalized += words[i];
    }
    const auto planted_at = std::u32string(carrier).find(normalized);
    if (planted_at == std::u32string::npos) {
        throw std::invalid_argument("query does not occur in the carrier text");
    }
    const Span planted{planted_at, planted_at + normalized.size()};
    const CompositeQuery cq = compile_query(query, table, cfg, options.blocks);
    std::vector<TrialReport> reports;
    reports.reserve(grid.size());
    for (const ErrorSpec& spec : grid) {
        std::size_t misses = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            ErrorSpec trial_spec = spec;
            trial_spec.seed = detail::mix_seed(spec.seed, t);
            auto [corrupted, log] = inject_errors(carrier, trial_spec);
            const Span region = map_span_through_edits(planted, log);
            Document doc{"trial", std::move(corrupted)};
            bool hit = false;
            for (const Match& match :
                 scan(cq, doc, options.case_insensitive)) {
                if (match.full_span.begin < region.end &&
                    region.begin < match.full_span.end) {
                    hit = true;
                    break;
                }
            }
            if (!hit) ++misses;
        }
        TrialReport report;
        report.block_count = cq.block_count;
        report.epsilon = spec.rate;
        report.trials = trials;
        report.observed_miss =
            static_cast<double>(misses) / static_cast<double>(trials);
        report.recall = 1.0 - report.observed_miss;
        report.predicted_miss = miss_probability(cq, spec.rate).composite;
        reports.push_back(report);
    }
    return reports;
}

/// Random text of the given length drawn from the character model.
inline std::u32string sample_text(const CharModel& model, std::size_t length,
                                  std::mt19937_64& rng) {
    std::vector<double> weights;
    weights.reserve(model.alphabet.size());
    for (char32_t c : model.alphabet) weights.push_back(model.probs.at(c));
    std::discrete_distribution<std::size_t> pick(weights.begin(),
                                                 weights.end());
    std::u32string text;
    text.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        text.push_back(model.alphabet[pick(rng)]);
    }
    return text;
}

/// Mean over `trials` random texts of the all-instances occurrence count
/// of the component. Validates the closed-form expectation. Deterministic
/// for a fixed seed.
inline double monte_carlo_occurrences(const ComponentPattern& comp,
                                      const CharModel& model,
                                      std::size_t text_length,
                                      std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    for (const auto& lit : comp.literals) {
        for (char32_t c : lit) model.probability(c);  // domain check up front
    }
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::mix_seed(seed, t));
        const std::u32string text = sample_text(model, text_length, rng);
        total += count_all_instances(comp, text, /*case_insensitive=*/false);
    }
    return total / static_cast<double>(trials);
}

}  // namespace atr
