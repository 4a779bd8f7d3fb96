#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atr/affixes.hpp"
#include "atr/query.hpp"
#include "atr/unicode.hpp"

namespace atr {

/// Splits a query on whitespace, dropping empty tokens.
inline std::vector<std::u32string> query_words(std::u32string_view query) {
    std::vector<std::u32string> words;
    std::size_t i = 0;
    while (i < query.size()) {
        while (i < query.size() && is_space(query[i])) ++i;
        std::size_t start = i;
        while (i < query.size() && !is_space(query[i])) ++i;
        if (i > start) words.emplace_back(query.substr(start, i - start));
    }
    return words;
}

/// Builds the relabeled sequence R: every word of length >= 3 contributes
/// its prefix_root then root_suffix segment, positioned in the layout of
/// the words joined by single spaces. Shorter words are skipped but keep
/// their layout slot.
inline SegmentSequence build_segment_sequence(
    const std::vector<std::u32string>& words, const AffixTable& table) {
    if (words.empty()) throw std::invalid_argument("empty word list");
    SegmentSequence seq;
    seq.word_count = words.size();
    std::size_t offset = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
        if (w > 0) {
            seq.query_layout.push_back(U' ');
            ++offset;
        }
        const auto& word = words[w];
        if (word.size() >= kMinSplittableWord) {
            const WordSegments cut = split_word(word, table);
            Segment prefix_root;
            prefix_root.text = cut.prefix_root;
            prefix_root.start = offset;
            prefix_root.end = offset + cut.prefix_root.size();
            prefix_root.word_index = w;
            prefix_root.word_length = word.size();
            Segment root_suffix;
            root_suffix.text = cut.root_suffix;
            root_suffix.start = offset + word.size() - cut.root_suffix.size();
            root_suffix.end = offset + word.size();
            root_suffix.word_index = w;
            root_suffix.word_length = word.size();
            seq.segments.push_back(std::move(prefix_root));
            seq.segments.push_back(std::move(root_suffix));
        }
        seq.query_layout.append(word);
        offset += word.size();
    }
    if (seq.segments.empty()) {
        throw std::invalid_argument("query too short for composite mode");
    }
    return seq;
}

/// Number of interlaced blocks: min(floor(m/2), 1 + floor(100/percent_scan)),
/// never below 1.
inline std::size_t block_count(const QueryConfig& cfg, std::size_t m) {
    if (!cfg.valid()) throw std::invalid_argument("invalid query config");
    if (m < 2) throw std::invalid_argument("block_count requires m >= 2");
    const std::size_t by_scan = 1 + 100 / static_cast<std::size_t>(cfg.percent_scan);
    return std::max<std::size_t>(1, std::min(m / 2, by_scan));
}

/// Maximum characters allowed between the end of segment `i` and the start
/// of segment `i_next` in a match (0-based indices into seq.segments).
/// Gaps that land before a short word use the tight rule: min_gap_factor
/// times the minimum layout distance. Everything else takes the larger of
/// gap_multiplier * index-step and that tight value.
inline std::size_t gap_distance(const SegmentSequence& seq, std::size_t i,
                                std::size_t i_next, const QueryConfig& cfg) {
    if (i >= i_next || i_next >= seq.segments.size()) {
        throw std::out_of_range("gap_distance: bad segment indices");
    }
    const Segment& from = seq.segments[i];
    const Segment& to = seq.segments[i_next];
    const std::size_t min_d = to.start > from.end ? to.start - from.end : 0;
    const std::size_t tight =
        static_cast<std::size_t>(cfg.min_gap_factor) * min_d;
    if (to.word_length <= static_cast<std::size_t>(cfg.short_word_limit)) {
        return tight;
    }
    const std::size_t stride =
        static_cast<std::size_t>(cfg.gap_multiplier) * (i_next - i);
    return std::max(stride, tight);
}

/// Component k (0-based) takes segments k, k+b, k+2b, ... with the gap
/// bound between each consecutive pair. Consecutive literals from the same
/// word (possible only at stride 1, where a word's two segments overlap in
/// the layout) are fused into one literal covering their union, the whole
/// word, since the segments jointly cover it.
inline std::vector<ComponentPattern> build_components(
    const SegmentSequence& seq, std::size_t b, const QueryConfig& cfg) {
    const std::size_t m = seq.segment_count();
    if (b < 1 || b > m / 2) {
        throw std::invalid_argument("build_components: b out of range");
    }
    std::vector<ComponentPattern> components;
    components.reserve(b);
    for (std::size_t k = 0; k < b; ++k) {
        ComponentPattern comp;
        std::size_t prev = k;
        std::size_t prev_start = seq.segments[k].start;
        std::size_t prev_end = seq.segments[k].end;
        comp.literals.push_back(seq.segments[k].text);
        for (std::size_t i = k + b; i < m; i += b) {
            const Segment& cur = seq.segments[i];
            if (cur.word_index == seq.segments[prev].word_index &&
                cur.start <= prev_end) {
                // same word, overlapping: widen the previous literal
                const std::size_t new_end = std::max(prev_end, cur.end);
                comp.literals.back() = seq.query_layout.substr(
                    prev_start, new_end - prev_start);
                prev_end = new_end;
                prev = i;
                continue;
            }
            comp.gaps.push_back(gap_distance(seq, prev, i, cfg));
            comp.literals.push_back(cur.text);
            prev = i;
            prev_start = cur.start;
            prev_end = cur.end;
        }
        components.push_back(std::move(comp));
    }
    return components;
}

/// Single-word pattern: one branch per window of 0, 1 or 2 contiguous
/// characters, replaced by up to two arbitrary characters. Width-0 windows
/// absorb pure insertions, width-1 substitutions and deletions, width-2
/// damage spanning two neighbours. Width-2 windows are emitted only for
/// words of length >= 5 so every branch keeps at least 3 literal
/// characters. Branches with an empty side collapse to plain substrings;
/// the exact word comes first so intact occurrences match in full.
inline CompositeQuery build_single_word(std::u32string_view word) {
    if (word.empty()) throw std::invalid_argument("empty query");
    CompositeQuery cq;
    cq.block_count = 1;
    if (word.size() < kMinSplittableWord) {
        cq.kind = QueryKind::literal;
        ComponentPattern lit;
        lit.literals.emplace_back(word);
        cq.components.push_back(std::move(lit));
        return cq;
    }
    cq.kind = QueryKind::single_word;
    const std::size_t len = word.size();
    auto add_branch = [&](std::size_t prefix_len, std::size_t suffix_start) {
        ComponentPattern branch;
        const std::u32string prefix{word.substr(0, prefix_len)};
        const std::u32string suffix{word.substr(suffix_start)};
        if (prefix.empty() && suffix.empty()) return;
        if (prefix.empty()) {
            branch.literals.push_back(suffix);
        } else if (suffix.empty()) {
            branch.literals.push_back(prefix);
        } else {
            branch.literals.push_back(prefix);
            branch.gaps.push_back(2);
            branch.literals.push_back(suffix);
        }
        cq.components.push_back(std::move(branch));
    };
    ComponentPattern exact;
    exact.literals.emplace_back(word);
    cq.components.push_back(std::move(exact));
    for (std::size_t split = 1; split < len; ++split) {  // width 0: insertions
        add_branch(split, split);
    }
    for (std::size_t i = 0; i < len; ++i) {  // width 1: one damaged char
        add_branch(i, i + 1);
    }
    if (len >= kMinSplittableWord + 2) {  // width 2: two damaged neighbours
        for (std::size_t i = 0; i + 1 < len; ++i) {
            add_branch(i, i + 2);
        }
    }
    return cq;
}

namespace detail {

inline CompositeQuery compile_words(const std::vector<std::u32string>& words,
                                    const AffixTable& table,
                                    const QueryConfig& cfg,
                                    std::optional<std::size_t> blocks) {
    const SegmentSequence seq = build_segment_sequence(words, table);
    const std::size_t b =
        blocks ? *blocks : block_count(cfg, seq.segment_count());
    CompositeQuery cq;
    cq.kind = QueryKind::multi_word;
    cq.block_count = b;
    cq.components = build_components(seq, b, cfg);
    return cq;
}

}  // namespace detail

/// Compiles a query: single words go through the bounded-error
/// alternation, multi-word queries through segment interlacing. The block
/// count can be forced with `blocks` (otherwise it follows percent_scan).
inline CompositeQuery compile_query(std::u32string_view query,
                                    const AffixTable& table,
                                    const QueryConfig& cfg = {},
                                    std::optional<std::size_t> blocks = {}) {
    if (!cfg.valid()) throw std::invalid_argument("invalid query config");
    const auto words = query_words(query);
    if (words.empty()) throw std::invalid_argument("empty query");
    if (words.size() == 1) return build_single_word(words.front());
    return detail::compile_words(words, table, cfg, blocks);
}

inline CompositeQuery compile_query(std::string_view query_utf8,
                                    const AffixTable& table,
                                    const QueryConfig& cfg = {},
                                    std::optional<std::size_t> blocks = {}) {
    return compile_query(utf8_decode(query_utf8).text, table, cfg, blocks);
}

namespace detail {

inline void append_escaped(std::string& out, std::u32string_view literal) {
    static constexpr std::string_view kMeta = "\\^$.|?*+()[]{}";
    for (char32_t cp : literal) {
        if (cp < 128 && kMeta.find(static_cast<char>(cp)) != std::string_view::npos) {
            out.push_back('\\');
        }
        utf8_append(out, cp);
    }
}

}  // namespace detail

/// Renders one component as literal/gap text: gaps become ".{0,n}".
inline std::string render_component(const ComponentPattern& comp) {
    std::string out;
    for (std::size_t i = 0; i < comp.literals.size(); ++i) {
        if (i > 0) {
            out += ".{0,";
            out += std::to_string(comp.gaps[i - 1]);
            out += "}";
        }
        detail::append_escaped(out, comp.literals[i]);
    }
    return out;
}

/// Full textual pattern: components joined into a non-capturing
/// alternation. A lone component renders bare.
inline std::string render_pattern(const CompositeQuery& cq) {
    if (cq.components.size() == 1) return render_component(cq.components[0]);
    std::string out = "(?:";
    for (std::size_t i = 0; i < cq.components.size(); ++i) {
        if (i > 0) out.push_back('|');
        out += render_component(cq.components[i]);
    }
    out.push_back(')');
    return out;
}

}  // namespace atr
