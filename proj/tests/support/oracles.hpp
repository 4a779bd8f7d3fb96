#pragma once

// Test-only oracles, kept independent of the library's scan path: the
// brute-force matcher enumerates every start position and gap combination
// directly, with no memoization and no shared helpers.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atr/matcher.hpp"
#include "atr/query.hpp"

namespace oracle {

inline char32_t fold(char32_t c) {
    return (c >= U'A' && c <= U'Z') ? c + (U'a' - U'A') : c;
}

inline bool lit_eq(const std::u32string& text, std::size_t pos,
                   const std::u32string& lit, bool ci) {
    if (pos + lit.size() > text.size()) return false;
    for (std::size_t i = 0; i < lit.size(); ++i) {
        char32_t a = text[pos + i];
        char32_t b = lit[i];
        if (ci) {
            a = fold(a);
            b = fold(b);
        }
        if (a != b) return false;
    }
    return true;
}

/// Tries to complete literals[li..] with the text cursor at `pos`,
/// exploring gap lengths in ascending order (earlier gaps minimized
/// first). Returns the spans on success.
inline bool complete(const atr::ComponentPattern& comp,
                     const std::u32string& text, std::size_t li,
                     std::size_t pos, bool ci, std::vector<atr::Span>& spans) {
    if (!lit_eq(text, pos, comp.literals[li], ci)) return false;
    spans.push_back(atr::Span{pos, pos + comp.literals[li].size()});
    if (li + 1 == comp.literals.size()) return true;
    const std::size_t base = pos + comp.literals[li].size();
    for (std::size_t g = 0; g <= comp.gaps[li] && base + g <= text.size();
         ++g) {
        if (complete(comp, text, li + 1, base + g, ci, spans)) return true;
    }
    spans.pop_back();
    return false;
}

inline std::optional<std::vector<atr::Span>> component_at(
    const atr::ComponentPattern& comp, const std::u32string& text,
    std::size_t pos, bool ci) {
    std::vector<atr::Span> spans;
    if (complete(comp, text, 0, pos, ci, spans)) return spans;
    return std::nullopt;
}

/// Reference implementation of the scan contract: leftmost start wins,
/// components tried in order at each start, non-overlapping results.
inline std::vector<atr::Match> brute_force_scan(const atr::CompositeQuery& cq,
                                                const atr::Document& doc,
                                                bool ci) {
    std::vector<atr::Match> out;
    const bool numbered = cq.kind == atr::QueryKind::multi_word;
    std::size_t pos = 0;
    while (pos < doc.text.size()) {
        bool found = false;
        for (std::size_t s = pos; s < doc.text.size() && !found; ++s) {
            for (std::size_t c = 0; c < cq.components.size(); ++c) {
                auto spans = component_at(cq.components[c], doc.text, s, ci);
                if (!spans) continue;
                atr::Match match;
                match.doc_id = doc.id;
                match.component_index = numbered ? c + 1 : 0;
                match.spans = *spans;
                match.full_span =
                    atr::Span{match.spans.front().begin, match.spans.back().end};
                pos = match.full_span.end;
                out.push_back(std::move(match));
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return out;
}

inline bool brute_force_any(const atr::CompositeQuery& cq,
                            const std::u32string& text, bool ci) {
    for (std::size_t s = 0; s < text.size(); ++s) {
        for (const auto& comp : cq.components) {
            if (component_at(comp, text, s, ci)) return true;
        }
    }
    return false;
}

// -- deterministic generators ----------------------------------------------

inline std::u32string random_word(std::mt19937_64& rng, std::size_t min_len,
                                  std::size_t max_len,
                                  std::u32string_view alphabet) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::u32string word;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) word.push_back(alphabet[pick(rng)]);
    return word;
}

inline std::u32string random_text(std::mt19937_64& rng, std::size_t length,
                                  std::u32string_view alphabet) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::u32string text;
    text.reserve(length);
    for (std::size_t i = 0; i < length; ++i) text.push_back(alphabet[pick(rng)]);
    return text;
}

inline atr::ComponentPattern random_component(std::mt19937_64& rng,
                                              std::u32string_view alphabet,
                                              std::size_t max_literals = 3,
                                              std::size_t max_lit_len = 3,
                                              std::size_t max_gap = 3) {
    std::uniform_int_distribution<std::size_t> lit_count(1, max_literals);
    std::uniform_int_distribution<std::size_t> gap(0, max_gap);
    atr::ComponentPattern comp;
    const std::size_t lits = lit_count(rng);
    for (std::size_t i = 0; i < lits; ++i) {
        if (i > 0) comp.gaps.push_back(gap(rng));
        comp.literals.push_back(random_word(rng, 1, max_lit_len, alphabet));
    }
    return comp;
}

}  // namespace oracle
