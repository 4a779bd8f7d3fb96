#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atr/query.hpp"
#include "atr/unicode.hpp"

namespace atr {

struct Document {
    std::string id;
    std::u32string text;

    static Document from_utf8(std::string id, std::string_view bytes,
                              bool* had_invalid = nullptr) {
        auto decoded = utf8_decode(bytes);
        if (had_invalid) *had_invalid = decoded.had_invalid;
        return Document{std::move(id), std::move(decoded.text)};
    }

    std::size_t length() const { return text.size(); }  // l_T, in characters
};

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive

    friend bool operator==(const Span&, const Span&) = default;
};

/// One occurrence: the ordered character spans of the matched literals.
/// component_index is 1-based for multi-word queries and 0 for the
/// single-word and literal kinds.
struct Match {
    std::string doc_id;
    std::size_t component_index = 0;
    std::vector<Span> spans;
    Span full_span;

    friend bool operator==(const Match&, const Match&) = default;
};

namespace detail {

inline bool literal_at(const std::u32string& text, std::size_t pos,
                       const std::u32string& lit, bool fold) {
    if (pos + lit.size() > text.size()) return false;
    for (std::size_t i = 0; i < lit.size(); ++i) {
        const char32_t a = fold ? fold_char(text[pos + i]) : text[pos + i];
        const char32_t b = fold ? fold_char(lit[i]) : lit[i];
        if (a != b) return false;
    }
    return true;
}

/// Lazily memoized "the tail of the component starting at literal `li`
/// can match the text beginning exactly at `pos`".
class ComponentScanner {
public:
    ComponentScanner(const ComponentPattern& comp, const std::u32string& text,
                     bool fold)
        : comp_(&comp), text_(&text), fold_(fold) {
        memo_.assign(comp.literals.size(),
                     std::vector<signed char>(text.size() + 1, -1));
    }

    bool feasible(std::size_t li, std::size_t pos) {
        if (pos > text_->size()) return false;
        signed char& cell = memo_[li][pos];
        if (cell != -1) return cell == 1;
        bool ok = literal_at(*text_, pos, comp_->literals[li], fold_);
        if (ok && li + 1 < comp_->literals.size()) {
            ok = false;
            const std::size_t base = pos + comp_->literals[li].size();
            const std::size_t max_gap = comp_->gaps[li];
            for (std::size_t g = 0; g <= max_gap && base + g <= text_->size();
                 ++g) {
                if (feasible(li + 1, base + g)) {
                    ok = true;
                    break;
                }
            }
        }
        cell = ok ? 1 : 0;
        return ok;
    }

    bool match_at(std::size_t pos) { return feasible(0, pos); }

    /// Spans of a match known to start at `pos`; every gap takes the
    /// fewest characters that still permit completion (earlier gaps
    /// minimized first).
    std::vector<Span> extract_spans(std::size_t pos) {
        std::vector<Span> spans;
        spans.reserve(comp_->literals.size());
        std::size_t p = pos;
        for (std::size_t li = 0; li < comp_->literals.size(); ++li) {
            const std::size_t end = p + comp_->literals[li].size();
            spans.push_back(Span{p, end});
            if (li + 1 == comp_->literals.size()) break;
            const std::size_t max_gap = comp_->gaps[li];
            bool advanced = false;
            for (std::size_t g = 0; g <= max_gap && end + g <= text_->size();
                 ++g) {
                if (feasible(li + 1, end + g)) {
                    p = end + g;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw std::logic_error("span extraction diverged");
        }
        return spans;
    }

private:
    const ComponentPattern* comp_;
    const std::u32string* text_;
    bool fold_;
    std::vector<std::vector<signed char>> memo_;
};

}  // namespace detail

/// Scans a document: non-overlapping occurrences, found left to right. At
/// each position components are tried in order and the first that matches
/// wins; scanning resumes past the end of the reported occurrence.
inline std::vector<Match> scan(const CompositeQuery& cq, const Document& doc,
                               bool case_insensitive = true) {
    std::vector<Match> matches;
    if (cq.components.empty() || doc.text.empty()) return matches;
    std::vector<detail::ComponentScanner> scanners;
    scanners.reserve(cq.components.size());
    for (const auto& comp : cq.components) {
        scanners.emplace_back(comp, doc.text, case_insensitive);
    }
    const bool numbered = cq.kind == QueryKind::multi_word;
    std::size_t pos = 0;
    const std::size_t n = doc.text.size();
    while (pos < n) {
        bool found = false;
        for (std::size_t s = pos; s < n && !found; ++s) {
            for (std::size_t c = 0; c < scanners.size(); ++c) {
                if (!scanners[c].match_at(s)) continue;
                Match match;
                match.doc_id = doc.id;
                match.component_index = numbered ? c + 1 : 0;
                match.spans = scanners[c].extract_spans(s);
                match.full_span = Span{match.spans.front().begin,
                                       match.spans.back().end};
                pos = match.full_span.end;
                matches.push_back(std::move(match));
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    return matches;
}

/// Existence-only scan, cheaper than collecting matches.
inline bool matches_anywhere(const CompositeQuery& cq,
                             const std::u32string& text,
                             bool case_insensitive = true) {
    std::vector<detail::ComponentScanner> scanners;
    scanners.reserve(cq.components.size());
    for (const auto& comp : cq.components) {
        scanners.emplace_back(comp, text, case_insensitive);
    }
    for (std::size_t s = 0; s < text.size(); ++s) {
        for (auto& scanner : scanners) {
            if (scanner.match_at(s)) return true;
        }
    }
    return false;
}

/// Counts every (start position, gap-length vector) instance of the
/// component in the text: the quantity the occurrence expectation
/// formula describes. Overlapping instances all count.
inline double count_all_instances(const ComponentPattern& comp,
                                  const std::u32string& text,
                                  bool case_insensitive = false) {
    const std::size_t lits = comp.literals.size();
    const std::size_t n = text.size();
    std::vector<std::vector<double>> ways(lits,
                                          std::vector<double>(n + 1, -1.0));
    // ways[li][pos]: completions of the tail starting at literal li, pos
    auto count = [&](auto&& self, std::size_t li, std::size_t pos) -> double {
        double& cell = ways[li][pos];
        if (cell >= 0.0) return cell;
        if (!detail::literal_at(text, pos, comp.literals[li],
                                case_insensitive)) {
            return cell = 0.0;
        }
        if (li + 1 == lits) return cell = 1.0;
        double total = 0.0;
        const std::size_t base = pos + comp.literals[li].size();
        for (std::size_t g = 0; g <= comp.gaps[li] && base + g <= n; ++g) {
            total += self(self, li + 1, base + g);
        }
        return cell = total;
    };
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) total += count(count, 0, s);
    return total;
}

/// Snippet with up to `context` characters of surrounding text and each
/// matched span wrapped in markers. Truncated edges are flagged with
/// an ellipsis.
inline std::string highlight(const Match& match, const Document& doc,
                             std::size_t context,
                             std::string_view open_marker = "**",
                             std::string_view close_marker = "**") {
    const std::size_t n = doc.text.size();
    if (match.full_span.end > n || match.spans.empty()) {
        throw std::logic_error("highlight: match does not fit the document");
    }
    const std::size_t window_begin =
        match.full_span.begin > context ? match.full_span.begin - context : 0;
    const std::size_t window_end = std::min(n, match.full_span.end + context);
    // abutting literal spans (zero gap) read as one region
    std::vector<Span> regions;
    for (const Span& span : match.spans) {
        if (span.end > n || span.begin >= span.end ||
            (!regions.empty() && span.begin < regions.back().end)) {
            throw std::logic_error("highlight: invalid span");
        }
        if (!regions.empty() && span.begin == regions.back().end) {
            regions.back().end = span.end;
        } else {
            regions.push_back(span);
        }
    }
    std::string out;
    if (context > 0 && window_begin > 0) out += "...";
    std::size_t cursor = window_begin;
    for (const Span& span : regions) {
        out += utf8_encode(
            std::u32string_view(doc.text).substr(cursor, span.begin - cursor));
        out += open_marker;
        out += utf8_encode(std::u32string_view(doc.text)
                               .substr(span.begin, span.end - span.begin));
        out += close_marker;
        cursor = span.end;
    }
    out += utf8_encode(
        std::u32string_view(doc.text).substr(cursor, window_end - cursor));
    if (context > 0 && window_end < n) out += "...";
    return out;
}

}  // namespace atr
