#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace atr {

/// Tuning knobs for composite compilation. percent_scan is the share of
/// the query a single component carries; the gap factors control how far
/// apart matched segments may drift in the document.
struct QueryConfig {
    int percent_scan = 50;       // in [1, 100]
    int gap_multiplier = 20;     // per segment-index step
    int min_gap_factor = 3;      // times the minimum layout distance
    int short_word_limit = 4;    // words this short get the tight gap rule

    bool valid() const {
        return percent_scan >= 1 && percent_scan <= 100 && gap_multiplier >= 1 &&
               min_gap_factor >= 1 && short_word_limit >= 1;
    }
};

/// One segment r_i of the relabeled sequence, with its position in the
/// normalized query layout (words joined by single spaces).
struct Segment {
    std::u32string text;
    std::size_t start = 0;        // character offset into query_layout
    std::size_t end = 0;          // one past the last character
    std::size_t word_index = 0;   // index into the full word list
    std::size_t word_length = 0;  // length of the owning word
};

/// The relabeled sequence R = q1^p q1^s ... qn^p qn^s. Words shorter than
/// 3 characters contribute no segments but still occupy layout space, so
/// minimum gap distances account for them.
struct SegmentSequence {
    std::vector<Segment> segments;
    std::size_t word_count = 0;  // n: number of words in the query
    std::u32string query_layout;

    std::size_t segment_count() const { return segments.size(); }  // m
};

/// A literal-gap-literal chain: literals[0] Gap(gaps[0]) literals[1] ...
/// Always starts and ends with a literal; gaps.size() == literals.size()-1.
struct ComponentPattern {
    std::vector<std::u32string> literals;
    std::vector<std::size_t> gaps;  // maximum characters between literals

    std::size_t literal_length() const {
        std::size_t total = 0;
        for (const auto& lit : literals) total += lit.size();
        return total;
    }
};

enum class QueryKind { multi_word, single_word, literal };

/// An ordered alternation of component patterns; the first component that
/// matches at a position wins.
struct CompositeQuery {
    std::vector<ComponentPattern> components;
    std::size_t block_count = 0;  // b
    QueryKind kind = QueryKind::literal;
};

}  // namespace atr
