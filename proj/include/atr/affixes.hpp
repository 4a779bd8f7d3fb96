#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

#include "atr/unicode.hpp"

namespace atr {

inline constexpr std::size_t kMaxAffixLength = 15;
inline constexpr std::size_t kMinSplittableWord = 3;

/// Prefix and suffix lists used to cut words into morphological segments.
/// Entries are stored case-folded; lookups are case-insensitive.
/// Immutable after load, safe to share across threads.
struct AffixTable {
    std::unordered_set<std::u32string> prefixes;
    std::unordered_set<std::u32string> suffixes;

    std::size_t size() const { return prefixes.size() + suffixes.size(); }
};

class AffixParseError : public std::runtime_error {
public:
    AffixParseError(std::size_t line, const std::string& what)
        : std::runtime_error("affix file, line " + std::to_string(line) +
                             ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A word cut both ways: prefix_root keeps the leading part after the
/// longest table suffix is stripped, root_suffix keeps the trailing part
/// after the longest table prefix is stripped. Segments preserve the
/// original characters; together they always cover the whole word.
struct WordSegments {
    std::u32string word;
    std::u32string prefix_root;
    std::u32string root_suffix;
};

/// Parses the affix file format:
///
///   # comment
///   [prefixes]
///   re
///   [suffixes]
///   ized
///
/// Entries are trimmed, case-folded and deduplicated. Throws
/// AffixParseError on malformed headers, entries outside a section,
/// over-long entries, or a file that yields no affixes at all.
inline AffixTable load_affix_table(std::istream& source) {
    AffixTable table;
    std::unordered_set<std::u32string>* section = nullptr;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        std::string token = line.substr(first, last - first + 1);
        if (token[0] == '#') continue;
        if (token[0] == '[') {
            if (token == "[prefixes]") {
                section = &table.prefixes;
            } else if (token == "[suffixes]") {
                section = &table.suffixes;
            } else {
                throw AffixParseError(line_no,
                                      "unknown section header '" + token + "'");
            }
            continue;
        }
        if (section == nullptr) {
            throw AffixParseError(line_no, "entry '" + token +
                                               "' before any section header");
        }
        if (token.find_first_of(" \t") != std::string::npos) {
            throw AffixParseError(line_no, "entry '" + token +
                                               "' contains whitespace");
        }
        auto decoded = utf8_decode(token);
        if (decoded.had_invalid) {
            throw AffixParseError(line_no, "entry is not valid UTF-8");
        }
        if (decoded.text.size() > kMaxAffixLength) {
            throw AffixParseError(line_no, "entry '" + token + "' longer than " +
                                               std::to_string(kMaxAffixLength) +
                                               " characters");
        }
        section->insert(fold_copy(decoded.text));
    }
    if (table.prefixes.empty() && table.suffixes.empty()) {
        throw std::runtime_error("no affixes");
    }
    return table;
}

inline AffixTable load_affix_table(std::string_view text) {
    std::istringstream stream{std::string(text)};
    return load_affix_table(stream);
}

namespace detail {

/// Length of the longest table entry that matches at the given end of the
/// word and leaves a remainder of at least max(3, ceil(len/2)) characters.
/// Returns 0 when nothing acceptable matches.
inline std::size_t longest_strippable(
    const std::u32string& folded_word,
    const std::unordered_set<std::u32string>& entries, bool at_end) {
    const std::size_t len = folded_word.size();
    const std::size_t min_remainder =
        std::max<std::size_t>(kMinSplittableWord, (len + 1) / 2);
    if (len <= min_remainder) return 0;
    const std::size_t max_strip = std::min(kMaxAffixLength, len - min_remainder);
    for (std::size_t strip = max_strip; strip >= 1; --strip) {
        const std::u32string candidate =
            at_end ? folded_word.substr(len - strip) : folded_word.substr(0, strip);
        if (entries.contains(candidate)) return strip;
    }
    return 0;
}

}  // namespace detail

/// Splits a word into its two overlapping segments. The word must have at
/// least 3 characters (shorter words never reach this point). When no
/// affix matches, the corresponding segment is the whole word.
inline WordSegments split_word(std::u32string_view word,
                               const AffixTable& table) {
    if (word.size() < kMinSplittableWord) {
        throw std::invalid_argument("split_word: word shorter than " +
                                    std::to_string(kMinSplittableWord) +
                                    " characters");
    }
    const std::u32string folded = fold_copy(word);
    const std::size_t suffix_strip =
        detail::longest_strippable(folded, table.suffixes, /*at_end=*/true);
    const std::size_t prefix_strip =
        detail::longest_strippable(folded, table.prefixes, /*at_end=*/false);
    WordSegments out;
    out.word.assign(word);
    out.prefix_root = out.word.substr(0, word.size() - suffix_strip);
    out.root_suffix = out.word.substr(prefix_strip);
    return out;
}

}  // namespace atr
