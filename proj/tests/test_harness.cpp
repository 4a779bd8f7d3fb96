#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "atr/compiler.hpp"
#include "atr/harness.hpp"
#include "atr/matcher.hpp"
#include "support/oracles.hpp"

using namespace atr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

AffixTable tiny_table() {
    AffixTable table;
    table.prefixes = {U"ab", U"re"};
    table.suffixes = {U"cd", U"ing"};
    return table;
}

}  // namespace

TEST_CASE("zero rate leaves the text untouched") {
    const auto [text, log] = inject_errors(
        U"approximate retrieval",
        ErrorSpec{0.0, {EditKind::substitution, EditKind::deletion}, 7});
    CHECK(text == U"approximate retrieval");
    CHECK(log.empty());
}

TEST_CASE("full deletion empties the text") {
    const auto [text, log] = inject_errors(
        U"abcdef", ErrorSpec{1.0, {EditKind::deletion}, 11});
    CHECK(text.empty());
    CHECK(log.size() == 6);
}

TEST_CASE("corruption is deterministic for a fixed seed") {
    const ErrorSpec spec{
        0.05,
        {EditKind::substitution, EditKind::insertion, EditKind::deletion},
        99};
    const std::u32string carrier =
        U"the quick brown fox jumps over the lazy dog";
    const auto first = inject_errors(carrier, spec);
    const auto second = inject_errors(carrier, spec);
    CHECK(first.first == second.first);
    CHECK(first.second.size() == second.second.size());
    ErrorSpec other = spec;
    other.seed = 100;
    CHECK(inject_errors(carrier, other).first != first.first);
}

TEST_CASE("edit log positions index the original text") {
    const ErrorSpec spec{
        0.3,
        {EditKind::substitution, EditKind::insertion, EditKind::deletion},
        5};
    const std::u32string carrier = U"abcdefghijklmnopqrstuvwxyz";
    const auto [text, log] = inject_errors(carrier, spec);
    std::size_t last = 0;
    for (const Edit& edit : log) {
        CHECK(edit.position < carrier.size());
        CHECK(edit.position >= last);
        last = edit.position;
        if (edit.kind != EditKind::insertion) {
            REQUIRE(edit.before.has_value());
            CHECK(*edit.before == carrier[edit.position]);
        }
    }
}

TEST_CASE("span mapping tracks insertions and deletions") {
    std::vector<Edit> log;
    log.push_back(Edit{2, EditKind::insertion, std::nullopt, U'x'});
    log.push_back(Edit{5, EditKind::deletion, U'q', std::nullopt});
    // offsets < 2 unchanged; 2 < off <= 5 shift +1; off > 5 shift back
    CHECK(map_span_through_edits(Span{0, 2}, log) == Span{0, 2});
    CHECK(map_span_through_edits(Span{3, 5}, log) == Span{4, 6});
    CHECK(map_span_through_edits(Span{6, 9}, log) == Span{6, 9});
}

TEST_CASE("recall is perfect at zero error rate") {
    const AffixTable table = tiny_table();
    const QueryConfig cfg;
    const std::u32string carrier =
        U"noise words here abcmno redoing xyzzy more noise";
    const auto reports =
        measure_recall(U"abcmno redoing xyzzy", carrier,
                       {ErrorSpec{0.0, {EditKind::substitution}, 3}}, cfg, 20,
                       table);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].recall == 1.0);
    CHECK(reports[0].observed_miss == 0.0);
    CHECK(reports[0].predicted_miss == 0.0);
    CHECK(reports[0].recall == 1.0 - reports[0].observed_miss);
}

TEST_CASE("a query absent from the carrier is rejected") {
    const AffixTable table = tiny_table();
    CHECK_THROWS_AS(
        measure_recall(U"absent words", U"some carrier text", {}, QueryConfig{},
                       5, table),
        std::invalid_argument);
}

TEST_CASE("reports are reproducible and respect the block override") {
    const AffixTable table = tiny_table();
    const QueryConfig cfg;
    const std::u32string carrier =
        U"filler alpha abcmno redoing xyzzyq beta filler tail words";
    const std::vector<ErrorSpec> grid = {
        ErrorSpec{0.05, {EditKind::substitution}, 17}};
    RecallOptions forced;
    forced.blocks = 1;
    const auto first = measure_recall(U"abcmno redoing xyzzyq", carrier, grid,
                                      cfg, 50, table, forced);
    const auto second = measure_recall(U"abcmno redoing xyzzyq", carrier, grid,
                                       cfg, 50, table, forced);
    REQUIRE(first.size() == 1);
    CHECK(first[0].block_count == 1);
    CHECK(first[0].observed_miss == second[0].observed_miss);
    const auto defaulted = measure_recall(U"abcmno redoing xyzzyq", carrier,
                                          grid, cfg, 10, table);
    CHECK(defaulted[0].block_count == 3);
}

TEST_CASE("one fully scrambled word still recalls at b = 3") {
    const AffixTable table = tiny_table();
    const QueryConfig cfg;
    const std::u32string query = U"abcmno redoing xyzzyq";
    const std::u32string carrier =
        U"filler words around abcmno redoing xyzzyq and behind";
    const CompositeQuery cq = compile_query(query, table, cfg);
    REQUIRE(cq.block_count == 3);
    const std::size_t planted = carrier.find(query);
    REQUIRE(planted != std::u32string::npos);
    const std::vector<std::pair<std::size_t, std::size_t>> word_spans = {
        {0, 6}, {7, 14}, {15, 21}};  // offsets of the three words in the query
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> which(0, 2);
    std::uniform_int_distribution<int> letter('a', 'z');
    for (int trial = 0; trial < 60; ++trial) {
        std::u32string corrupted = carrier;
        const auto [begin, end] = word_spans[which(rng)];
        for (std::size_t i = begin; i < end; ++i) {
            char32_t replacement;
            do {
                replacement = static_cast<char32_t>(letter(rng));
            } while (replacement == carrier[planted + i]);
            corrupted[planted + i] = replacement;
        }
        Document doc{"trial", corrupted};
        bool hit = false;
        for (const Match& match : scan(cq, doc)) {
            if (match.full_span.begin < planted + query.size() &&
                planted < match.full_span.end) {
                hit = true;
                break;
            }
        }
        REQUIRE(hit);
    }
}

TEST_CASE("monte carlo mean approaches the closed-form expectation") {
    SECTION("single literal, exact expectation 50") {
        ComponentPattern comp;
        comp.literals.push_back(U"a");
        const CharModel two = CharModel::uniform(U"ab");
        const double mean = monte_carlo_occurrences(comp, two, 100, 1000, 21);
        CHECK_THAT(mean, WithinAbs(50.0, 2.0));
    }

    SECTION("gap pattern against the frozen value") {
        ComponentPattern comp;
        comp.literals = {U"ab", U"ba"};
        comp.gaps = {2};
        const CharModel two = CharModel::uniform(U"ab");
        // expectation 10^4 * 3 * 1/16 = 1875
        const double mean =
            monte_carlo_occurrences(comp, two, 10000, 100, 22);
        CHECK_THAT(mean, WithinRel(1875.0, 0.1));
    }

    SECTION("characters outside the alphabet are a domain error") {
        ComponentPattern comp;
        comp.literals.push_back(U"az");
        const CharModel two = CharModel::uniform(U"ab");
        CHECK_THROWS_AS(monte_carlo_occurrences(comp, two, 100, 10, 1),
                        std::domain_error);
    }

    SECTION("same seed, same mean") {
        ComponentPattern comp;
        comp.literals = {U"ab"};
        const CharModel two = CharModel::uniform(U"ab");
        CHECK(monte_carlo_occurrences(comp, two, 500, 20, 9) ==
              monte_carlo_occurrences(comp, two, 500, 20, 9));
    }
}

TEST_CASE("single-word tolerance: every small edit is still matched") {
    // reduced sweep; the acceptance suite runs the full 3..8 range
    const std::u32string alphabet = U"abcd";
    std::vector<std::u32string> words;
    for (char32_t a : alphabet)
        for (char32_t b : alphabet)
            for (char32_t c : alphabet) {
                words.push_back(std::u32string{a, b, c});
                for (char32_t d : alphabet) {
                    words.push_back(std::u32string{a, b, c, d});
                }
            }
    for (const auto& word : words) {
        const CompositeQuery cq = build_single_word(word);
        const std::size_t len = word.size();
        for (std::size_t i = 0; i < len; ++i) {
            for (char32_t sub : alphabet) {  // substitution at i
                std::u32string damaged = word;
                damaged[i] = sub;
                REQUIRE(matches_anywhere(cq, damaged));
            }
            std::u32string dropped = word;  // deletion at i
            dropped.erase(i, 1);
            REQUIRE(matches_anywhere(cq, dropped));
        }
        for (std::size_t p = 0; p <= len; ++p) {  // insertions at point p
            for (char32_t x : alphabet) {
                std::u32string one = word;
                one.insert(p, 1, x);
                REQUIRE(matches_anywhere(cq, one));
                for (char32_t y : alphabet) {
                    std::u32string two = word;
                    two.insert(p, {x, y});
                    REQUIRE(matches_anywhere(cq, two));
                }
            }
        }
    }
}
