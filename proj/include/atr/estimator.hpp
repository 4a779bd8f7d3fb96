#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atr/query.hpp"
#include "atr/unicode.hpp"

namespace atr {

/// Alphabet with a per-character probability; probabilities sum to one.
struct CharModel {
    std::vector<char32_t> alphabet;
    std::unordered_map<char32_t, double> probs;

    static CharModel uniform(std::u32string_view chars) {
        if (chars.empty()) {
            throw std::invalid_argument("uniform model needs an alphabet");
        }
        CharModel model;
        const double p = 1.0 / static_cast<double>(chars.size());
        for (char32_t c : chars) {
            if (model.probs.emplace(c, p).second) model.alphabet.push_back(c);
        }
        if (model.alphabet.size() != chars.size()) {
            throw std::invalid_argument("uniform model alphabet has duplicates");
        }
        return model;
    }

    /// Frequencies counted over `text`, restricted to `chars`, with
    /// add-one smoothing so no alphabet member gets probability zero.
    static CharModel from_sample(std::u32string_view chars,
                                 std::u32string_view text) {
        if (chars.empty()) {
            throw std::invalid_argument("empirical model needs an alphabet");
        }
        CharModel model;
        for (char32_t c : chars) {
            if (model.probs.emplace(c, 0.0).second) model.alphabet.push_back(c);
        }
        double total = 0.0;
        for (char32_t c : text) {
            auto it = model.probs.find(fold_char(c));
            if (it != model.probs.end()) {
                it->second += 1.0;
                total += 1.0;
            }
        }
        const double denom = total + static_cast<double>(model.alphabet.size());
        for (auto& [c, p] : model.probs) p = (p + 1.0) / denom;
        return model;
    }

    double probability(char32_t c) const {
        auto it = probs.find(c);
        if (it == probs.end()) {
            throw std::domain_error("character outside the model alphabet");
        }
        return it->second;
    }
};

/// Probability that a random character sequence carries all the
/// component's literals at fixed positions: the product of per-character
/// probabilities. Gaps contribute through the distance product, not here.
inline double pattern_probability(const ComponentPattern& comp,
                                  const CharModel& model) {
    double p = 1.0;
    for (const auto& lit : comp.literals) {
        for (char32_t c : lit) p *= model.probability(c);
    }
    return p;
}

/// Expected number of (position, gap-vector) occurrences in a random text
/// of length l_T: l_T * prod(gap+1) * P. The gap+1 factor counts the
/// admissible gap lengths 0..max.
inline double expected_occurrences(const ComponentPattern& comp,
                                   std::size_t text_length,
                                   const CharModel& model) {
    double gap_product = 1.0;
    for (std::size_t gap : comp.gaps) {
        gap_product *= static_cast<double>(gap + 1);
    }
    return static_cast<double>(text_length) * gap_product *
           pattern_probability(comp, model);
}

/// Expectation for the whole alternation: the sum over components
/// (approximately b times the per-component value when they are alike).
inline double composite_expected(const CompositeQuery& cq,
                                 std::size_t text_length,
                                 const CharModel& model) {
    double total = 0.0;
    for (const auto& comp : cq.components) {
        total += expected_occurrences(comp, text_length, model);
    }
    return total;
}

/// Per-component and composite probabilities of losing one occurrence to
/// independent per-character errors at rate epsilon. A component misses
/// when any of its literal characters is hit; the composite misses only
/// when every component does (independence approximation, an upper bound
/// since components share characters).
struct MissModel {
    double epsilon = 0.0;
    std::vector<double> per_component;
    double composite = 0.0;
};

inline MissModel miss_probability(const CompositeQuery& cq, double epsilon) {
    if (epsilon < 0.0 || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    }
    MissModel model;
    model.epsilon = epsilon;
    model.per_component.reserve(cq.components.size());
    model.composite = cq.components.empty() ? 0.0 : 1.0;
    for (const auto& comp : cq.components) {
        const double survive =
            std::pow(1.0 - epsilon, static_cast<double>(comp.literal_length()));
        const double miss = 1.0 - survive;
        model.per_component.push_back(miss);
        model.composite *= miss;
    }
    return model;
}

}  // namespace atr
