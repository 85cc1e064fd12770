#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "tla/analysis.hpp"
#include "tla/instance.hpp"
#include "tla/rational.hpp"

namespace tla::test {

inline Rational R(const std::string& text) {
    auto value = Rational::parse(text);
    if (!value) std::abort();
    return *value;
}

inline std::vector<Rational> rationals(const std::vector<std::string>& texts) {
    std::vector<Rational> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(R(t));
    return out;
}

// Single-item instance from scalar bid strings, one inner vector per group.
inline Instance single_item(const std::vector<std::vector<std::string>>& groups) {
    std::vector<Group> built;
    built.reserve(groups.size());
    for (size_t j = 0; j < groups.size(); ++j) {
        std::vector<BidVector> bidders;
        for (const std::string& bid : groups[j]) bidders.emplace_back(rationals({bid}));
        built.emplace_back("G" + std::to_string(j + 1), std::move(bidders));
    }
    return Instance(Model::SingleItem, 1, std::move(built));
}

// Multi-item instance; groups[j][i] is bidder i's per-item value strings.
inline Instance multi_item(Model model, int items,
                           const std::vector<std::vector<std::vector<std::string>>>& groups) {
    std::vector<Group> built;
    built.reserve(groups.size());
    for (size_t j = 0; j < groups.size(); ++j) {
        std::vector<BidVector> bidders;
        for (const auto& values : groups[j]) bidders.emplace_back(rationals(values));
        built.emplace_back("G" + std::to_string(j + 1), std::move(bidders));
    }
    return Instance(model, items, std::move(built));
}

// Random nonnegative rational with denominator <= 1000, driven by Mcg.
inline Rational random_rational(Mcg& rng, long max_value) {
    long den = 1 + static_cast<long>(rng.next_below(1000));
    long num = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(max_value) * den + 1));
    return Rational(num, den);
}

}  // namespace tla::test
