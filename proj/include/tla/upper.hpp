#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tla/instance.hpp"
#include "tla/rational.hpp"

namespace tla {

// Upper-level allocation and payments over group bids. Groups that win
// nothing pay nothing.
struct UpperResult {
    std::vector<ItemSet> group_items;
    std::vector<Rational> group_payments;

    friend bool operator==(const UpperResult& a, const UpperResult& b) = default;
};

// Second-price single-item auction on scalar group bids. The highest bid wins
// (ties to the lowest index) and pays the highest bid among the other groups,
// or 0 when it is alone.
UpperResult vickrey(std::span<const Rational> group_bids);

// Exhaustive-search cap for the VCG and welfare-oracle assignment spaces.
inline constexpr std::int64_t kAssignmentSearchBudget = 1'000'000;

// VCG where each group's vector bid is read as one unit-demand valuation
// (value of a set = its largest coordinate). Chooses the bid-welfare
// maximizing assignment of items to groups (items may stay unassigned; ties
// to the lexicographically smallest assignment vector) and charges Clarke
// pivot payments. Searches all (k+1)^m assignments; throws
// InstanceTooLargeError beyond kAssignmentSearchBudget.
UpperResult vcg_unit_demand(const std::vector<BidVector>& group_bids, int item_count);

// The chosen assignment itself: per item, the winning group index or -1.
std::vector<int> vcg_unit_demand_assignment(const std::vector<BidVector>& group_bids,
                                            int item_count);

}  // namespace tla
