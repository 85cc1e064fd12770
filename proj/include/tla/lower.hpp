#pragma once

#include <span>
#include <vector>

#include "tla/rational.hpp"

namespace tla {

// Access decision and cost shares for one group on one item.
// All bidders with access pay the identical share, and the shares sum
// exactly to the payment charged to the group.
struct LowerResult {
    std::vector<bool> access;      // per bidder, original order
    std::vector<Rational> shares;  // per bidder, original order

    friend bool operator==(const LowerResult& a, const LowerResult& b) = default;
};

// Bidder indices ranked by descending bid; equal bids keep original order,
// so the winners_count cutoff prefers lower-index bidders.
std::vector<int> rank_by_bid(std::span<const Rational> bids);

// Willingness to pay: the largest amount a group can cover with every payer
// charged equally and nobody charged above its bid. max_i { i * b_(i) } over
// the descending order; the identity for a single bidder.
Rational wtp(std::span<const Rational> bids);

// Largest t such that the t highest bidders can split `payment` equally,
// each within its bid. Well defined whenever payment <= wtp(bids).
int winners_count(std::span<const Rational> bids, const Rational& payment);

// Grants access to the winners_count highest bidders and charges each the
// equal share payment / winners_count; everybody else pays nothing.
LowerResult equal_split(std::span<const Rational> bids, const Rational& payment);

}  // namespace tla
