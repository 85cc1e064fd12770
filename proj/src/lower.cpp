#include "tla/lower.hpp"

#include <algorithm>
#include <numeric>

#include "tla/errors.hpp"

namespace tla {

namespace {

void require_bids(std::span<const Rational> bids) {
    if (bids.empty()) throw EmptyGroupError("bid list is empty");
    for (const Rational& b : bids) {
        if (b.is_negative()) throw DomainError("bids must be nonnegative");
    }
}

}  // namespace

std::vector<int> rank_by_bid(std::span<const Rational> bids) {
    std::vector<int> order(bids.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return bids[b] < bids[a]; });
    return order;
}

Rational wtp(std::span<const Rational> bids) {
    require_bids(bids);
    std::vector<int> order = rank_by_bid(bids);
    Rational best;
    for (size_t r = 0; r < order.size(); ++r) {
        Rational candidate = bids[order[r]] * Rational(static_cast<long>(r + 1));
        if (r == 0 || best < candidate) best = candidate;
    }
    return best;
}

int winners_count(std::span<const Rational> bids, const Rational& payment) {
    require_bids(bids);
    if (payment > wtp(bids)) {
        throw InfeasiblePaymentError("payment " + payment.str() + " exceeds willingness to pay");
    }
    std::vector<int> order = rank_by_bid(bids);
    int t = 0;
    for (size_t r = 0; r < order.size(); ++r) {
        if (bids[order[r]] * Rational(static_cast<long>(r + 1)) >= payment) {
            t = static_cast<int>(r + 1);
        }
    }
    return t;  // >= 1: payment <= wtp guarantees some prefix qualifies
}

LowerResult equal_split(std::span<const Rational> bids, const Rational& payment) {
    const int t = winners_count(bids, payment);
    std::vector<int> order = rank_by_bid(bids);
    Rational share = payment / Rational(static_cast<long>(t));
    LowerResult result;
    result.access.assign(bids.size(), false);
    result.shares.assign(bids.size(), Rational());
    for (int r = 0; r < t; ++r) {
        result.access[order[r]] = true;
        result.shares[order[r]] = share;
    }
    return result;
}

}  // namespace tla
