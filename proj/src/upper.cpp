#include "tla/upper.hpp"

#include <algorithm>

#include "tla/errors.hpp"

namespace tla {

namespace {

void check_search_budget(int k, int m) {
    std::int64_t total = 1;
    for (int l = 0; l < m; ++l) {
        total *= k + 1;
        if (total > kAssignmentSearchBudget) {
            throw InstanceTooLargeError("assignment space exceeds exhaustive-search budget");
        }
    }
}

// Bid-welfare of an assignment (per item: -1 unassigned, else group index),
// optionally ignoring one group entirely.
Rational assignment_welfare(const std::vector<BidVector>& group_bids,
                            const std::vector<int>& assignment, int skip_group) {
    const int k = static_cast<int>(group_bids.size());
    std::vector<const Rational*> best(k, nullptr);
    for (size_t l = 0; l < assignment.size(); ++l) {
        int j = assignment[l];
        if (j < 0 || j == skip_group) continue;
        const Rational& v = group_bids[j][l];
        if (best[j] == nullptr || *best[j] < v) best[j] = &v;
    }
    Rational total;
    for (int j = 0; j < k; ++j) {
        if (best[j] != nullptr) total += *best[j];
    }
    return total;
}

// Odometer over assignment vectors with the last item fastest, i.e.
// lexicographic ascending order; digit -1 means unassigned. Groups equal to
// skip_group are excluded from the digit range. Returns false when exhausted.
bool next_assignment(std::vector<int>& assignment, int k, int skip_group) {
    for (int l = static_cast<int>(assignment.size()) - 1; l >= 0; --l) {
        int digit = assignment[l];
        do {
            ++digit;
        } while (digit == skip_group);
        if (digit < k) {
            assignment[l] = digit;
            return true;
        }
        assignment[l] = -1;
    }
    return false;
}

// Maximum bid-welfare over all assignments avoiding skip_group (-2 = none).
Rational best_welfare_without(const std::vector<BidVector>& group_bids, int item_count,
                              int skip_group, std::vector<int>* best_assignment) {
    const int k = static_cast<int>(group_bids.size());
    std::vector<int> assignment(item_count, -1);
    Rational best = assignment_welfare(group_bids, assignment, skip_group);
    if (best_assignment != nullptr) *best_assignment = assignment;
    while (next_assignment(assignment, k, skip_group)) {
        Rational w = assignment_welfare(group_bids, assignment, skip_group);
        if (best < w) {
            best = w;
            if (best_assignment != nullptr) *best_assignment = assignment;
        }
    }
    return best;
}

}  // namespace

UpperResult vickrey(std::span<const Rational> group_bids) {
    if (group_bids.empty()) throw NoGroupsError("no group bids");
    const int k = static_cast<int>(group_bids.size());
    int winner = 0;
    for (int j = 1; j < k; ++j) {
        if (group_bids[winner] < group_bids[j]) winner = j;
    }
    Rational payment;
    for (int j = 0; j < k; ++j) {
        if (j != winner && payment < group_bids[j]) payment = group_bids[j];
    }
    UpperResult result;
    result.group_items.resize(k);
    result.group_payments.assign(k, Rational());
    result.group_items[winner] = {0};
    result.group_payments[winner] = payment;
    return result;
}

std::vector<int> vcg_unit_demand_assignment(const std::vector<BidVector>& group_bids,
                                            int item_count) {
    if (group_bids.empty()) throw NoGroupsError("no group bids");
    const int k = static_cast<int>(group_bids.size());
    for (const BidVector& b : group_bids) {
        if (static_cast<int>(b.size()) != item_count) {
            throw ShapeError("group bid length does not match item count");
        }
    }
    check_search_budget(k, item_count);
    std::vector<int> best;
    best_welfare_without(group_bids, item_count, /*skip_group=*/-2, &best);
    return best;
}

UpperResult vcg_unit_demand(const std::vector<BidVector>& group_bids, int item_count) {
    std::vector<int> chosen = vcg_unit_demand_assignment(group_bids, item_count);
    const int k = static_cast<int>(group_bids.size());

    UpperResult result;
    result.group_items.resize(k);
    result.group_payments.assign(k, Rational());
    for (int l = 0; l < item_count; ++l) {
        if (chosen[l] >= 0) result.group_items[chosen[l]].push_back(l);
    }
    for (int j = 0; j < k; ++j) {
        if (result.group_items[j].empty()) continue;  // absent groups impose no externality
        Rational others_alone = best_welfare_without(group_bids, item_count, j, nullptr);
        Rational others_here = assignment_welfare(group_bids, chosen, j);
        result.group_payments[j] = others_alone - others_here;
    }
    return result;
}

}  // namespace tla
