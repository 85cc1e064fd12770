#pragma once

#include <vector>

#include "tla/instance.hpp"
#include "tla/rational.hpp"

namespace tla {

// Full result of a two-level run: the upper allocation and payments per group
// plus each member's access set and payment. The checked constructor rejects
// any candidate violating feasibility, containment, budget balance, or
// payment nonnegativity; `unchecked` exists so checkers and replay tooling
// can hold candidate outcomes that the mechanism itself would never emit.
class Outcome {
public:
    Outcome(const Instance& instance, std::vector<ItemSet> group_items,
            std::vector<std::vector<ItemSet>> member_items, std::vector<Rational> group_payments,
            std::vector<std::vector<Rational>> member_payments);

    static Outcome unchecked(std::vector<ItemSet> group_items,
                             std::vector<std::vector<ItemSet>> member_items,
                             std::vector<Rational> group_payments,
                             std::vector<std::vector<Rational>> member_payments);

    static Outcome empty(const Instance& instance);

    const std::vector<ItemSet>& group_items() const { return group_items_; }
    const ItemSet& group_items(int j) const { return group_items_.at(j); }
    const ItemSet& member_items(int j, int i) const { return member_items_.at(j).at(i); }
    const Rational& group_payment(int j) const { return group_payments_.at(j); }
    const Rational& member_payment(int j, int i) const { return member_payments_.at(j).at(i); }

    int group_count() const { return static_cast<int>(group_items_.size()); }
    int group_size(int j) const { return static_cast<int>(member_items_.at(j).size()); }

    // Shape must match the instance; throws ShapeError otherwise.
    void require_shape(const Instance& instance) const;

    friend bool operator==(const Outcome& a, const Outcome& b) = default;

private:
    Outcome(std::vector<ItemSet> group_items, std::vector<std::vector<ItemSet>> member_items,
            std::vector<Rational> group_payments, std::vector<std::vector<Rational>> member_payments)
        : group_items_(std::move(group_items)),
          member_items_(std::move(member_items)),
          group_payments_(std::move(group_payments)),
          member_payments_(std::move(member_payments)) {}

    std::vector<ItemSet> group_items_;
    std::vector<std::vector<ItemSet>> member_items_;
    std::vector<Rational> group_payments_;
    std::vector<std::vector<Rational>> member_payments_;
};

}  // namespace tla
