#include "tla/outcome.hpp"

#include "tla/errors.hpp"

namespace tla {

Outcome::Outcome(const Instance& instance, std::vector<ItemSet> group_items,
                 std::vector<std::vector<ItemSet>> member_items,
                 std::vector<Rational> group_payments,
                 std::vector<std::vector<Rational>> member_payments)
    : Outcome(std::move(group_items), std::move(member_items), std::move(group_payments),
              std::move(member_payments)) {
    require_shape(instance);

    const int k = group_count();
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            if (!item_sets_disjoint(group_items_[a], group_items_[b])) {
                throw DomainError("infeasible allocation: item assigned to more than one group");
            }
        }
    }
    for (int j = 0; j < k; ++j) {
        if (group_payments_[j].is_negative()) throw DomainError("negative group payment");
        Rational member_total;
        for (int i = 0; i < group_size(j); ++i) {
            if (!item_set_subset(member_items_[j][i], group_items_[j])) {
                throw DomainError("member granted access to an item its group did not win");
            }
            if (member_payments_[j][i].is_negative()) throw DomainError("negative member payment");
            member_total += member_payments_[j][i];
        }
        if (member_total != group_payments_[j]) {
            throw DomainError("budget balance violated: member payments do not cover the group's charge");
        }
    }
}

Outcome Outcome::unchecked(std::vector<ItemSet> group_items,
                           std::vector<std::vector<ItemSet>> member_items,
                           std::vector<Rational> group_payments,
                           std::vector<std::vector<Rational>> member_payments) {
    return Outcome(std::move(group_items), std::move(member_items), std::move(group_payments),
                   std::move(member_payments));
}

Outcome Outcome::empty(const Instance& instance) {
    const int k = instance.group_count();
    std::vector<ItemSet> group_items(k);
    std::vector<std::vector<ItemSet>> member_items(k);
    std::vector<Rational> group_payments(k);
    std::vector<std::vector<Rational>> member_payments(k);
    for (int j = 0; j < k; ++j) {
        member_items[j].resize(instance.group(j).size());
        member_payments[j].resize(instance.group(j).size());
    }
    return Outcome(std::move(group_items), std::move(member_items), std::move(group_payments),
                   std::move(member_payments));
}

void Outcome::require_shape(const Instance& instance) const {
    if (group_count() != instance.group_count() ||
        static_cast<int>(member_items_.size()) != instance.group_count() ||
        static_cast<int>(group_payments_.size()) != instance.group_count() ||
        static_cast<int>(member_payments_.size()) != instance.group_count()) {
        throw ShapeError("outcome group dimensions do not match instance");
    }
    for (int j = 0; j < group_count(); ++j) {
        const int nj = instance.group(j).size();
        if (static_cast<int>(member_items_[j].size()) != nj ||
            static_cast<int>(member_payments_[j].size()) != nj) {
            throw ShapeError("outcome member dimensions do not match instance");
        }
        for (int l : group_items_[j]) {
            if (l < 0 || l >= instance.item_count()) throw ShapeError("item index out of range");
        }
        for (const ItemSet& s : member_items_[j]) {
            for (int l : s) {
                if (l < 0 || l >= instance.item_count()) throw ShapeError("item index out of range");
            }
        }
    }
}

}  // namespace tla
