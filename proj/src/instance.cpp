#include "tla/instance.hpp"

#include <algorithm>

#include "tla/errors.hpp"

namespace tla {

std::string_view to_string(Model model) {
    switch (model) {
        case Model::SingleItem: return "single-item";
        case Model::Additive: return "additive";
        case Model::UnitDemand: return "unit-demand";
    }
    return "?";
}

std::optional<Model> model_from_string(std::string_view text) {
    if (text == "single-item") return Model::SingleItem;
    if (text == "additive") return Model::Additive;
    if (text == "unit-demand") return Model::UnitDemand;
    return std::nullopt;
}

ItemSet make_item_set(std::vector<int> items, int item_count) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    for (int l : items) {
        if (l < 0 || l >= item_count) throw IndexError("item index out of range");
    }
    return items;
}

bool item_set_contains(const ItemSet& items, int item) {
    return std::binary_search(items.begin(), items.end(), item);
}

bool item_sets_disjoint(const ItemSet& a, const ItemSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        if (*ia < *ib) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return true;
}

bool item_set_subset(const ItemSet& sub, const ItemSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

BidVector::BidVector(std::vector<Rational> per_item) : per_item_(std::move(per_item)) {
    for (const Rational& v : per_item_) {
        if (v.is_negative()) throw DomainError("bid values must be nonnegative");
    }
}

Group::Group(std::string name, std::vector<BidVector> bidders)
    : name_(std::move(name)), bidders_(std::move(bidders)) {
    if (bidders_.empty()) throw EmptyGroupError("group '" + name_ + "' has no bidders");
}

Instance::Instance(Model model, int item_count, std::vector<Group> groups)
    : model_(model), item_count_(item_count), groups_(std::move(groups)) {
    if (item_count_ < 1) throw DomainError("item count must be positive");
    if (model_ == Model::SingleItem && item_count_ != 1) {
        throw DomainError("single-item model requires exactly one item");
    }
    if (groups_.empty()) throw NoGroupsError("instance has no groups");
    for (const Group& g : groups_) {
        for (const BidVector& b : g.bidders()) {
            if (static_cast<int>(b.size()) != item_count_) {
                throw ShapeError("bid vector length does not match item count in group '" +
                                 g.name() + "'");
            }
        }
    }
}

const Group& Instance::group(int j) const {
    if (j < 0 || j >= group_count()) throw IndexError("group index out of range");
    return groups_[j];
}

const BidVector& Instance::bid(int group_idx, int bidder_idx) const {
    const Group& g = group(group_idx);
    if (bidder_idx < 0 || bidder_idx >= g.size()) throw IndexError("bidder index out of range");
    return g.bidders()[bidder_idx];
}

int Instance::total_bidders() const {
    int n = 0;
    for (const Group& g : groups_) n += g.size();
    return n;
}

int Instance::max_group_size() const {
    int best = 0;
    for (const Group& g : groups_) best = std::max(best, g.size());
    return best;
}

Rational Instance::value_of(int group_idx, int bidder_idx, const ItemSet& items) const {
    const BidVector& v = bid(group_idx, bidder_idx);
    for (int l : items) {
        if (l < 0 || l >= item_count_) throw IndexError("item index out of range");
    }
    Rational result;
    if (model_ == Model::UnitDemand) {
        for (int l : items) result = std::max(result, v[l]);
    } else {
        for (int l : items) result += v[l];
    }
    return result;
}

}  // namespace tla
