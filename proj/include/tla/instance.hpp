#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tla/rational.hpp"

namespace tla {

// Valuation classes. SingleItem is the additive model restricted to m = 1.
enum class Model { SingleItem, Additive, UnitDemand };

std::string_view to_string(Model model);
std::optional<Model> model_from_string(std::string_view text);

// Set of item indices, 0-based internally, kept sorted and duplicate-free.
// External formats (files, reports, CLI) are 1-based.
using ItemSet = std::vector<int>;

ItemSet make_item_set(std::vector<int> items, int item_count);
bool item_set_contains(const ItemSet& items, int item);
bool item_sets_disjoint(const ItemSet& a, const ItemSet& b);
bool item_set_subset(const ItemSet& sub, const ItemSet& super);

// Per-item bid (or valuation) vector of one bidder; every entry nonnegative.
class BidVector {
public:
    explicit BidVector(std::vector<Rational> per_item);

    size_t size() const { return per_item_.size(); }
    const Rational& operator[](size_t l) const { return per_item_[l]; }
    const std::vector<Rational>& values() const { return per_item_; }

    friend bool operator==(const BidVector& a, const BidVector& b) = default;

private:
    std::vector<Rational> per_item_;
};

class Group {
public:
    Group(std::string name, std::vector<BidVector> bidders);

    const std::string& name() const { return name_; }
    const std::vector<BidVector>& bidders() const { return bidders_; }
    int size() const { return static_cast<int>(bidders_.size()); }

    friend bool operator==(const Group& a, const Group& b) = default;

private:
    std::string name_;
    std::vector<BidVector> bidders_;
};

// Immutable after construction. Stored vectors are the bidders' true
// valuations; submitted bids that differ are supplied per-run as overrides.
class Instance {
public:
    Instance(Model model, int item_count, std::vector<Group> groups);

    Model model() const { return model_; }
    int item_count() const { return item_count_; }
    const std::vector<Group>& groups() const { return groups_; }
    int group_count() const { return static_cast<int>(groups_.size()); }
    const Group& group(int j) const;
    const BidVector& bid(int group_idx, int bidder_idx) const;

    int total_bidders() const;
    int max_group_size() const;

    // Value of a set of items to one bidder: sum over the set for additive
    // models, max over the set for unit demand, 0 for the empty set.
    Rational value_of(int group_idx, int bidder_idx, const ItemSet& items) const;

    friend bool operator==(const Instance& a, const Instance& b) = default;

private:
    Model model_;
    int item_count_;
    std::vector<Group> groups_;
};

}  // namespace tla
