#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tla/instance.hpp"
#include "tla/outcome.hpp"
#include "tla/rational.hpp"

namespace tla {

// Family of aggregation rules mapping member bids to one group bid. Every
// member of the family is the identity for a single-bidder group. All of them
// bound each coordinate by the sum of the members' bids on that item.
enum class Aggregation {
    Identity,       // single-bidder groups only
    Wtp,            // willingness to pay; single-item instances only
    CoordinateSum,  // per item, sum of member bids
    CoordinateMax,  // per item, max of member bids
    PerItemWtp,     // per item, willingness to pay of the item's bid column
};

std::string_view to_string(Aggregation aggregation);
std::optional<Aggregation> aggregation_from_string(std::string_view text);

// The mechanism catalog. Mechanism1 runs on single-item instances,
// Mechanism2 on additive instances, VcgEqualSplit on unit-demand instances.
struct MechanismId {
    enum class Kind { Mechanism1, Mechanism2, VcgEqualSplit };

    Kind kind = Kind::Mechanism1;
    Aggregation aggregation = Aggregation::CoordinateSum;  // VcgEqualSplit only

    static MechanismId m1() { return {Kind::Mechanism1, Aggregation::Wtp}; }
    static MechanismId m2() { return {Kind::Mechanism2, Aggregation::PerItemWtp}; }
    static MechanismId vcg_equal_split(Aggregation a) { return {Kind::VcgEqualSplit, a}; }

    std::string str() const;

    friend bool operator==(const MechanismId& a, const MechanismId& b) = default;
};

// Sparse per-bidder replacement of submitted bids. The stored valuations in
// the Instance stay untouched, so one instance serves truthful runs and
// deviation searches alike.
class BidOverrides {
public:
    void set(int group_idx, int bidder_idx, BidVector bid);
    const BidVector* find(int group_idx, int bidder_idx) const;
    bool empty() const { return entries_.empty(); }

private:
    struct Entry {
        int group;
        int bidder;
        BidVector bid;
    };
    std::vector<Entry> entries_;
};

// Intermediate values of a run, for report traces.
struct SingleItemTrace {
    std::vector<Rational> wtps;  // group bids after aggregation
    int winner = -1;
    Rational payment;
    int winners = 0;  // size of the equally paying subset
};

struct RunTrace {
    std::vector<SingleItemTrace> per_item;   // Mechanism1: one entry; Mechanism2: m entries
    std::vector<BidVector> group_bids;       // VcgEqualSplit: aggregated vectors
    std::vector<int> assignment;             // VcgEqualSplit: per item, group or -1
};

// The group bid produced by an aggregation rule from submitted member bids.
BidVector aggregate(Aggregation aggregation, const std::vector<BidVector>& member_bids,
                    int item_count);

// Runs a complete two-level mechanism. Pure and deterministic in
// (mechanism, instance, overrides); the returned Outcome satisfies
// feasibility and exact budget balance by construction.
Outcome run(const MechanismId& mechanism, const Instance& instance,
            const BidOverrides& overrides = {}, RunTrace* trace = nullptr);

}  // namespace tla
