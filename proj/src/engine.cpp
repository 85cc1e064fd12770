#include "tla/engine.hpp"

#include <algorithm>
#include <cassert>

#include "tla/errors.hpp"
#include "tla/lower.hpp"
#include "tla/upper.hpp"

namespace tla {

std::string_view to_string(Aggregation aggregation) {
    switch (aggregation) {
        case Aggregation::Identity: return "identity";
        case Aggregation::Wtp: return "wtp";
        case Aggregation::CoordinateSum: return "sum";
        case Aggregation::CoordinateMax: return "max";
        case Aggregation::PerItemWtp: return "per-item-wtp";
    }
    return "?";
}

std::optional<Aggregation> aggregation_from_string(std::string_view text) {
    if (text == "identity") return Aggregation::Identity;
    if (text == "wtp") return Aggregation::Wtp;
    if (text == "sum") return Aggregation::CoordinateSum;
    if (text == "max") return Aggregation::CoordinateMax;
    if (text == "per-item-wtp") return Aggregation::PerItemWtp;
    return std::nullopt;
}

std::string MechanismId::str() const {
    switch (kind) {
        case Kind::Mechanism1: return "m1";
        case Kind::Mechanism2: return "m2";
        case Kind::VcgEqualSplit:
            return "vcg-equalsplit(" + std::string(to_string(aggregation)) + ")";
    }
    return "?";
}

void BidOverrides::set(int group_idx, int bidder_idx, BidVector bid) {
    for (Entry& e : entries_) {
        if (e.group == group_idx && e.bidder == bidder_idx) {
            e.bid = std::move(bid);
            return;
        }
    }
    entries_.push_back({group_idx, bidder_idx, std::move(bid)});
}

const BidVector* BidOverrides::find(int group_idx, int bidder_idx) const {
    for (const Entry& e : entries_) {
        if (e.group == group_idx && e.bidder == bidder_idx) return &e.bid;
    }
    return nullptr;
}

namespace {

// Submitted bids: true valuations with overrides applied.
std::vector<std::vector<BidVector>> submitted_bids(const Instance& instance,
                                                   const BidOverrides& overrides) {
    std::vector<std::vector<BidVector>> bids;
    bids.reserve(instance.group_count());
    for (int j = 0; j < instance.group_count(); ++j) {
        const Group& g = instance.group(j);
        std::vector<BidVector> group_bids;
        group_bids.reserve(g.size());
        for (int i = 0; i < g.size(); ++i) {
            const BidVector* replacement = overrides.find(j, i);
            if (replacement != nullptr) {
                if (replacement->size() != static_cast<size_t>(instance.item_count())) {
                    throw ShapeError("bid override length does not match item count");
                }
                group_bids.push_back(*replacement);
            } else {
                group_bids.push_back(g.bidders()[i]);
            }
        }
        bids.push_back(std::move(group_bids));
    }
    return bids;
}

std::vector<Rational> column(const std::vector<BidVector>& group_bids, int item) {
    std::vector<Rational> result;
    result.reserve(group_bids.size());
    for (const BidVector& b : group_bids) result.push_back(b[item]);
    return result;
}

struct SingleItemRun {
    int winner = -1;
    Rational payment;
    LowerResult split;
    std::vector<Rational> wtps;
};

// One round of the single-item pipeline: aggregate by willingness to pay,
// Vickrey over group bids, equal split inside the winning group.
SingleItemRun run_single_item(const std::vector<std::vector<Rational>>& bids_per_group) {
    SingleItemRun result;
    result.wtps.reserve(bids_per_group.size());
    for (const std::vector<Rational>& bids : bids_per_group) {
        result.wtps.push_back(wtp(bids));
    }
    UpperResult upper = vickrey(result.wtps);
    for (int j = 0; j < static_cast<int>(result.wtps.size()); ++j) {
        if (!upper.group_items[j].empty()) result.winner = j;
    }
    result.payment = upper.group_payments[result.winner];
    // The winner holds the maximum willingness to pay, so the second-highest
    // bid it is charged is always coverable.
    assert(result.payment <= result.wtps[result.winner]);
    result.split = equal_split(bids_per_group[result.winner], result.payment);
    return result;
}

Outcome run_mechanism1(const Instance& instance, const std::vector<std::vector<BidVector>>& bids,
                       RunTrace* trace) {
    const int k = instance.group_count();
    std::vector<std::vector<Rational>> scalar_bids(k);
    for (int j = 0; j < k; ++j) scalar_bids[j] = column(bids[j], 0);

    SingleItemRun round = run_single_item(scalar_bids);

    std::vector<ItemSet> group_items(k);
    std::vector<std::vector<ItemSet>> member_items(k);
    std::vector<Rational> group_payments(k);
    std::vector<std::vector<Rational>> member_payments(k);
    for (int j = 0; j < k; ++j) {
        member_items[j].resize(instance.group(j).size());
        member_payments[j].resize(instance.group(j).size());
    }
    group_items[round.winner] = {0};
    group_payments[round.winner] = round.payment;
    for (int i = 0; i < instance.group(round.winner).size(); ++i) {
        if (round.split.access[i]) member_items[round.winner][i] = {0};
        member_payments[round.winner][i] = round.split.shares[i];
    }

    if (trace != nullptr) {
        int winners = static_cast<int>(
            std::count(round.split.access.begin(), round.split.access.end(), true));
        trace->per_item.push_back({round.wtps, round.winner, round.payment, winners});
    }
    return Outcome(instance, std::move(group_items), std::move(member_items),
                   std::move(group_payments), std::move(member_payments));
}

Outcome run_mechanism2(const Instance& instance, const std::vector<std::vector<BidVector>>& bids,
                       RunTrace* trace) {
    const int k = instance.group_count();
    const int m = instance.item_count();
    std::vector<ItemSet> group_items(k);
    std::vector<std::vector<ItemSet>> member_items(k);
    std::vector<Rational> group_payments(k);
    std::vector<std::vector<Rational>> member_payments(k);
    for (int j = 0; j < k; ++j) {
        member_items[j].resize(instance.group(j).size());
        member_payments[j].resize(instance.group(j).size());
    }

    // An independent copy of the single-item pipeline per item.
    for (int l = 0; l < m; ++l) {
        std::vector<std::vector<Rational>> item_bids(k);
        for (int j = 0; j < k; ++j) item_bids[j] = column(bids[j], l);
        SingleItemRun round = run_single_item(item_bids);

        group_items[round.winner].push_back(l);
        group_payments[round.winner] += round.payment;
        for (int i = 0; i < instance.group(round.winner).size(); ++i) {
            if (round.split.access[i]) member_items[round.winner][i].push_back(l);
            member_payments[round.winner][i] += round.split.shares[i];
        }
        if (trace != nullptr) {
            int winners = static_cast<int>(
                std::count(round.split.access.begin(), round.split.access.end(), true));
            trace->per_item.push_back({round.wtps, round.winner, round.payment, winners});
        }
    }
    return Outcome(instance, std::move(group_items), std::move(member_items),
                   std::move(group_payments), std::move(member_payments));
}

Outcome run_vcg_equal_split(const Instance& instance,
                            const std::vector<std::vector<BidVector>>& bids,
                            Aggregation aggregation, RunTrace* trace) {
    const int k = instance.group_count();
    const int m = instance.item_count();

    std::vector<BidVector> group_vectors;
    group_vectors.reserve(k);
    for (int j = 0; j < k; ++j) {
        group_vectors.push_back(aggregate(aggregation, bids[j], m));
    }
    UpperResult upper = vcg_unit_demand(group_vectors, m);

    std::vector<ItemSet> group_items = upper.group_items;
    std::vector<std::vector<ItemSet>> member_items(k);
    std::vector<Rational> group_payments = upper.group_payments;
    std::vector<std::vector<Rational>> member_payments(k);
    for (int j = 0; j < k; ++j) {
        member_items[j].resize(instance.group(j).size());
        member_payments[j].resize(instance.group(j).size());
    }

    // The group's charge is attributed evenly across its bundle, then each
    // item's share is equally split among the members it admits.
    for (int j = 0; j < k; ++j) {
        if (group_items[j].empty()) continue;
        Rational per_item_cost =
            group_payments[j] / Rational(static_cast<long>(group_items[j].size()));
        for (int l : group_items[j]) {
            std::vector<Rational> item_bids = column(bids[j], l);
            LowerResult split = equal_split(item_bids, per_item_cost);
            for (int i = 0; i < instance.group(j).size(); ++i) {
                if (split.access[i]) member_items[j][i].push_back(l);
                member_payments[j][i] += split.shares[i];
            }
        }
    }

    if (trace != nullptr) {
        trace->group_bids = group_vectors;
        trace->assignment.assign(m, -1);
        for (int j = 0; j < k; ++j) {
            for (int l : group_items[j]) trace->assignment[l] = j;
        }
    }
    return Outcome(instance, std::move(group_items), std::move(member_items),
                   std::move(group_payments), std::move(member_payments));
}

}  // namespace

BidVector aggregate(Aggregation aggregation, const std::vector<BidVector>& member_bids,
                    int item_count) {
    if (member_bids.empty()) throw EmptyGroupError("cannot aggregate an empty group");
    // Identity is forced for single-bidder groups no matter the rule.
    if (member_bids.size() == 1) return member_bids[0];

    switch (aggregation) {
        case Aggregation::Identity:
            throw ModelMismatchError("identity aggregation requires single-bidder groups");
        case Aggregation::Wtp: {
            if (item_count != 1) {
                throw ModelMismatchError("wtp aggregation requires a single item");
            }
            std::vector<Rational> col = column(member_bids, 0);
            return BidVector({wtp(col)});
        }
        case Aggregation::CoordinateSum: {
            std::vector<Rational> out(item_count);
            for (const BidVector& b : member_bids) {
                for (int l = 0; l < item_count; ++l) out[l] += b[l];
            }
            return BidVector(std::move(out));
        }
        case Aggregation::CoordinateMax: {
            std::vector<Rational> out(item_count);
            for (const BidVector& b : member_bids) {
                for (int l = 0; l < item_count; ++l) out[l] = std::max(out[l], b[l]);
            }
            return BidVector(std::move(out));
        }
        case Aggregation::PerItemWtp: {
            std::vector<Rational> out;
            out.reserve(item_count);
            for (int l = 0; l < item_count; ++l) {
                std::vector<Rational> col = column(member_bids, l);
                out.push_back(wtp(col));
            }
            return BidVector(std::move(out));
        }
    }
    throw DomainError("unknown aggregation rule");
}

Outcome run(const MechanismId& mechanism, const Instance& instance, const BidOverrides& overrides,
            RunTrace* trace) {
    std::vector<std::vector<BidVector>> bids = submitted_bids(instance, overrides);
    switch (mechanism.kind) {
        case MechanismId::Kind::Mechanism1:
            if (instance.model() != Model::SingleItem) {
                throw ModelMismatchError("mechanism m1 requires the single-item model");
            }
            return run_mechanism1(instance, bids, trace);
        case MechanismId::Kind::Mechanism2:
            if (instance.model() != Model::Additive) {
                throw ModelMismatchError("mechanism m2 requires the additive model");
            }
            return run_mechanism2(instance, bids, trace);
        case MechanismId::Kind::VcgEqualSplit:
            if (instance.model() != Model::UnitDemand) {
                throw ModelMismatchError("mechanism vcg-equalsplit requires the unit-demand model");
            }
            return run_vcg_equal_split(instance, bids, mechanism.aggregation, trace);
    }
    throw DomainError("unknown mechanism");
}

}  // namespace tla
