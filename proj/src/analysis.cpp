#include "tla/analysis.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "tla/errors.hpp"
#include "tla/lower.hpp"
#include "tla/upper.hpp"

namespace tla {

namespace {

constexpr long kHugeBid = 1'000'000;

Rational global_max_bid(const Instance& instance) {
    Rational best;
    for (const Group& g : instance.groups()) {
        for (const BidVector& b : g.bidders()) {
            for (const Rational& v : b.values()) best = std::max(best, v);
        }
    }
    return best;
}

ItemSet all_items(const Instance& instance) {
    ItemSet items(instance.item_count());
    for (int l = 0; l < instance.item_count(); ++l) items[l] = l;
    return items;
}

std::string describe_bid_vector(const BidVector& bid) {
    std::ostringstream os;
    os << "(";
    for (size_t l = 0; l < bid.size(); ++l) {
        if (l > 0) os << ", ";
        os << bid[l].str();
    }
    os << ")";
    return os.str();
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Truthfulness: return "truthfulness";
        case ViolationKind::BudgetBalance: return "budget-balance";
        case ViolationKind::IndividualRationality: return "individual-rationality";
        case ViolationKind::EqualTreatment: return "equal-treatment";
        case ViolationKind::Monotonicity: return "monotonicity";
    }
    return "?";
}

void sort_reports(std::vector<ViolationReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const ViolationReport& a, const ViolationReport& b) {
                         auto ta = std::tuple(static_cast<int>(a.kind), a.group, a.bidder);
                         auto tb = std::tuple(static_cast<int>(b.kind), b.group, b.bidder);
                         if (ta != tb) return ta < tb;
                         return a.witness < b.witness;
                     });
}

DeviationGrid DeviationGrid::standard(const MechanismId& mechanism, const Instance& instance) {
    Outcome truthful = run(mechanism, instance);
    const Rational perturbation(1, 1000);
    const Rational huge(kHugeBid);
    const Rational doubled_max = Rational(2) * global_max_bid(instance);

    DeviationGrid grid;
    grid.per_item.resize(instance.item_count());
    for (int l = 0; l < instance.item_count(); ++l) {
        std::vector<Rational> base;
        base.emplace_back(0);
        for (const Group& g : instance.groups()) {
            for (const BidVector& b : g.bidders()) base.push_back(b[l]);
        }
        for (int j = 0; j < instance.group_count(); ++j) {
            base.push_back(truthful.group_payment(j));
        }

        std::vector<Rational>& candidates = grid.per_item[l];
        candidates = base;
        for (const Rational& b : base) {
            candidates.push_back(b + perturbation);
            Rational down = b - perturbation;
            if (!down.is_negative()) candidates.push_back(down);
        }
        candidates.push_back(doubled_max);
        candidates.push_back(huge);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    }

    if (instance.item_count() > 1) {
        for (int l = 0; l < instance.item_count(); ++l) {
            std::vector<Rational> mass(instance.item_count(), Rational(0));
            mass[l] = huge;
            grid.joint.emplace_back(std::move(mass));
        }
    }
    return grid;
}

Rational harmonic(int n) {
    if (n < 1) throw DomainError("harmonic numbers start at n = 1");
    Rational sum;
    for (long i = 1; i <= n; ++i) sum += Rational(1, i);
    return sum;
}

Rational welfare(const Instance& instance, const Outcome& outcome) {
    outcome.require_shape(instance);
    Rational total;
    for (int j = 0; j < instance.group_count(); ++j) {
        for (int i = 0; i < instance.group(j).size(); ++i) {
            total += instance.value_of(j, i, outcome.member_items(j, i));
        }
    }
    return total;
}

Rational bidder_utility(const Instance& instance, const Outcome& outcome, int group_idx,
                        int bidder_idx) {
    return instance.value_of(group_idx, bidder_idx, outcome.member_items(group_idx, bidder_idx)) -
           outcome.member_payment(group_idx, bidder_idx);
}

namespace {

OptResult opt_single_item(const Instance& instance) {
    OptResult result;
    int best = 0;
    Rational best_total;
    for (int j = 0; j < instance.group_count(); ++j) {
        Rational total;
        for (const BidVector& b : instance.group(j).bidders()) total += b[0];
        if (j == 0 || best_total < total) {
            best = j;
            best_total = total;
        }
    }
    result.welfare = best_total;
    result.assignment = {best};
    return result;
}

OptResult opt_additive(const Instance& instance) {
    OptResult result;
    result.assignment.resize(instance.item_count());
    for (int l = 0; l < instance.item_count(); ++l) {
        int best = 0;
        Rational best_total;
        for (int j = 0; j < instance.group_count(); ++j) {
            Rational total;
            for (const BidVector& b : instance.group(j).bidders()) total += b[l];
            if (j == 0 || best_total < total) {
                best = j;
                best_total = total;
            }
        }
        result.assignment[l] = best;
        result.welfare += best_total;
    }
    return result;
}

// Welfare of an item-to-group assignment when every member accesses all of
// its group's items.
Rational member_welfare(const Instance& instance, const std::vector<int>& assignment) {
    const int k = instance.group_count();
    std::vector<ItemSet> sets(k);
    for (size_t l = 0; l < assignment.size(); ++l) {
        if (assignment[l] >= 0) sets[assignment[l]].push_back(static_cast<int>(l));
    }
    Rational total;
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < instance.group(j).size(); ++i) {
            total += instance.value_of(j, i, sets[j]);
        }
    }
    return total;
}

bool next_assignment(std::vector<int>& assignment, int k) {
    for (int l = static_cast<int>(assignment.size()) - 1; l >= 0; --l) {
        if (assignment[l] + 1 < k) {
            ++assignment[l];
            return true;
        }
        assignment[l] = -1;
    }
    return false;
}

OptResult opt_unit_demand_brute(const Instance& instance) {
    const int k = instance.group_count();
    const int m = instance.item_count();
    std::int64_t total = 1;
    for (int l = 0; l < m; ++l) {
        total *= k + 1;
        if (total > kAssignmentSearchBudget) {
            throw InstanceTooLargeError("assignment space exceeds exhaustive-search budget");
        }
    }
    OptResult result;
    std::vector<int> assignment(m, -1);
    result.assignment = assignment;
    result.welfare = member_welfare(instance, assignment);
    while (next_assignment(assignment, k)) {
        Rational w = member_welfare(instance, assignment);
        if (result.welfare < w) {
            result.welfare = w;
            result.assignment = assignment;
        }
    }
    return result;
}

// When every group is a single unit-demand bidder the optimum is a maximum
// weight group-item matching; solved exactly by DP over group subsets, which
// handles instances far beyond the brute-force budget (the identical-groups
// family needs (k+1)^m = 9^8 at n = 8).
OptResult opt_unit_demand_singletons(const Instance& instance) {
    const int k = instance.group_count();
    const int m = instance.item_count();
    if (k > 20 || static_cast<std::int64_t>(m + 1) * (1LL << k) > 8'000'000) {
        throw InstanceTooLargeError("matching table exceeds search budget");
    }
    const std::size_t masks = std::size_t(1) << k;
    std::vector<std::vector<Rational>> dp(m + 1, std::vector<Rational>(masks));
    for (int l = m - 1; l >= 0; --l) {
        for (std::size_t mask = 0; mask < masks; ++mask) {
            Rational best = dp[l + 1][mask];
            for (int j = 0; j < k; ++j) {
                if (mask & (std::size_t(1) << j)) continue;
                Rational cand =
                    instance.bid(j, 0)[l] + dp[l + 1][mask | (std::size_t(1) << j)];
                if (best < cand) best = cand;
            }
            dp[l][mask] = std::move(best);
        }
    }

    OptResult result;
    result.welfare = dp[0][0];
    result.assignment.assign(m, -1);
    std::size_t mask = 0;
    for (int l = 0; l < m; ++l) {
        if (dp[l][mask] == dp[l + 1][mask]) continue;  // leaving l unassigned is optimal
        for (int j = 0; j < k; ++j) {
            if (mask & (std::size_t(1) << j)) continue;
            if (dp[l][mask] == instance.bid(j, 0)[l] + dp[l + 1][mask | (std::size_t(1) << j)]) {
                result.assignment[l] = j;
                mask |= std::size_t(1) << j;
                break;
            }
        }
    }
    return result;
}

}  // namespace

OptResult opt_welfare_detail(const Instance& instance) {
    switch (instance.model()) {
        case Model::SingleItem: return opt_single_item(instance);
        case Model::Additive: return opt_additive(instance);
        case Model::UnitDemand: {
            if (instance.max_group_size() == 1 && instance.group_count() <= 20) {
                return opt_unit_demand_singletons(instance);
            }
            return opt_unit_demand_brute(instance);
        }
    }
    throw DomainError("unknown model");
}

Rational opt_welfare(const Instance& instance) { return opt_welfare_detail(instance).welfare; }

Rational approximation_ratio(const Instance& instance, const MechanismId& mechanism) {
    Outcome outcome = run(mechanism, instance);
    Rational achieved = welfare(instance, outcome);
    if (achieved.is_zero()) {
        throw DegenerateRatioError("truthful run has zero welfare; ratio undefined");
    }
    return opt_welfare(instance) / achieved;
}

std::vector<ViolationReport> check_truthful(const MechanismId& mechanism, const Instance& instance,
                                            const DeviationGrid& grid) {
    Outcome truthful = run(mechanism, instance);
    std::vector<ViolationReport> reports;

    for (int j = 0; j < instance.group_count(); ++j) {
        for (int i = 0; i < instance.group(j).size(); ++i) {
            const Rational truthful_utility = bidder_utility(instance, truthful, j, i);
            const BidVector& true_bid = instance.bid(j, i);

            auto try_deviation = [&](BidVector deviation, const std::string& label) {
                BidOverrides overrides;
                overrides.set(j, i, deviation);
                try {
                    Outcome deviant = run(mechanism, instance, overrides);
                    Rational deviant_utility = bidder_utility(instance, deviant, j, i);
                    if (deviant_utility > truthful_utility) {
                        std::ostringstream witness;
                        witness << "bidder " << (i + 1) << " of group " << (j + 1) << " " << label
                                << " raises utility from " << truthful_utility.str() << " to "
                                << deviant_utility.str();
                        reports.push_back({ViolationKind::Truthfulness, j, i, std::move(deviation),
                                           truthful_utility, deviant_utility, witness.str()});
                    }
                } catch (const InfeasiblePaymentError&) {
                    // The deviation drove a composed mechanism into a payment its
                    // group cannot split; such a run certifies nothing.
                }
            };

            for (int l = 0; l < instance.item_count(); ++l) {
                for (const Rational& candidate : grid.per_item[l]) {
                    if (candidate == true_bid[l]) continue;
                    std::vector<Rational> values = true_bid.values();
                    values[l] = candidate;
                    try_deviation(BidVector(std::move(values)),
                                  "bidding " + candidate.str() + " on item " + std::to_string(l + 1));
                }
            }
            for (const BidVector& joint : grid.joint) {
                if (joint == true_bid) continue;
                try_deviation(joint, "bidding " + describe_bid_vector(joint));
            }
        }
    }
    sort_reports(reports);
    return reports;
}

std::vector<ViolationReport> check_outcome_properties(const Instance& instance,
                                                      const Outcome& outcome) {
    outcome.require_shape(instance);
    std::vector<ViolationReport> reports;
    for (int j = 0; j < instance.group_count(); ++j) {
        Rational member_total;
        for (int i = 0; i < instance.group(j).size(); ++i) {
            member_total += outcome.member_payment(j, i);
        }
        if (member_total != outcome.group_payment(j)) {
            std::ostringstream witness;
            witness << "group " << (j + 1) << " charged " << outcome.group_payment(j).str()
                    << " but members pay " << member_total.str();
            reports.push_back({ViolationKind::BudgetBalance, j, -1, std::nullopt, Rational(),
                               Rational(), witness.str()});
        }
        for (int i = 0; i < instance.group(j).size(); ++i) {
            Rational value = instance.value_of(j, i, outcome.member_items(j, i));
            if (outcome.member_payment(j, i) > value) {
                std::ostringstream witness;
                witness << "bidder " << (i + 1) << " of group " << (j + 1) << " pays "
                        << outcome.member_payment(j, i).str() << " for value " << value.str();
                reports.push_back({ViolationKind::IndividualRationality, j, i, std::nullopt, value,
                                   value - outcome.member_payment(j, i), witness.str()});
            }
        }
    }
    sort_reports(reports);
    return reports;
}

std::vector<ViolationReport> check_equal_treatment(const MechanismId& mechanism,
                                                   const Instance& instance) {
    return check_equal_treatment_outcome(instance, run(mechanism, instance));
}

std::vector<ViolationReport> check_equal_treatment_outcome(const Instance& instance,
                                                           const Outcome& outcome) {
    outcome.require_shape(instance);
    std::vector<ViolationReport> reports;
    for (int j = 0; j < instance.group_count(); ++j) {
        const Group& g = instance.group(j);
        for (int a = 0; a < g.size(); ++a) {
            for (int b = a + 1; b < g.size(); ++b) {
                if (!(g.bidders()[a] == g.bidders()[b])) continue;
                bool same_items = outcome.member_items(j, a) == outcome.member_items(j, b);
                bool same_payment = outcome.member_payment(j, a) == outcome.member_payment(j, b);
                if (same_items && same_payment) continue;
                std::ostringstream witness;
                witness << "bidders " << (a + 1) << " and " << (b + 1) << " of group " << (j + 1)
                        << " bid identically but received "
                        << (same_items ? "different payments" : "different allocations");
                reports.push_back({ViolationKind::EqualTreatment, j, b, std::nullopt,
                                   outcome.member_payment(j, a), outcome.member_payment(j, b),
                                   witness.str()});
            }
        }
    }
    sort_reports(reports);
    return reports;
}

Rational critical_bid_tolerance() { return Rational::pow2_inverse(30); }

CriticalBidCheck check_critical_bid(const MechanismId& mechanism, const Instance& instance,
                                    int group_idx, int bidder_idx) {
    if (instance.model() != Model::SingleItem) {
        throw ModelMismatchError("critical-bid check requires the single-item model");
    }
    Outcome truthful = run(mechanism, instance);
    if (truthful.member_items(group_idx, bidder_idx).empty()) {
        throw DomainError("bidder does not win in the truthful run");
    }
    const Rational payment = truthful.member_payment(group_idx, bidder_idx);
    const Rational tolerance = critical_bid_tolerance();

    std::vector<std::pair<Rational, bool>> probes;
    auto wins = [&](const Rational& bid) {
        BidOverrides overrides;
        overrides.set(group_idx, bidder_idx, BidVector({bid}));
        Outcome outcome = run(mechanism, instance, overrides);
        bool won = !outcome.member_items(group_idx, bidder_idx).empty();
        probes.emplace_back(bid, won);
        return won;
    };

    CriticalBidCheck result;
    result.payment = payment;

    if (wins(Rational(0))) {
        result.bracket_low = Rational(0);
        result.bracket_high = Rational(0);
    } else {
        Rational low(0);
        Rational high = instance.bid(group_idx, bidder_idx)[0];
        wins(high);  // records the probe; the truthful bid wins by precondition
        while (high - low > tolerance) {
            Rational mid = (low + high) / Rational(2);
            if (wins(mid)) {
                high = mid;
            } else {
                low = mid;
            }
        }
        result.bracket_low = low;
        result.bracket_high = high;
        // Pin the threshold from both sides of the charged payment as well.
        wins(payment);
        Rational below = payment - tolerance;
        if (!below.is_negative()) wins(below);
        wins(payment + tolerance);
    }

    auto fail = [&](const std::string& text, ViolationKind kind) {
        ViolationReport report;
        report.kind = kind;
        report.group = group_idx;
        report.bidder = bidder_idx;
        report.truthful_utility = payment;
        report.deviant_utility = payment;
        report.witness = text;
        result.violation = std::move(report);
    };

    std::sort(probes.begin(), probes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t a = 0; a + 1 < probes.size(); ++a) {
        if (probes[a].second && !probes[a + 1].second) {
            fail("winning at bid " + probes[a].first.str() + " but losing at higher bid " +
                     probes[a + 1].first.str(),
                 ViolationKind::Monotonicity);
            return result;
        }
    }
    if (payment < result.bracket_low || result.bracket_high < payment) {
        std::ostringstream witness;
        witness << "charged payment " << payment.str() << " outside winning-threshold bracket ["
                << result.bracket_low.str() << ", " << result.bracket_high.str() << "]";
        fail(witness.str(), ViolationKind::Monotonicity);
    }
    return result;
}

bool probe_consumer_sovereignty(const MechanismId& mechanism, const Instance& instance,
                                int group_idx, int bidder_idx) {
    return probe_consumer_sovereignty_with(
        [&](const Instance& inst, const BidOverrides& overrides) {
            return run(mechanism, inst, overrides);
        },
        instance, group_idx, bidder_idx);
}

bool probe_consumer_sovereignty_with(const RunFn& runner, const Instance& instance, int group_idx,
                                     int bidder_idx) {
    Rational huge = Rational(kHugeBid) * global_max_bid(instance);
    BidOverrides overrides;
    overrides.set(group_idx, bidder_idx,
                  BidVector(std::vector<Rational>(instance.item_count(), huge)));
    try {
        Outcome outcome = runner(instance, overrides);
        Rational achieved =
            instance.value_of(group_idx, bidder_idx, outcome.member_items(group_idx, bidder_idx));
        return achieved == instance.value_of(group_idx, bidder_idx, all_items(instance));
    } catch (const InfeasiblePaymentError&) {
        return false;
    }
}

std::pair<Instance, Instance> gen_lb_pair(int n, const Rational& delta) {
    if (n < 2) throw DomainError("lb-pair requires n >= 2");
    if (!(Rational(0) < delta) || !(delta < Rational(1, n - 1))) {
        throw DomainError("lb-pair requires 0 < delta < 1/(n-1)");
    }
    std::vector<BidVector> many;
    many.reserve(n - 1);
    for (long i = 1; i <= n - 1; ++i) {
        many.emplace_back(std::vector<Rational>{Rational(1, i) - delta});
    }
    std::vector<BidVector> one{BidVector({Rational(1)})};

    Instance first(Model::SingleItem, 1, {Group("G1", many), Group("G2", one)});
    Instance second(Model::SingleItem, 1, {Group("G1", one), Group("G2", many)});
    return {std::move(first), std::move(second)};
}

Instance gen_unit_identical(int n, const Rational& eps) {
    if (n < 2) throw DomainError("unit-identical requires n >= 2");
    if (!(Rational(0) < eps)) throw DomainError("unit-identical requires eps > 0");
    std::vector<Group> groups;
    groups.reserve(n);
    std::vector<Rational> values(n, Rational(1));
    values[0] = Rational(1) + eps;
    for (int j = 0; j < n; ++j) {
        groups.emplace_back("G" + std::to_string(j + 1),
                            std::vector<BidVector>{BidVector(values)});
    }
    return Instance(Model::UnitDemand, n, std::move(groups));
}

Instance gen_appendix_a(const Rational& eps) {
    if (!(Rational(0) < eps) || !(eps < Rational(5))) {
        throw DomainError("appendix-a requires 0 < eps < 5");
    }
    std::vector<BidVector> g1{
        BidVector({Rational(10) + Rational(2) * eps, Rational(0)}),
        BidVector({Rational(5) - eps, eps}),
    };
    std::vector<BidVector> g2{BidVector({Rational(10), eps})};
    return Instance(Model::UnitDemand, 2,
                    {Group("G1", std::move(g1)), Group("G2", std::move(g2))});
}

std::uint64_t Mcg::next() {
    state_ *= 6364136223846793005ULL;
    return state_;
}

std::uint64_t Mcg::next_below(std::uint64_t bound) { return next() % bound; }

Instance gen_random(const RandomSpec& spec) {
    if (spec.group_count < 1 || spec.max_group_size < 1 || spec.item_count < 1 ||
        spec.max_value < 1) {
        throw DomainError("random-instance parameters must be positive");
    }
    if (spec.model == Model::SingleItem && spec.item_count != 1) {
        throw DomainError("single-item model requires exactly one item");
    }
    Mcg rng(spec.seed);
    std::vector<Group> groups;
    groups.reserve(spec.group_count);
    for (int j = 0; j < spec.group_count; ++j) {
        int size = 1 + static_cast<int>(rng.next_below(spec.max_group_size));
        std::vector<BidVector> bidders;
        bidders.reserve(size);
        for (int i = 0; i < size; ++i) {
            std::vector<Rational> values;
            values.reserve(spec.item_count);
            for (int l = 0; l < spec.item_count; ++l) {
                long den = 1 + static_cast<long>(rng.next_below(1000));
                long num = static_cast<long>(
                    rng.next_below(static_cast<std::uint64_t>(spec.max_value) * den + 1));
                values.emplace_back(num, den);
            }
            bidders.emplace_back(std::move(values));
        }
        groups.emplace_back("G" + std::to_string(j + 1), std::move(bidders));
    }
    return Instance(spec.model, spec.item_count, std::move(groups));
}

}  // namespace tla
