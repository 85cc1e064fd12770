#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tla/engine.hpp"
#include "tla/instance.hpp"
#include "tla/outcome.hpp"
#include "tla/rational.hpp"

namespace tla {

enum class ViolationKind {
    Truthfulness,
    BudgetBalance,
    IndividualRationality,
    EqualTreatment,
    Monotonicity,
};

std::string_view to_string(ViolationKind kind);

// Structured evidence of a failed property. Indices are 0-based; witness
// text uses the 1-based external convention.
struct ViolationReport {
    ViolationKind kind = ViolationKind::Truthfulness;
    int group = -1;
    int bidder = -1;
    std::optional<BidVector> deviation;
    Rational truthful_utility;
    Rational deviant_utility;
    std::string witness;
};

// Canonical order so parallel or reordered evaluation yields identical output.
void sort_reports(std::vector<ViolationReport>& reports);

// Finite certificate set for dominant-strategy checks: per item, zero, every
// bid present on that item, every group payment of the truthful run, small
// perturbations of those, and two implausibly large bids; for multi-item
// models also the all-mass-on-one-item vectors. A clean sweep over the grid
// is evidence of truthfulness, not a proof.
struct DeviationGrid {
    std::vector<std::vector<Rational>> per_item;
    std::vector<BidVector> joint;

    static DeviationGrid standard(const MechanismId& mechanism, const Instance& instance);
};

// Exact n-th harmonic number, sum of 1/i for i = 1..n.
Rational harmonic(int n);

// Social welfare of an outcome under the instance's true valuations.
Rational welfare(const Instance& instance, const Outcome& outcome);

// A bidder's quasi-linear utility under its true valuation.
Rational bidder_utility(const Instance& instance, const Outcome& outcome, int group_idx,
                        int bidder_idx);

struct OptResult {
    Rational welfare;
    std::vector<int> assignment;  // per item: winning group or -1
};

// Maximum social welfare over feasible allocations, with every member of a
// group granted access to everything the group wins. Unit-demand instances
// use exhaustive assignment search within kAssignmentSearchBudget, or an
// exact matching DP when every group has exactly one bidder.
OptResult opt_welfare_detail(const Instance& instance);
Rational opt_welfare(const Instance& instance);

// opt_welfare / welfare of the truthful run; DegenerateRatioError when the
// truthful run has zero welfare.
Rational approximation_ratio(const Instance& instance, const MechanismId& mechanism);

// Runs every single-coordinate and joint grid deviation for every bidder and
// reports each one whose utility strictly beats truthful bidding.
std::vector<ViolationReport> check_truthful(const MechanismId& mechanism, const Instance& instance,
                                            const DeviationGrid& grid);

// Exact budget balance per group and individual rationality per bidder.
std::vector<ViolationReport> check_outcome_properties(const Instance& instance,
                                                      const Outcome& outcome);

// Same-group bidders with identical true vectors must receive identical
// access and payments in the truthful run.
std::vector<ViolationReport> check_equal_treatment(const MechanismId& mechanism,
                                                   const Instance& instance);
std::vector<ViolationReport> check_equal_treatment_outcome(const Instance& instance,
                                                           const Outcome& outcome);

struct CriticalBidCheck {
    std::optional<ViolationReport> violation;  // empty = pass
    Rational bracket_low;
    Rational bracket_high;
    Rational payment;
};

// Tolerance for bracketing the winning threshold: 2^-30.
Rational critical_bid_tolerance();

// Bisects the bidder's scalar bid to bracket its winning threshold and
// asserts the charged payment lies in the bracket; also checks that winning
// is monotone across every probed bid. Single-item model, winning bidders only.
CriticalBidCheck check_critical_bid(const MechanismId& mechanism, const Instance& instance,
                                    int group_idx, int bidder_idx);

using RunFn = std::function<Outcome(const Instance&, const BidOverrides&)>;

// True iff bidding 10^6 times the largest bid in the instance on every item
// grants the bidder a value-maximizing bundle.
bool probe_consumer_sovereignty(const MechanismId& mechanism, const Instance& instance,
                                int group_idx, int bidder_idx);
bool probe_consumer_sovereignty_with(const RunFn& runner, const Instance& instance, int group_idx,
                                     int bidder_idx);

// Worst-case pair for the single-item lower bound: one group of n-1 bidders
// with values 1/i - delta against a singleton valuing the item at 1, and its
// mirror image. Requires 0 < delta < 1/(n-1).
std::pair<Instance, Instance> gen_lb_pair(int n, const Rational& delta);

// n identical single-bidder unit-demand groups over n items, each valuing
// item 1 at 1+eps and every other item at 1.
Instance gen_unit_identical(int n, const Rational& eps);

// Two unit-demand groups over two items with valuations (10+2e, 0), (5-e, e)
// and (10, e); the composition counterexample. Requires 0 < eps < 5.
Instance gen_appendix_a(const Rational& eps);

// Deterministic 64-bit multiplicative congruential stream:
// x_0 = 2*seed + 1, x_{n+1} = 6364136223846793005 * x_n (mod 2^64).
// Documented so generated corpora are reproducible across implementations.
class Mcg {
public:
    explicit Mcg(std::uint64_t seed) : state_(2 * seed + 1) {}
    std::uint64_t next();
    std::uint64_t next_below(std::uint64_t bound);  // next() % bound

private:
    std::uint64_t state_;
};

struct RandomSpec {
    std::uint64_t seed = 0;
    int group_count = 1;
    int max_group_size = 1;
    int item_count = 1;
    Model model = Model::SingleItem;
    long max_value = 10;
};

// Reproducible pseudo-random instance; values are rationals with
// denominators at most 1000 drawn uniformly from [0, max_value].
Instance gen_random(const RandomSpec& spec);

}  // namespace tla
