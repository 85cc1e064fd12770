// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: tla_acceptance [path-to-tla-cli]
// The CLI path is needed only for the exit-code matrix (criterion 9).

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tla/analysis.hpp"
#include "tla/engine.hpp"
#include "tla/errors.hpp"
#include "tla/io.hpp"
#include "tla/lower.hpp"

using namespace tla;

namespace {

namespace fs = std::filesystem;

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

Rational rat(const std::string& text) { return *Rational::parse(text); }

std::vector<Rational> random_bid_list(Mcg& rng, int max_len, long max_value) {
    int len = 1 + static_cast<int>(rng.next_below(max_len));
    std::vector<Rational> bids;
    for (int i = 0; i < len; ++i) {
        long den = 1 + static_cast<long>(rng.next_below(1000));
        long num = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(max_value) * den + 1));
        bids.emplace_back(num, den);
    }
    return bids;
}

// Independent unit-demand welfare enumerator (recursive; no code shared with
// the library's oracle).
Rational enumerate_opt(const Instance& inst) {
    const int k = inst.group_count();
    const int m = inst.item_count();
    Rational best;
    std::vector<int> assignment(m, -1);
    std::function<void(int)> walk = [&](int item) {
        if (item == m) {
            std::vector<ItemSet> sets(k);
            for (int l = 0; l < m; ++l) {
                if (assignment[l] >= 0) sets[assignment[l]].push_back(l);
            }
            Rational total;
            for (int j = 0; j < k; ++j) {
                for (int i = 0; i < inst.group(j).size(); ++i) {
                    total += inst.value_of(j, i, sets[j]);
                }
            }
            if (best < total) best = total;
            return;
        }
        for (int j = -1; j < k; ++j) {
            assignment[item] = j;
            walk(item + 1);
        }
        assignment[item] = -1;
    };
    walk(0);
    return best;
}

Instance worked_instance() {
    return Instance(Model::SingleItem, 1,
                    {Group("G1", {BidVector({rat("4")}), BidVector({rat("3")}),
                                  BidVector({rat("2")})}),
                     Group("G2", {BidVector({rat("5")})})});
}

bool lower_bound_tightness(std::string& detail) {
    Rational delta(1, 1000000);
    Rational expected_ratio = harmonic(9) - Rational(9) * delta;
    auto [first, second] = gen_lb_pair(10, delta);
    for (const Instance& inst : {first, second}) {
        Outcome out = run(MechanismId::m1(), inst);
        if (welfare(inst, out) != Rational(1)) {
            detail = "welfare is not exactly 1";
            return false;
        }
        if (approximation_ratio(inst, MechanismId::m1()) != expected_ratio) {
            detail = "ratio differs from H_9 - 9*10^-6";
            return false;
        }
    }
    detail = "ratio = " + expected_ratio.str() + " on both instances";
    return true;
}

bool harmonic_upper_bound(std::string& detail) {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.group_count = 1 + static_cast<int>(seed % 4);
        spec.max_group_size = 6;
        spec.item_count = 1;
        spec.model = Model::SingleItem;
        spec.max_value = 10;
        Instance inst = gen_random(spec);
        try {
            if (approximation_ratio(inst, MechanismId::m1()) > harmonic(inst.max_group_size())) {
                detail = "harmonic bound violated at seed " + std::to_string(seed);
                return false;
            }
            ++checked;
        } catch (const DegenerateRatioError&) {
            if (!opt_welfare(inst).is_zero()) {
                detail = "zero mechanism welfare on a positive-value instance, seed " +
                         std::to_string(seed);
                return false;
            }
        }
    }
    detail = std::to_string(checked) + "/1000 instances within H_l exactly";
    return true;
}

bool harmonic_lemma(std::string& detail) {
    Mcg rng(101);
    for (int iteration = 0; iteration < 10000; ++iteration) {
        std::vector<Rational> bids = random_bid_list(rng, 10, 100);
        Rational total;
        for (const Rational& b : bids) total += b;
        if (wtp(bids) * harmonic(static_cast<int>(bids.size())) < total) {
            detail = "lemma violated at iteration " + std::to_string(iteration);
            return false;
        }
    }
    detail = "wtp * H_n >= sum of bids on 10000 random lists";
    return true;
}

bool truthfulness_sweep(std::string& detail) {
    for (int mechanism_case = 0; mechanism_case < 2; ++mechanism_case) {
        MechanismId mechanism = mechanism_case == 0 ? MechanismId::m1() : MechanismId::m2();
        for (std::uint64_t seed = 1; seed <= 500; ++seed) {
            RandomSpec spec;
            spec.seed = 40000 + seed;
            spec.group_count = 1 + static_cast<int>(seed % 3);
            spec.max_group_size = mechanism_case == 0 ? 4 : 3;
            spec.item_count = mechanism_case == 0 ? 1 : 1 + static_cast<int>(seed % 3);
            spec.model = mechanism_case == 0 ? Model::SingleItem : Model::Additive;
            spec.max_value = 10;
            Instance inst = gen_random(spec);

            DeviationGrid grid = DeviationGrid::standard(mechanism, inst);
            if (!check_truthful(mechanism, inst, grid).empty()) {
                detail = mechanism.str() + " deviation found at seed " + std::to_string(seed);
                return false;
            }
            Outcome truthful = run(mechanism, inst);
            if (!check_outcome_properties(inst, truthful).empty()) {
                detail = mechanism.str() + " budget/IR violation at seed " + std::to_string(seed);
                return false;
            }
            if (!check_equal_treatment(mechanism, inst).empty()) {
                detail = mechanism.str() + " equal-treatment violation at seed " +
                         std::to_string(seed);
                return false;
            }
        }
    }
    detail = "no violations over 500 instances per mechanism";
    return true;
}

bool critical_bids(std::string& detail) {
    const Rational tolerance = critical_bid_tolerance();
    int checked = 0;
    std::uint64_t seed = 0;
    while (checked < 100) {
        ++seed;
        RandomSpec spec;
        spec.seed = 70000 + seed;
        spec.group_count = 1 + static_cast<int>(seed % 3);
        spec.max_group_size = 4;
        spec.item_count = 1;
        spec.model = Model::SingleItem;
        spec.max_value = 10;
        Instance inst = gen_random(spec);
        Outcome truthful = run(MechanismId::m1(), inst);
        for (int j = 0; j < inst.group_count() && checked < 100; ++j) {
            for (int i = 0; i < inst.group(j).size() && checked < 100; ++i) {
                if (truthful.member_items(j, i).empty()) continue;
                CriticalBidCheck check = check_critical_bid(MechanismId::m1(), inst, j, i);
                bool bracketed = !check.violation.has_value() &&
                                 check.bracket_high - check.bracket_low <= tolerance &&
                                 check.bracket_low <= check.payment &&
                                 check.payment <= check.bracket_high;
                if (!bracketed) {
                    detail = "bracket failed at seed " + std::to_string(seed);
                    return false;
                }
                ++checked;
            }
        }
    }

    // Worked instance: the threshold is exactly the charged 5/3 — winning at
    // the payment and losing any tested amount below it.
    Instance worked = worked_instance();
    for (int bidder : {0, 2}) {
        CriticalBidCheck check = check_critical_bid(MechanismId::m1(), worked, 0, bidder);
        if (check.violation || check.payment != rat("5/3")) {
            detail = "worked payment is not 5/3";
            return false;
        }
        auto wins_at = [&](const Rational& bid) {
            BidOverrides overrides;
            overrides.set(0, bidder, BidVector({bid}));
            Outcome out = run(MechanismId::m1(), worked, overrides);
            return !out.member_items(0, bidder).empty();
        };
        if (!wins_at(rat("5/3")) || wins_at(rat("5/3") - tolerance)) {
            detail = "threshold differs from 5/3 for bidder " + std::to_string(bidder + 1);
            return false;
        }
    }
    detail = "100 random winners bracketed within 2^-30; worked threshold = 5/3 = payment";
    return true;
}

bool non_composition(std::string& detail) {
    Instance inst = gen_appendix_a(rat("1/10"));
    for (Aggregation aggregation :
         {Aggregation::CoordinateSum, Aggregation::CoordinateMax, Aggregation::PerItemWtp}) {
        MechanismId mechanism = MechanismId::vcg_equal_split(aggregation);
        DeviationGrid grid = DeviationGrid::standard(mechanism, inst);
        std::vector<ViolationReport> reports = check_truthful(mechanism, inst, grid);
        bool found = false;
        for (const ViolationReport& r : reports) {
            if (r.deviant_utility - r.truthful_utility >= rat("1/10")) found = true;
        }
        if (!found) {
            detail = std::string("no profitable deviation of gain >= 1/10 under ") +
                     std::string(to_string(aggregation));
            return false;
        }
    }
    detail = "profitable deviation with gain >= 1/10 under sum, max, per-item-wtp";
    return true;
}

bool unit_demand_gap(std::string& detail) {
    Instance inst = gen_unit_identical(8, rat("1/100"));
    if (opt_welfare(inst) != rat("801/100")) {
        detail = "optimal welfare is not 801/100";
        return false;
    }
    std::vector<ItemSet> group_items(inst.group_count());
    std::vector<std::vector<ItemSet>> member_items(inst.group_count());
    std::vector<Rational> group_payments(inst.group_count());
    std::vector<std::vector<Rational>> member_payments(inst.group_count());
    ItemSet everything;
    for (int l = 0; l < inst.item_count(); ++l) everything.push_back(l);
    for (int j = 0; j < inst.group_count(); ++j) {
        member_items[j].resize(1);
        member_payments[j].resize(1);
    }
    group_items[0] = everything;
    member_items[0][0] = everything;
    Outcome all_to_one(inst, group_items, member_items, group_payments, member_payments);

    Rational achieved = welfare(inst, all_to_one);
    if (achieved != rat("101/100")) {
        detail = "all-items-to-one-group welfare is not 101/100";
        return false;
    }
    Rational ratio = opt_welfare(inst) / achieved;
    if (ratio != rat("801/101") || !(ratio > rat("79/10"))) {
        detail = "ratio is not 801/101 > 7.9";
        return false;
    }
    detail = "opt 801/100 vs 101/100; ratio 801/101 > 7.9";
    return true;
}

bool oracle_duplication(std::string& detail) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        RandomSpec spec;
        spec.seed = 90000 + seed;
        spec.group_count = 1 + static_cast<int>(seed % 3);
        spec.max_group_size = seed % 4 == 0 ? 1 : 3;  // exercise the matching path too
        spec.item_count = 1 + static_cast<int>(seed % 4);
        spec.model = Model::UnitDemand;
        spec.max_value = 10;
        Instance inst = gen_random(spec);
        if (opt_welfare(inst) != enumerate_opt(inst)) {
            detail = "oracle mismatch at seed " + std::to_string(seed);
            return false;
        }
    }
    detail = "library oracle equals independent enumerator on 200 instances";
    return true;
}

int run_cli(const std::string& cli, const std::string& args) {
    std::string command = cli + " " + args + " >/dev/null 2>&1";
    int status = std::system(command.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

bool cli_contract(const std::string& cli, std::string& detail) {
    if (cli.empty()) {
        detail = "CLI path not supplied";
        return false;
    }

    // Round trips, in process, over every generated family.
    std::vector<Instance> corpus;
    auto [lb1, lb2] = gen_lb_pair(10, rat("1/1000000"));
    corpus.push_back(lb1);
    corpus.push_back(lb2);
    corpus.push_back(gen_unit_identical(8, rat("1/100")));
    corpus.push_back(gen_appendix_a(rat("1/10")));
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.group_count = 1 + static_cast<int>(seed % 3);
        spec.max_group_size = 3;
        spec.model = seed % 3 == 0   ? Model::SingleItem
                     : seed % 3 == 1 ? Model::Additive
                                     : Model::UnitDemand;
        spec.item_count = spec.model == Model::SingleItem ? 1 : 2;
        spec.max_value = 10;
        corpus.push_back(gen_random(spec));
    }
    for (const Instance& inst : corpus) {
        if (!(parse_instance(serialize_instance(inst)) == inst)) {
            detail = "round trip changed an instance";
            return false;
        }
    }

    fs::path dir = fs::temp_directory_path() / ("tla-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto path = [&](const std::string& name) { return (dir / name).string(); };
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(path(name), std::ios::binary);
        out << text;
    };

    write("worked.json", serialize_instance(worked_instance()));
    write("appendix-a.json", serialize_instance(gen_appendix_a(rat("1/10"))));
    write("broken.json", "{\"version\": 1, \"model\": \"single-item\"");
    Outcome unbalanced = Outcome::unchecked(
        {{0}, {}}, {{{0}, {0}, {0}}, {{}}}, {rat("5"), rat("0")},
        {{rat("4/3"), rat("4/3"), rat("4/3")}, {rat("0")}});
    write("unbalanced.json", outcome_to_json(unbalanced).dump(2));

    struct MatrixCase {
        std::string args;
        int expected;
    };
    const std::vector<MatrixCase> matrix = {
        {"run --mechanism m1 --instance " + path("worked.json"), 0},
        {"run --mechanism m1 --instance " + path("worked.json") + " --format json", 0},
        {"oracle --instance " + path("worked.json"), 0},
        {"check truthful --mechanism m1 --instance " + path("worked.json"), 0},
        {"check truthful --mechanism vcg-equalsplit --aggregation sum --instance " +
             path("appendix-a.json"),
         1},
        {"check outcome --mechanism m1 --instance " + path("worked.json") + " --replay " +
             path("unbalanced.json"),
         1},
        {"run --mechanism m1 --instance " + path("broken.json"), 2},
        {"run --mechanism m1 --instance " + path("missing.json"), 2},
        {"gen lb-pair --n 3 --delta 1/2 --out " + path("lb"), 2},
        {"run --mechanism m2 --instance " + path("worked.json"), 3},
        {"check truthful --mechanism vcg-equalsplit --instance " + path("worked.json"), 3},
    };
    for (const MatrixCase& entry : matrix) {
        int got = run_cli(cli, entry.args);
        if (got != entry.expected) {
            detail = "expected exit " + std::to_string(entry.expected) + " but got " +
                     std::to_string(got) + " for: " + entry.args;
            fs::remove_all(dir);
            return false;
        }
    }

    // Generation is deterministic byte for byte.
    if (run_cli(cli, "gen random --seed 1 --k 2 --group-size 3 --items 1 --max-value 10 --out " +
                         path("r1.json")) != 0 ||
        run_cli(cli, "gen random --seed 1 --k 2 --group-size 3 --items 1 --max-value 10 --out " +
                         path("r2.json")) != 0) {
        detail = "gen random failed";
        fs::remove_all(dir);
        return false;
    }
    std::ifstream f1(path("r1.json"), std::ios::binary);
    std::ifstream f2(path("r2.json"), std::ios::binary);
    std::stringstream s1;
    std::stringstream s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    bool identical = s1.str() == s2.str() && !s1.str().empty();
    fs::remove_all(dir);
    if (!identical) {
        detail = "gen random is not byte-identical across runs";
        return false;
    }
    detail = "round trips exact; exit-code matrix and generator determinism hold";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    const std::vector<Criterion> criteria = {
        {"lower-bound tightness (instances 1 and 2)", 1.0, lower_bound_tightness},
        {"harmonic upper bound on 1000 random instances", 10.0, harmonic_upper_bound},
        {"harmonic lemma on 10000 random bid lists", 5.0, harmonic_lemma},
        {"truthfulness, budget, IR, equal treatment sweep", 60.0, truthfulness_sweep},
        {"critical-bid equality", 60.0, critical_bids},
        {"composition counterexample under every aggregation", 1.0, non_composition},
        {"unit-demand welfare gap", 60.0, unit_demand_gap},
        {"welfare oracle duplication", 60.0, oracle_duplication},
        {"CLI contract", 120.0, [&cli](std::string& d) { return cli_contract(cli, d); }},
    };

    int passed = 0;
    for (size_t index = 0; index < criteria.size(); ++index) {
        const Criterion& criterion = criteria[index];
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && seconds > criterion.budget_seconds) {
            ok = false;
            detail = "runtime " + std::to_string(seconds) + "s exceeds " +
                     std::to_string(criterion.budget_seconds) + "s budget";
        }
        std::printf("[%zu/%zu] %s  %s (%.2fs) -- %s\n", index + 1, criteria.size(),
                    ok ? "PASS" : "FAIL", criterion.name.c_str(), seconds, detail.c_str());
        if (ok) ++passed;
    }
    std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
