// tla: two-level auction toolkit.
//
// Instances are JSON files (see README for the schema); all numeric output
// is exact rational text. Exit codes: 0 ok, 1 property violation, 2 input
// error, 3 mechanism/model mismatch.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tla/analysis.hpp"
#include "tla/engine.hpp"
#include "tla/errors.hpp"
#include "tla/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitModel = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tla::ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tla::ParseError("cannot write '" + path + "'");
    out << text;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

struct CommonOptions {
    std::string instance_path;
    std::string mechanism = "m1";
    std::string aggregation = "sum";
    std::string format = "text";
    std::string out_path;
};

tla::Instance load_instance(const CommonOptions& options) {
    return tla::parse_instance(read_file(options.instance_path));
}

tla::MechanismId mechanism_id(const CommonOptions& options) {
    if (options.mechanism == "m1") return tla::MechanismId::m1();
    if (options.mechanism == "m2") return tla::MechanismId::m2();
    if (options.mechanism == "vcg-equalsplit") {
        auto aggregation = tla::aggregation_from_string(options.aggregation);
        if (!aggregation) throw tla::ParseError("unknown aggregation '" + options.aggregation + "'");
        return tla::MechanismId::vcg_equal_split(*aggregation);
    }
    throw tla::ParseError("unknown mechanism '" + options.mechanism + "'");
}

std::string item_set_text(const tla::ItemSet& items) {
    std::string out = "{";
    for (size_t idx = 0; idx < items.size(); ++idx) {
        if (idx > 0) out += ", ";
        out += std::to_string(items[idx] + 1);
    }
    return out + "}";
}

tla::Json trace_to_json(const tla::MechanismId& mechanism, const tla::RunTrace& trace) {
    tla::Json doc;
    if (mechanism.kind == tla::MechanismId::Kind::VcgEqualSplit) {
        tla::Json bids = tla::Json::array();
        for (const tla::BidVector& b : trace.group_bids) {
            tla::Json vec = tla::Json::array();
            for (const tla::Rational& v : b.values()) vec.push_back(v.str());
            bids.push_back(vec);
        }
        tla::Json assignment = tla::Json::array();
        for (int j : trace.assignment) assignment.push_back(j + 1);  // 0 = unassigned
        doc["groupBids"] = bids;
        doc["assignment"] = assignment;
        return doc;
    }
    tla::Json items = tla::Json::array();
    for (size_t l = 0; l < trace.per_item.size(); ++l) {
        const tla::SingleItemTrace& t = trace.per_item[l];
        tla::Json wtps = tla::Json::array();
        for (const tla::Rational& w : t.wtps) wtps.push_back(w.str());
        items.push_back({{"item", l + 1},
                         {"wtp", wtps},
                         {"winnerGroup", t.winner + 1},
                         {"groupPayment", t.payment.str()},
                         {"winnersCount", t.winners}});
    }
    doc["items"] = items;
    return doc;
}

void print_trace_text(std::ostream& os, const tla::MechanismId& mechanism,
                      const tla::RunTrace& trace) {
    if (mechanism.kind == tla::MechanismId::Kind::VcgEqualSplit) {
        os << "group bids:\n";
        for (size_t j = 0; j < trace.group_bids.size(); ++j) {
            os << "  group " << (j + 1) << ": (";
            const auto& values = trace.group_bids[j].values();
            for (size_t l = 0; l < values.size(); ++l) {
                if (l > 0) os << ", ";
                os << values[l].str();
            }
            os << ")\n";
        }
        os << "assignment:";
        for (size_t l = 0; l < trace.assignment.size(); ++l) {
            os << " item " << (l + 1) << " -> "
               << (trace.assignment[l] >= 0 ? "group " + std::to_string(trace.assignment[l] + 1)
                                            : std::string("unassigned"))
               << (l + 1 < trace.assignment.size() ? ";" : "");
        }
        os << "\n";
        return;
    }
    for (size_t l = 0; l < trace.per_item.size(); ++l) {
        const tla::SingleItemTrace& t = trace.per_item[l];
        os << "item " << (l + 1) << ": wtp = [";
        for (size_t j = 0; j < t.wtps.size(); ++j) {
            if (j > 0) os << ", ";
            os << t.wtps[j].str();
        }
        os << "]; winner = group " << (t.winner + 1) << "; payment = " << t.payment.str()
           << "; paying members = " << t.winners << "\n";
    }
}

int cmd_run(const CommonOptions& options) {
    tla::Instance instance = load_instance(options);
    tla::MechanismId mechanism = mechanism_id(options);
    tla::RunTrace trace;
    tla::Outcome outcome = tla::run(mechanism, instance, {}, &trace);
    tla::Rational achieved = tla::welfare(instance, outcome);

    std::optional<tla::Rational> optimal;
    try {
        optimal = tla::opt_welfare(instance);
    } catch (const tla::InstanceTooLargeError&) {
        // Oracle out of reach; the run report simply omits it.
    }
    std::optional<tla::Rational> ratio;
    if (optimal && !achieved.is_zero()) ratio = *optimal / achieved;

    if (options.format == "json") {
        tla::Json doc{{"version", 1},
                      {"command", "run"},
                      {"mechanism", options.mechanism},
                      {"model", std::string(tla::to_string(instance.model()))},
                      {"outcome", tla::outcome_to_json(outcome)},
                      {"welfare", achieved.str()},
                      {"trace", trace_to_json(mechanism, trace)}};
        if (mechanism.kind == tla::MechanismId::Kind::VcgEqualSplit) {
            doc["aggregation"] = std::string(tla::to_string(mechanism.aggregation));
        }
        doc["optWelfare"] = optimal ? tla::Json(optimal->str()) : tla::Json(nullptr);
        doc["approximationRatio"] = ratio ? tla::Json(ratio->str()) : tla::Json(nullptr);
        emit(doc.dump(2) + "\n", options.out_path);
        return kExitOk;
    }

    std::ostringstream os;
    os << "mechanism: " << mechanism.str() << "\n";
    os << "model: " << tla::to_string(instance.model()) << " (" << instance.item_count()
       << (instance.item_count() == 1 ? " item, " : " items, ") << instance.group_count()
       << " groups)\n";
    print_trace_text(os, mechanism, trace);
    os << "outcome:\n";
    for (int j = 0; j < instance.group_count(); ++j) {
        os << "  group " << (j + 1) << " '" << instance.group(j).name() << "': items "
           << item_set_text(outcome.group_items(j)) << ", payment "
           << outcome.group_payment(j).str() << "\n";
        for (int i = 0; i < instance.group(j).size(); ++i) {
            os << "    bidder " << (i + 1) << ": items " << item_set_text(outcome.member_items(j, i))
               << ", pays " << outcome.member_payment(j, i).str() << "\n";
        }
    }
    os << "welfare: " << achieved.str() << "\n";
    os << "optimal welfare: " << (optimal ? optimal->str() : "unavailable") << "\n";
    os << "approximation ratio: " << (ratio ? ratio->str() : "unavailable") << "\n";
    emit(os.str(), options.out_path);
    return kExitOk;
}

struct CheckOptions : CommonOptions {
    std::string property;
    std::string replay_path;
    int group = 0;   // 1-based; 0 = all
    int bidder = 0;  // 1-based; 0 = all
};

int cmd_check(const CheckOptions& options) {
    tla::Instance instance = load_instance(options);
    tla::MechanismId mechanism = mechanism_id(options);

    std::vector<tla::ViolationReport> violations;
    tla::Json details;

    if (options.property == "truthful") {
        tla::DeviationGrid grid = tla::DeviationGrid::standard(mechanism, instance);
        violations = tla::check_truthful(mechanism, instance, grid);
    } else if (options.property == "outcome") {
        if (!options.replay_path.empty()) {
            tla::Json doc = tla::Json::parse(read_file(options.replay_path), nullptr, false);
            if (doc.is_discarded()) throw tla::ParseError("invalid JSON in replay file");
            const tla::Json& outcome_doc = doc.contains("outcome") ? doc.at("outcome") : doc;
            tla::Outcome outcome = tla::outcome_from_json(instance, outcome_doc);
            violations = tla::check_outcome_properties(instance, outcome);
        } else {
            violations = tla::check_outcome_properties(instance, tla::run(mechanism, instance));
        }
    } else if (options.property == "equal-treatment") {
        violations = tla::check_equal_treatment(mechanism, instance);
    } else if (options.property == "critical-bid") {
        tla::Outcome truthful = tla::run(mechanism, instance);
        tla::Json checks = tla::Json::array();
        for (int j = 0; j < instance.group_count(); ++j) {
            if (options.group != 0 && options.group != j + 1) continue;
            for (int i = 0; i < instance.group(j).size(); ++i) {
                if (options.bidder != 0 && options.bidder != i + 1) continue;
                if (truthful.member_items(j, i).empty()) {
                    if (options.group != 0 && options.bidder != 0) {
                        throw tla::DomainError("bidder does not win in the truthful run");
                    }
                    continue;
                }
                tla::CriticalBidCheck check = tla::check_critical_bid(mechanism, instance, j, i);
                checks.push_back({{"group", j + 1},
                                  {"bidder", i + 1},
                                  {"payment", check.payment.str()},
                                  {"bracketLow", check.bracket_low.str()},
                                  {"bracketHigh", check.bracket_high.str()},
                                  {"pass", !check.violation.has_value()}});
                if (check.violation) violations.push_back(*check.violation);
            }
        }
        details["checks"] = checks;
    } else if (options.property == "sovereignty") {
        tla::Json probes = tla::Json::array();
        for (int j = 0; j < instance.group_count(); ++j) {
            if (options.group != 0 && options.group != j + 1) continue;
            for (int i = 0; i < instance.group(j).size(); ++i) {
                if (options.bidder != 0 && options.bidder != i + 1) continue;
                bool sovereign = tla::probe_consumer_sovereignty(mechanism, instance, j, i);
                probes.push_back({{"group", j + 1}, {"bidder", i + 1}, {"sovereign", sovereign}});
                if (!sovereign) {
                    tla::ViolationReport report;
                    report.kind = tla::ViolationKind::Monotonicity;
                    report.group = j;
                    report.bidder = i;
                    report.witness = "bidder " + std::to_string(i + 1) + " of group " +
                                     std::to_string(j + 1) +
                                     " cannot force a value-maximizing bundle";
                    violations.push_back(report);
                }
            }
        }
        details["probes"] = probes;
    } else {
        throw tla::ParseError("unknown property '" + options.property + "'");
    }

    tla::sort_reports(violations);
    bool pass = violations.empty();

    if (options.format == "json") {
        tla::Json doc{{"version", 1},
                      {"command", "check"},
                      {"property", options.property},
                      {"mechanism", options.mechanism},
                      {"pass", pass}};
        tla::Json reports = tla::Json::array();
        for (const tla::ViolationReport& v : violations) reports.push_back(tla::violation_to_json(v));
        doc["violations"] = reports;
        for (auto& [key, value] : details.items()) doc[key] = value;
        emit(doc.dump(2) + "\n", options.out_path);
    } else {
        std::ostringstream os;
        os << "property: " << options.property << " (mechanism " << mechanism.str() << ")\n";
        if (pass) {
            os << "no violations found\n";
        } else {
            for (const tla::ViolationReport& v : violations) {
                os << "violation [" << tla::to_string(v.kind) << "] " << v.witness << "\n";
            }
        }
        emit(os.str(), options.out_path);
    }
    return pass ? kExitOk : kExitViolation;
}

struct GenOptions {
    std::string family;
    std::string out_path;
    int n = 10;
    std::string delta = "1/1000000";
    std::string eps = "1/10";
    std::uint64_t seed = 1;
    int groups = 2;
    int group_size = 3;
    int items = 1;
    long max_value = 10;
    std::string model = "single-item";
};

int cmd_gen(const GenOptions& options) {
    if (options.family == "lb-pair") {
        if (options.out_path.empty()) {
            throw tla::ParseError("gen lb-pair writes two files; --out PREFIX is required");
        }
        tla::Rational delta = tla::parse_rational(options.delta, "--delta");
        auto [first, second] = tla::gen_lb_pair(options.n, delta);
        write_file(options.out_path + "-1.json", tla::serialize_instance(first));
        write_file(options.out_path + "-2.json", tla::serialize_instance(second));
        std::cout << options.out_path << "-1.json\n" << options.out_path << "-2.json\n";
        return kExitOk;
    }

    tla::Rational eps = tla::parse_rational(options.eps, "--eps");
    std::optional<tla::Instance> instance;
    if (options.family == "unit-identical") {
        instance = tla::gen_unit_identical(options.n, eps);
    } else if (options.family == "appendix-a") {
        instance = tla::gen_appendix_a(eps);
    } else if (options.family == "random") {
        auto model = tla::model_from_string(options.model);
        if (!model) throw tla::ParseError("unknown model '" + options.model + "'");
        tla::RandomSpec spec;
        spec.seed = options.seed;
        spec.group_count = options.groups;
        spec.max_group_size = options.group_size;
        spec.item_count = options.items;
        spec.model = *model;
        spec.max_value = options.max_value;
        instance = tla::gen_random(spec);
    } else {
        throw tla::ParseError("unknown family '" + options.family + "'");
    }
    emit(tla::serialize_instance(*instance), options.out_path);
    return kExitOk;
}

int cmd_oracle(const CommonOptions& options) {
    tla::Instance instance = load_instance(options);
    tla::OptResult opt = tla::opt_welfare_detail(instance);

    if (options.format == "json") {
        tla::Json assignment = tla::Json::array();
        for (int j : opt.assignment) assignment.push_back(j + 1);  // 0 = unassigned
        tla::Json doc{{"version", 1},
                      {"command", "oracle"},
                      {"optWelfare", opt.welfare.str()},
                      {"assignment", assignment}};
        emit(doc.dump(2) + "\n", options.out_path);
        return kExitOk;
    }
    std::ostringstream os;
    os << "optimal welfare: " << opt.welfare.str() << "\n";
    os << "optimal assignment:";
    for (size_t l = 0; l < opt.assignment.size(); ++l) {
        os << " item " << (l + 1) << " -> "
           << (opt.assignment[l] >= 0 ? "group " + std::to_string(opt.assignment[l] + 1)
                                      : std::string("unassigned"))
           << (l + 1 < opt.assignment.size() ? ";" : "");
    }
    os << "\n";
    emit(os.str(), options.out_path);
    return kExitOk;
}

void add_common_flags(CLI::App* cmd, CommonOptions& options, bool with_mechanism) {
    cmd->add_option("--instance", options.instance_path, "instance JSON file")->required();
    if (with_mechanism) {
        cmd->add_option("--mechanism", options.mechanism, "m1 | m2 | vcg-equalsplit");
        cmd->add_option("--aggregation", options.aggregation,
                        "sum | max | per-item-wtp (vcg-equalsplit only)");
    }
    cmd->add_option("--format", options.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", options.out_path, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-level auction toolkit"};
    app.require_subcommand(1);

    CommonOptions run_options;
    CLI::App* run_cmd = app.add_subcommand("run", "run a mechanism on an instance");
    add_common_flags(run_cmd, run_options, true);

    CheckOptions check_options;
    CLI::App* check_cmd = app.add_subcommand("check", "check a property on an instance");
    check_cmd
        ->add_option("property", check_options.property,
                     "truthful | outcome | equal-treatment | critical-bid | sovereignty")
        ->required();
    add_common_flags(check_cmd, check_options, true);
    check_cmd->add_option("--replay", check_options.replay_path,
                          "outcome report to re-check (property 'outcome')");
    check_cmd->add_option("--group", check_options.group, "1-based group index filter");
    check_cmd->add_option("--bidder", check_options.bidder, "1-based bidder index filter");

    GenOptions gen_options;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance family");
    gen_cmd
        ->add_option("family", gen_options.family,
                     "lb-pair | unit-identical | appendix-a | random")
        ->required();
    gen_cmd->add_option("--n", gen_options.n, "bidder count parameter");
    gen_cmd->add_option("--delta", gen_options.delta, "lb-pair offset (rational)");
    gen_cmd->add_option("--eps", gen_options.eps, "epsilon parameter (rational)");
    gen_cmd->add_option("--seed", gen_options.seed, "random family seed");
    gen_cmd->add_option("--k", gen_options.groups, "random family group count");
    gen_cmd->add_option("--group-size", gen_options.group_size, "random family max group size");
    gen_cmd->add_option("--items", gen_options.items, "random family item count");
    gen_cmd->add_option("--max-value", gen_options.max_value, "random family value bound");
    gen_cmd->add_option("--model", gen_options.model,
                        "random family model: single-item | additive | unit-demand");
    gen_cmd->add_option("--out", gen_options.out_path, "output path (prefix for lb-pair)");

    CommonOptions oracle_options;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "optimal welfare and assignment");
    add_common_flags(oracle_cmd, oracle_options, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_options);
        if (check_cmd->parsed()) return cmd_check(check_options);
        if (gen_cmd->parsed()) return cmd_gen(gen_options);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_options);
    } catch (const tla::ModelMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const tla::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const tla::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
