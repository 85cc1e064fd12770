#include <doctest.h>

#include <string>

#include "support.hpp"
#include "tla/analysis.hpp"
#include "tla/engine.hpp"
#include "tla/errors.hpp"
#include "tla/io.hpp"

using namespace tla;
using test::R;

namespace {

const char* kWorkedExample = R"({
  "version": 1,
  "model": "single-item",
  "items": 1,
  "groups": [
    {"name": "G1", "bidders": [{"values": ["4"]}, {"values": ["3"]}, {"values": ["2"]}]},
    {"name": "G2", "bidders": [{"values": ["5"]}]}
  ]
})";

}  // namespace

TEST_CASE("parsing the worked example file") {
    Instance inst = parse_instance(kWorkedExample);
    CHECK(inst.model() == Model::SingleItem);
    CHECK(inst.item_count() == 1);
    REQUIRE(inst.group_count() == 2);
    CHECK(inst.group(0).name() == "G1");
    CHECK(inst.bid(0, 1)[0] == Rational(3));
    CHECK(inst.bid(1, 0)[0] == Rational(5));
}

TEST_CASE("decimal and fraction strings parse exactly") {
    Instance inst = parse_instance(R"({
      "version": 1, "model": "additive", "items": 2,
      "groups": [{"name": "g", "bidders": [{"values": ["0.25", "2/4"]}]}]
    })");
    CHECK(inst.bid(0, 0)[0] == Rational(1, 4));
    CHECK(inst.bid(0, 0)[1] == Rational(1, 2));
}

TEST_CASE("round trip is exact on every generated family") {
    std::vector<Instance> corpus;
    auto [lb1, lb2] = gen_lb_pair(10, R("1/1000000"));
    corpus.push_back(lb1);
    corpus.push_back(lb2);
    corpus.push_back(gen_unit_identical(8, R("1/100")));
    corpus.push_back(gen_appendix_a(R("1/10")));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.group_count = 1 + static_cast<int>(seed % 3);
        spec.max_group_size = 3;
        spec.model = seed % 3 == 0   ? Model::SingleItem
                     : seed % 3 == 1 ? Model::Additive
                                     : Model::UnitDemand;
        spec.item_count = spec.model == Model::SingleItem ? 1 : 2 + static_cast<int>(seed % 2);
        spec.max_value = 10;
        corpus.push_back(gen_random(spec));
    }
    for (const Instance& inst : corpus) {
        CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
}

TEST_CASE("serialization is deterministic") {
    Instance inst = gen_appendix_a(R("1/10"));
    CHECK(serialize_instance(inst) == serialize_instance(gen_appendix_a(R("1/10"))));
}

TEST_CASE("machine reports carry rationals as strings only") {
    Instance inst = parse_instance(kWorkedExample);
    Json doc = outcome_to_json(run(MechanismId::m1(), inst));
    CHECK(doc["groupPayments"][0] == "5");
    CHECK(doc["memberPayments"][0][1] == "5/3");
    CHECK(doc["groupItems"][0][0] == 1);  // 1-based externally
}

TEST_CASE("outcome JSON round trips through the replay path") {
    Instance inst = parse_instance(kWorkedExample);
    Outcome original = run(MechanismId::m1(), inst);
    Outcome replayed = outcome_from_json(inst, outcome_to_json(original));
    CHECK(replayed == original);
}

TEST_CASE("schema violations raise ParseError") {
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance("{}"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 2, "model": "single-item", "items": 1,
        "groups": [{"name": "g", "bidders": [{"values": ["1"]}]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "dutch", "items": 1,
        "groups": [{"name": "g", "bidders": [{"values": ["1"]}]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 0,
        "groups": [{"name": "g", "bidders": [{"values": []}]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 1,
        "groups": []})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 1,
        "groups": [{"name": "g", "bidders": []}]})"),
                    ParseError);
    // Wrong arity, malformed rational, negative value, ten fractional digits.
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 1,
        "groups": [{"name": "g", "bidders": [{"values": ["1", "2"]}]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 1,
        "groups": [{"name": "g", "bidders": [{"values": ["1/0"]}]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 1,
        "groups": [{"name": "g", "bidders": [{"values": ["-1"]}]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 1,
        "groups": [{"name": "g", "bidders": [{"values": ["0.1234567891"]}]}]})"),
                    ParseError);
    // Model/shape mismatch surfaces as a parse failure too.
    CHECK_THROWS_AS(parse_instance(R"({"version": 1, "model": "single-item", "items": 2,
        "groups": [{"name": "g", "bidders": [{"values": ["1", "2"]}]}]})"),
                    ParseError);
}

TEST_CASE("violation reports serialize with 1-based indices") {
    ViolationReport report;
    report.kind = ViolationKind::Truthfulness;
    report.group = 0;
    report.bidder = 1;
    report.deviation = BidVector(test::rationals({"0", "1000000"}));
    report.truthful_utility = Rational(0);
    report.deviant_utility = R("1/10");
    report.witness = "w";

    Json doc = violation_to_json(report);
    CHECK(doc["kind"] == "truthfulness");
    CHECK(doc["group"] == 1);
    CHECK(doc["bidder"] == 2);
    CHECK(doc["deviation"][1] == "1000000");
    CHECK(doc["deviantUtility"] == "1/10");
}
