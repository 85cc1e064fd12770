#include "tla/io.hpp"

#include "tla/errors.hpp"

namespace tla {

namespace {

const Json& expect(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return doc.at(key);
}

int expect_int(const Json& doc, const char* key) {
    const Json& field = expect(doc, key);
    if (!field.is_number_integer()) {
        throw ParseError(std::string("field '") + key + "' must be an integer");
    }
    return field.get<int>();
}

std::string expect_string(const Json& doc, const char* key) {
    const Json& field = expect(doc, key);
    if (!field.is_string()) {
        throw ParseError(std::string("field '") + key + "' must be a string");
    }
    return field.get<std::string>();
}

ItemSet item_set_from_json(const Json& doc, const std::string& context) {
    if (!doc.is_array()) throw ParseError(context + " must be an array of item indices");
    std::vector<int> items;
    for (const Json& entry : doc) {
        if (!entry.is_number_integer()) throw ParseError(context + " must contain integers");
        items.push_back(entry.get<int>() - 1);  // external indices are 1-based
    }
    return items;
}

Json item_set_to_json(const ItemSet& items) {
    Json out = Json::array();
    for (int l : items) out.push_back(l + 1);
    return out;
}

}  // namespace

Rational parse_rational(const std::string& text, const std::string& context) {
    auto value = Rational::parse(text);
    if (!value) throw ParseError(context + ": invalid rational '" + text + "'");
    return *value;
}

Instance instance_from_json(const Json& doc) {
    if (expect_int(doc, "version") != 1) throw ParseError("unsupported instance file version");
    std::string model_name = expect_string(doc, "model");
    auto model = model_from_string(model_name);
    if (!model) throw ParseError("unknown model '" + model_name + "'");
    int items = expect_int(doc, "items");
    if (items < 1) throw ParseError("field 'items' must be positive");

    const Json& groups_doc = expect(doc, "groups");
    if (!groups_doc.is_array() || groups_doc.empty()) {
        throw ParseError("field 'groups' must be a nonempty array");
    }
    std::vector<Group> groups;
    groups.reserve(groups_doc.size());
    for (size_t j = 0; j < groups_doc.size(); ++j) {
        const Json& group_doc = groups_doc[j];
        std::string name = expect_string(group_doc, "name");
        const Json& bidders_doc = expect(group_doc, "bidders");
        if (!bidders_doc.is_array() || bidders_doc.empty()) {
            throw ParseError("group '" + name + "' must list at least one bidder");
        }
        std::vector<BidVector> bidders;
        bidders.reserve(bidders_doc.size());
        for (size_t i = 0; i < bidders_doc.size(); ++i) {
            const Json& values_doc = expect(bidders_doc[i], "values");
            if (!values_doc.is_array()) {
                throw ParseError("bidder values must be an array of rational strings");
            }
            std::vector<Rational> values;
            values.reserve(values_doc.size());
            for (const Json& value_doc : values_doc) {
                if (!value_doc.is_string()) {
                    throw ParseError("bidder values must be rational strings");
                }
                std::string context =
                    "group " + std::to_string(j + 1) + " bidder " + std::to_string(i + 1);
                Rational v = parse_rational(value_doc.get<std::string>(), context);
                if (v.is_negative()) throw ParseError(context + ": values must be nonnegative");
                values.push_back(std::move(v));
            }
            if (static_cast<int>(values.size()) != items) {
                throw ParseError("group '" + name + "' bidder " + std::to_string(i + 1) +
                                 " lists " + std::to_string(values.size()) + " values, expected " +
                                 std::to_string(items));
            }
            bidders.emplace_back(std::move(values));
        }
        groups.emplace_back(std::move(name), std::move(bidders));
    }
    try {
        return Instance(*model, items, std::move(groups));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Instance parse_instance(const std::string& text) {
    Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError("invalid JSON");
    return instance_from_json(doc);
}

Json instance_to_json(const Instance& instance) {
    Json groups = Json::array();
    for (const Group& g : instance.groups()) {
        Json bidders = Json::array();
        for (const BidVector& b : g.bidders()) {
            Json values = Json::array();
            for (const Rational& v : b.values()) values.push_back(v.str());
            bidders.push_back({{"values", values}});
        }
        groups.push_back({{"name", g.name()}, {"bidders", bidders}});
    }
    return Json{{"version", 1},
                {"model", std::string(to_string(instance.model()))},
                {"items", instance.item_count()},
                {"groups", groups}};
}

std::string serialize_instance(const Instance& instance) {
    return instance_to_json(instance).dump(2) + "\n";
}

Json outcome_to_json(const Outcome& outcome) {
    Json group_items = Json::array();
    Json group_payments = Json::array();
    Json member_items = Json::array();
    Json member_payments = Json::array();
    for (int j = 0; j < outcome.group_count(); ++j) {
        group_items.push_back(item_set_to_json(outcome.group_items(j)));
        group_payments.push_back(outcome.group_payment(j).str());
        Json items = Json::array();
        Json payments = Json::array();
        for (int i = 0; i < outcome.group_size(j); ++i) {
            items.push_back(item_set_to_json(outcome.member_items(j, i)));
            payments.push_back(outcome.member_payment(j, i).str());
        }
        member_items.push_back(items);
        member_payments.push_back(payments);
    }
    return Json{{"groupItems", group_items},
                {"groupPayments", group_payments},
                {"memberItems", member_items},
                {"memberPayments", member_payments}};
}

Outcome outcome_from_json(const Instance& instance, const Json& doc) {
    const Json& group_items_doc = expect(doc, "groupItems");
    const Json& group_payments_doc = expect(doc, "groupPayments");
    const Json& member_items_doc = expect(doc, "memberItems");
    const Json& member_payments_doc = expect(doc, "memberPayments");

    const size_t k = static_cast<size_t>(instance.group_count());
    if (!group_items_doc.is_array() || group_items_doc.size() != k ||
        !group_payments_doc.is_array() || group_payments_doc.size() != k ||
        !member_items_doc.is_array() || member_items_doc.size() != k ||
        !member_payments_doc.is_array() || member_payments_doc.size() != k) {
        throw ParseError("outcome arrays must have one entry per group");
    }

    std::vector<ItemSet> group_items;
    std::vector<std::vector<ItemSet>> member_items;
    std::vector<Rational> group_payments;
    std::vector<std::vector<Rational>> member_payments;
    for (size_t j = 0; j < k; ++j) {
        std::string context = "group " + std::to_string(j + 1);
        group_items.push_back(
            make_item_set(item_set_from_json(group_items_doc[j], context), instance.item_count()));
        if (!group_payments_doc[j].is_string()) {
            throw ParseError(context + ": payments must be rational strings");
        }
        group_payments.push_back(
            parse_rational(group_payments_doc[j].get<std::string>(), context));

        const size_t nj = static_cast<size_t>(instance.group(static_cast<int>(j)).size());
        if (!member_items_doc[j].is_array() || member_items_doc[j].size() != nj ||
            !member_payments_doc[j].is_array() || member_payments_doc[j].size() != nj) {
            throw ParseError(context + ": member arrays must have one entry per bidder");
        }
        std::vector<ItemSet> items;
        std::vector<Rational> payments;
        for (size_t i = 0; i < nj; ++i) {
            std::string member_context = context + " bidder " + std::to_string(i + 1);
            items.push_back(make_item_set(item_set_from_json(member_items_doc[j][i], member_context),
                                          instance.item_count()));
            if (!member_payments_doc[j][i].is_string()) {
                throw ParseError(member_context + ": payments must be rational strings");
            }
            payments.push_back(
                parse_rational(member_payments_doc[j][i].get<std::string>(), member_context));
        }
        member_items.push_back(std::move(items));
        member_payments.push_back(std::move(payments));
    }
    return Outcome::unchecked(std::move(group_items), std::move(member_items),
                              std::move(group_payments), std::move(member_payments));
}

Json violation_to_json(const ViolationReport& report) {
    Json out{{"kind", std::string(to_string(report.kind))},
             {"group", report.group + 1},
             {"truthfulUtility", report.truthful_utility.str()},
             {"deviantUtility", report.deviant_utility.str()},
             {"witness", report.witness}};
    out["bidder"] = report.bidder >= 0 ? Json(report.bidder + 1) : Json(nullptr);
    if (report.deviation) {
        Json values = Json::array();
        for (const Rational& v : report.deviation->values()) values.push_back(v.str());
        out["deviation"] = values;
    } else {
        out["deviation"] = nullptr;
    }
    return out;
}

}  // namespace tla
