// Python bindings for the two-level auction toolkit. Rationals cross the
// boundary as exact "p/q" strings; group/bidder/item indices are 1-based to
// match the file formats and reports.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tla/analysis.hpp"
#include "tla/engine.hpp"
#include "tla/errors.hpp"
#include "tla/io.hpp"
#include "tla/lower.hpp"

namespace py = pybind11;

namespace {

tla::Rational rational_arg(const std::string& text, const std::string& context) {
    return tla::parse_rational(text, context);
}

tla::MechanismId mechanism_arg(const std::string& mechanism, const std::string& aggregation) {
    if (mechanism == "m1") return tla::MechanismId::m1();
    if (mechanism == "m2") return tla::MechanismId::m2();
    if (mechanism == "vcg-equalsplit") {
        auto agg = tla::aggregation_from_string(aggregation);
        if (!agg) throw tla::ParseError("unknown aggregation '" + aggregation + "'");
        return tla::MechanismId::vcg_equal_split(*agg);
    }
    throw tla::ParseError("unknown mechanism '" + mechanism + "'");
}

std::vector<int> to_external(const tla::ItemSet& items) {
    std::vector<int> out;
    out.reserve(items.size());
    for (int l : items) out.push_back(l + 1);
    return out;
}

py::dict violation_dict(const tla::ViolationReport& report) {
    py::dict out;
    out["kind"] = std::string(tla::to_string(report.kind));
    out["group"] = report.group + 1;
    if (report.bidder >= 0) {
        out["bidder"] = report.bidder + 1;
    } else {
        out["bidder"] = py::none();
    }
    if (report.deviation) {
        py::list values;
        for (const tla::Rational& v : report.deviation->values()) values.append(v.str());
        out["deviation"] = values;
    } else {
        out["deviation"] = py::none();
    }
    out["truthful_utility"] = report.truthful_utility.str();
    out["deviant_utility"] = report.deviant_utility.str();
    out["witness"] = report.witness;
    return out;
}

py::list violation_list(const std::vector<tla::ViolationReport>& reports) {
    py::list out;
    for (const tla::ViolationReport& r : reports) out.append(violation_dict(r));
    return out;
}

}  // namespace

PYBIND11_MODULE(tla, m) {
    m.doc() = "Two-level auctions: group bidding mechanisms with exact rational arithmetic";

    py::register_exception<tla::Error>(m, "Error");

    py::class_<tla::Instance>(m, "Instance")
        .def_property_readonly(
            "model", [](const tla::Instance& inst) { return std::string(to_string(inst.model())); })
        .def_property_readonly("items", &tla::Instance::item_count)
        .def_property_readonly("group_count", &tla::Instance::group_count)
        .def("group_size", [](const tla::Instance& inst, int j) { return inst.group(j - 1).size(); })
        .def("group_name",
             [](const tla::Instance& inst, int j) { return inst.group(j - 1).name(); })
        .def("value",
             [](const tla::Instance& inst, int j, int i, int l) {
                 return inst.bid(j - 1, i - 1)[l - 1].str();
             })
        .def("to_json", [](const tla::Instance& inst) { return tla::serialize_instance(inst); })
        .def("__eq__", [](const tla::Instance& a, const tla::Instance& b) { return a == b; });

    py::class_<tla::Outcome>(m, "Outcome")
        .def("group_items",
             [](const tla::Outcome& o, int j) { return to_external(o.group_items(j - 1)); })
        .def("group_payment",
             [](const tla::Outcome& o, int j) { return o.group_payment(j - 1).str(); })
        .def("member_items",
             [](const tla::Outcome& o, int j, int i) { return to_external(o.member_items(j - 1, i - 1)); })
        .def("member_payment",
             [](const tla::Outcome& o, int j, int i) { return o.member_payment(j - 1, i - 1).str(); })
        .def("to_json", [](const tla::Outcome& o) { return tla::outcome_to_json(o).dump(2); });

    m.def("parse_instance", &tla::parse_instance, py::arg("text"),
          "Parse an instance from its JSON text");
    m.def("instance_json", &tla::serialize_instance, py::arg("instance"));

    m.def(
        "run",
        [](const std::string& mechanism, const tla::Instance& instance,
           const std::string& aggregation) {
            return tla::run(mechanism_arg(mechanism, aggregation), instance);
        },
        py::arg("mechanism"), py::arg("instance"), py::arg("aggregation") = "sum",
        "Run a mechanism ('m1', 'm2', 'vcg-equalsplit') on truthful bids");

    m.def("welfare", [](const tla::Instance& instance, const tla::Outcome& outcome) {
        return tla::welfare(instance, outcome).str();
    });
    m.def("opt_welfare",
          [](const tla::Instance& instance) { return tla::opt_welfare(instance).str(); });
    m.def(
        "approximation_ratio",
        [](const tla::Instance& instance, const std::string& mechanism,
           const std::string& aggregation) {
            return tla::approximation_ratio(instance, mechanism_arg(mechanism, aggregation)).str();
        },
        py::arg("instance"), py::arg("mechanism"), py::arg("aggregation") = "sum");

    m.def("harmonic", [](int n) { return tla::harmonic(n).str(); });
    m.def("wtp", [](const std::vector<std::string>& bids) {
        std::vector<tla::Rational> values;
        values.reserve(bids.size());
        for (const std::string& b : bids) values.push_back(rational_arg(b, "wtp"));
        return tla::wtp(values).str();
    });

    m.def(
        "check_truthful",
        [](const std::string& mechanism, const tla::Instance& instance,
           const std::string& aggregation) {
            tla::MechanismId id = mechanism_arg(mechanism, aggregation);
            return violation_list(
                tla::check_truthful(id, instance, tla::DeviationGrid::standard(id, instance)));
        },
        py::arg("mechanism"), py::arg("instance"), py::arg("aggregation") = "sum");
    m.def("check_outcome", [](const tla::Instance& instance, const tla::Outcome& outcome) {
        return violation_list(tla::check_outcome_properties(instance, outcome));
    });
    m.def(
        "check_equal_treatment",
        [](const std::string& mechanism, const tla::Instance& instance,
           const std::string& aggregation) {
            return violation_list(
                tla::check_equal_treatment(mechanism_arg(mechanism, aggregation), instance));
        },
        py::arg("mechanism"), py::arg("instance"), py::arg("aggregation") = "sum");
    m.def(
        "probe_consumer_sovereignty",
        [](const std::string& mechanism, const tla::Instance& instance, int group, int bidder,
           const std::string& aggregation) {
            return tla::probe_consumer_sovereignty(mechanism_arg(mechanism, aggregation), instance,
                                                   group - 1, bidder - 1);
        },
        py::arg("mechanism"), py::arg("instance"), py::arg("group"), py::arg("bidder"),
        py::arg("aggregation") = "sum");

    m.def(
        "gen_lb_pair",
        [](int n, const std::string& delta) {
            auto pair = tla::gen_lb_pair(n, rational_arg(delta, "delta"));
            return py::make_tuple(pair.first, pair.second);
        },
        py::arg("n"), py::arg("delta"));
    m.def(
        "gen_unit_identical",
        [](int n, const std::string& eps) {
            return tla::gen_unit_identical(n, rational_arg(eps, "eps"));
        },
        py::arg("n"), py::arg("eps"));
    m.def(
        "gen_appendix_a",
        [](const std::string& eps) { return tla::gen_appendix_a(rational_arg(eps, "eps")); },
        py::arg("eps"));
    m.def(
        "gen_random",
        [](std::uint64_t seed, int groups, int group_size, int items, const std::string& model,
           long max_value) {
            auto parsed = tla::model_from_string(model);
            if (!parsed) throw tla::ParseError("unknown model '" + model + "'");
            tla::RandomSpec spec;
            spec.seed = seed;
            spec.group_count = groups;
            spec.max_group_size = group_size;
            spec.item_count = items;
            spec.model = *parsed;
            spec.max_value = max_value;
            return tla::gen_random(spec);
        },
        py::arg("seed"), py::arg("groups"), py::arg("group_size"), py::arg("items"),
        py::arg("model") = "single-item", py::arg("max_value") = 10);
}
