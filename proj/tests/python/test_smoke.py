"""Smoke tests for the tla extension module."""

import json
from fractions import Fraction

import pytest

import tla

WORKED = json.dumps({
    "version": 1,
    "model": "single-item",
    "items": 1,
    "groups": [
        {"name": "G1", "bidders": [{"values": ["4"]}, {"values": ["3"]}, {"values": ["2"]}]},
        {"name": "G2", "bidders": [{"values": ["5"]}]},
    ],
})


def test_parse_and_run_mechanism_one():
    inst = tla.parse_instance(WORKED)
    assert inst.model == "single-item"
    assert inst.group_count == 2
    assert inst.value(1, 2, 1) == "3"

    out = tla.run("m1", inst)
    assert out.group_items(1) == [1]
    assert out.group_payment(1) == "5"
    assert [out.member_payment(1, i) for i in (1, 2, 3)] == ["5/3"] * 3
    assert tla.welfare(inst, out) == "9"
    assert tla.approximation_ratio(inst, "m1") == "1"


def test_rationals_are_exact_strings():
    assert tla.harmonic(9) == "7129/2520"
    assert tla.wtp(["4", "3", "2"]) == "6"
    assert Fraction(tla.harmonic(2)) == Fraction(3, 2)


def test_lower_bound_family():
    first, second = tla.gen_lb_pair(10, "1/1000000")
    out = tla.run("m1", first)
    assert tla.welfare(first, out) == "1"
    expected = Fraction(7129, 2520) - Fraction(9, 10**6)
    assert Fraction(tla.approximation_ratio(first, "m1")) == expected
    assert Fraction(tla.approximation_ratio(second, "m1")) == expected


def test_unit_identical_oracle():
    inst = tla.gen_unit_identical(8, "1/100")
    assert tla.opt_welfare(inst) == "801/100"


def test_composition_counterexample():
    inst = tla.gen_appendix_a("1/10")
    assert tla.check_truthful("m1", tla.parse_instance(WORKED)) == []
    violations = tla.check_truthful("vcg-equalsplit", inst, aggregation="sum")
    assert violations
    gains = [Fraction(v["deviant_utility"]) - Fraction(v["truthful_utility"])
             for v in violations]
    assert Fraction(1, 10) in gains


def test_round_trip_and_errors():
    inst = tla.gen_random(seed=3, groups=2, group_size=3, items=1)
    again = tla.parse_instance(tla.instance_json(inst))
    assert again == inst

    with pytest.raises(tla.Error):
        tla.parse_instance("not json")
    with pytest.raises(tla.Error):
        tla.run("m2", tla.parse_instance(WORKED))  # model mismatch


def test_consumer_sovereignty_probe():
    inst = tla.parse_instance(WORKED)
    assert tla.probe_consumer_sovereignty("m1", inst, group=2, bidder=1)
