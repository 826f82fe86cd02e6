import pytest

from petrisynth.nets import reachability_graph
from petrisynth.nettypes import Group, Pair, make_type
from petrisynth.regions import (
    Region,
    build_witness,
    check_witness,
    solves,
    support_from_signature,
    synthesized_net,
    validate_region,
)
from petrisynth.ts import SeparationAtom, deterministic_isomorphism

PPT1 = make_type("ppt", 1)
ZPPT2 = make_type("zppt", 2)


def diamond_regions(a1):
    # one region drains on a, the other on b; together they separate the
    # diamond completely
    r1 = support_from_signature(a1, PPT1, 1, {"a": Pair(1, 0), "b": Pair(0, 0)})
    r2 = support_from_signature(a1, PPT1, 1, {"a": Pair(0, 0), "b": Pair(1, 0)})
    return r1, r2


def test_support_from_signature_diamond(a1):
    r1, r2 = diamond_regions(a1)
    assert r1.sup == {"s0": 1, "s1": 0, "s2": 1, "s3": 0}
    assert r2.sup == {"s0": 1, "s1": 1, "s2": 0, "s3": 0}
    assert validate_region(a1, PPT1, r1).ok
    assert validate_region(a1, PPT1, r2).ok


def test_support_from_signature_conflict(a1):
    # draining on both events makes the two walks to s3 disagree
    assert support_from_signature(a1, PPT1, 1, {"a": Pair(1, 0), "b": Pair(1, 0)}) is None
    # and an undefined first step kills the propagation outright
    assert support_from_signature(a1, PPT1, 0, {"a": Pair(1, 0), "b": Pair(0, 0)}) is None


def test_support_from_signature_validation(a1):
    with pytest.raises(ValueError, match="signature map does not match"):
        support_from_signature(a1, PPT1, 1, {"a": Pair(0, 0)})
    with pytest.raises(ValueError, match="initial support out of range: 2"):
        support_from_signature(a1, PPT1, 2, {"a": Pair(0, 0), "b": Pair(0, 0)})


def test_validate_region_errors(a1):
    r1, _ = diamond_regions(a1)
    with pytest.raises(ValueError, match="support map does not match the state set"):
        validate_region(a1, PPT1, Region({"s0": 1}, r1.sig))
    with pytest.raises(ValueError, match="signature map does not match the event set"):
        validate_region(a1, PPT1, Region(r1.sup, {"a": Pair(0, 0)}))
    bad_sup = dict(r1.sup, s2=2)
    check = validate_region(a1, PPT1, Region(bad_sup, r1.sig))
    assert not check.ok
    assert check.reason == "support out of range at s2: 2"
    bad_sig = dict(r1.sig, b=Group(1))
    check = validate_region(a1, PPT1, Region(r1.sup, bad_sig))
    assert not check.ok
    assert "signature event outside" in check.reason
    broken = Region(dict(r1.sup, s1=1), r1.sig)
    check = validate_region(a1, PPT1, broken)
    assert not check.ok
    assert check.arc == ("s0", "a", "s1")
    assert check.reason == "delta(1, 1,0) = 0, expected 1"


def test_solves(a1):
    r1, r2 = diamond_regions(a1)
    assert solves(r1, PPT1, SeparationAtom.ssa("s0", "s1"))
    assert not solves(r1, PPT1, SeparationAtom.ssa("s0", "s2"))
    # a is disabled on r1 wherever its support is 0
    assert solves(r1, PPT1, SeparationAtom.essa("a", "s1"))
    assert not solves(r1, PPT1, SeparationAtom.essa("b", "s1"))


def test_build_witness_diamond(a1):
    r1, r2 = diamond_regions(a1)
    witness, missing = build_witness(a1, PPT1, [r1, r2], "solvability")
    assert missing == []
    # every atom is charged to the first region that solves it
    assert witness.coverage[SeparationAtom.ssa("s0", "s1")] == 0
    assert witness.coverage[SeparationAtom.ssa("s0", "s2")] == 1
    assert witness.coverage[SeparationAtom.essa("a", "s1")] == 0
    report = check_witness(a1, PPT1, witness, "solvability")
    assert report.ok and not report.missing

    partial, missing = build_witness(a1, PPT1, [r1], "ssp")
    assert SeparationAtom.ssa("s0", "s2") in missing
    assert not check_witness(a1, PPT1, partial, "ssp").ok


def test_build_witness_rejects_unknown_problem(a1):
    with pytest.raises(ValueError, match="unknown problem: esp"):
        build_witness(a1, PPT1, [], "esp")


def test_synthesized_net_diamond(a1):
    r1, r2 = diamond_regions(a1)
    net = synthesized_net(a1, PPT1, [r1, r2])
    assert net.name == "a1.net"
    assert net.places == (("p0", 1), ("p1", 1))
    assert net.flow[("p0", "a")] == Pair(1, 0)
    assert net.flow[("p1", "a")] == Pair(0, 0)
    graph = reachability_graph(net)
    assert deterministic_isomorphism(a1, graph) == {
        "s0": "11",
        "s1": "01",
        "s2": "10",
        "s3": "00",
    }


def test_synthesized_net_cycle(a2):
    region = support_from_signature(a2, ZPPT2, 0, {"a": Group(1)})
    assert region.sup == {"s0": 0, "s1": 1, "s2": 2}
    net = synthesized_net(a2, ZPPT2, [region], name="loop")
    assert net.name == "loop"
    graph = reachability_graph(net)
    assert deterministic_isomorphism(a2, graph) == {"s0": "0", "s1": "1", "s2": "2"}
