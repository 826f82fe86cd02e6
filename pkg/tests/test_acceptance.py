"""Acceptance suite: one test per shipped criterion, run with pytest -v.

Each test is self-contained and states its tolerances inline; timing
bounds use wall-clock time on the current machine.
"""

import itertools
import random
import time

import pytest

from petrisynth import modsolve
from petrisynth.cli import main
from petrisynth.fileio import parse_net, serialize_ts
from petrisynth.nets import reachability_graph
from petrisynth.nettypes import Group, Pair, make_type
from petrisynth.oracle import enumerate_regions, oracle_decide
from petrisynth.polysynth import (
    build_spanning,
    decide_essa_rzpt,
    decide_essp_rzpt,
    decide_ssp,
    essa_system,
    fundamental_cycle,
    synthesize_rzpt,
)
from petrisynth.reduction import (
    alpha_witness_region,
    brute_model,
    build_union,
    joining,
    linear_joining,
)
from petrisynth.regions import (
    check_witness,
    solves,
    support_from_signature,
    synthesized_net,
    validate_region,
)
from petrisynth.ts import (
    SeparationAtom,
    TransitionSystem,
    deterministic_isomorphism,
    grade,
    is_linear,
    ssa_atoms,
    validate,
)

from conftest import random_linear_ts, random_ts


def cycle_ts(n):
    states = [f"s{i}" for i in range(n)]
    arcs = [(states[i], "a", states[(i + 1) % n]) for i in range(n)]
    return TransitionSystem(f"cyc{n}", states, ["a"], arcs, "s0")


def test_criterion_01_worked_essa_example(demo8):
    started = time.perf_counter()
    atom = SeparationAtom.essa("c", "1")
    system = essa_system(demo8, 2, atom, m=2, n=2, sup_init=2, q=2)
    assert modsolve.verify(system, (1, 2, 0, 2))
    region = decide_essa_rzpt(demo8, 2, atom)
    assert region is not None
    tau = make_type("rzpt", 2)
    assert validate_region(demo8, tau, region).ok
    assert solves(region, tau, atom)
    assert time.perf_counter() - started < 1.0


def test_criterion_02_diamond_synthesis_end_to_end(a1):
    tau = make_type("ppt", 1)
    report = oracle_decide(a1, tau, "solvability")
    assert report.answer
    r1 = support_from_signature(a1, tau, 1, {"a": Pair(1, 0), "b": Pair(0, 0)})
    r2 = support_from_signature(a1, tau, 1, {"a": Pair(0, 0), "b": Pair(1, 0)})
    net = synthesized_net(a1, tau, [r1, r2])
    graph = reachability_graph(net)
    assert deterministic_isomorphism(a1, graph) == {
        "s0": "11",
        "s1": "01",
        "s2": "10",
        "s3": "00",
    }


def test_criterion_03_cycle_family_split(a2, tmp_path):
    # pure pairs at b=2 cannot tell the cycle's states apart: no region
    # solves any of the three atoms
    pt2 = make_type("pt", 2)
    regions = list(enumerate_regions(a2, pt2))
    for atom in ssa_atoms(a2):
        assert not any(solves(r, pt2, atom) for r in regions)
    assert not oracle_decide(a2, pt2, "ssp").answer

    zppt2 = make_type("zppt", 2)
    assert decide_ssp(a2, zppt2).holds
    assert oracle_decide(a2, zppt2, "ssp").answer

    source = tmp_path / "a2.ts"
    source.write_text(serialize_ts(a2))
    assert main(["synthesize", "--b", "2", str(source)]) == 0
    net = parse_net((tmp_path / "a2.net").read_text())
    assert len(net.places) == 1
    assert deterministic_isomorphism(a2, reachability_graph(net)) is not None


def test_criterion_04_cycle_bound_hierarchy():
    for n, good, bad in ((3, 2, 1), (4, 3, 2)):
        ts = cycle_ts(n)
        started = time.perf_counter()
        assert synthesize_rzpt(ts, good).net is not None
        assert time.perf_counter() - started < 1.0
        started = time.perf_counter()
        report = synthesize_rzpt(ts, bad)
        assert report.net is None
        assert report.failing is not None
        assert time.perf_counter() - started < 1.0


def test_criterion_05_polynomial_deciders_match_oracle():
    started = time.perf_counter()
    for seed in range(200):
        rng = random.Random(seed)
        ts = random_ts(rng, max_states=6, max_events=3)
        bound = 1 + seed % 2
        for family in ("zpt", "zppt", "rzpt"):
            tau = make_type(family, bound)
            assert decide_ssp(ts, tau).holds == oracle_decide(ts, tau, "ssp").answer
        tau = make_type("rzpt", bound)
        essp = decide_essp_rzpt(ts, bound)
        assert essp.holds == oracle_decide(ts, tau, "essp").answer
        synthesized = synthesize_rzpt(ts, bound).net is not None
        assert synthesized == oracle_decide(ts, tau, "solvability").answer
    assert time.perf_counter() - started < 300.0


def brute_solve(system):
    for x in itertools.product(range(system.modulus), repeat=system.cols):
        if modsolve.verify(system, x):
            return x
    return None


def test_criterion_06_modular_solver_completeness():
    total = 0
    for modulus in (2, 3, 4, 6):
        for cols in (1, 2, 3):
            for rows in (1, 2):
                width = cols * rows + rows
                if modulus ** width <= 7000:
                    combos = itertools.product(range(modulus), repeat=width)
                else:
                    rng = random.Random(10 * modulus + cols + rows)
                    combos = (
                        tuple(rng.randrange(modulus) for _ in range(width))
                        for _ in range(800)
                    )
                for flat in combos:
                    coeff = tuple(
                        tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows)
                    )
                    system = modsolve.ModSystem(
                        modulus, cols, coeff, tuple(flat[cols * rows:])
                    )
                    got = modsolve.solve(system)
                    want = brute_solve(system)
                    assert (got is None) == (want is None), (system, got, want)
                    if got is not None:
                        assert modsolve.verify(system, got)
                    total += 1
    assert total >= 10**4


def test_criterion_07_cycle_orthogonality_theorem():
    for index in range(50):
        rng = random.Random(1000 + index)
        ts = random_ts(rng, max_states=5, max_events=3)
        bound = 1 + index % 2
        modulus = bound + 1
        tau = make_type("zpt", bound)
        trees = [build_spanning(ts, bound, order=order) for order in ("bfs", "dfs")]
        orthogonal_sets = []
        for sd in trees:
            cycles = [fundamental_cycle(sd, chord) for chord in sd.chords]
            orthogonal_sets.append(
                {
                    vec
                    for vec in itertools.product(range(modulus), repeat=len(ts.events))
                    if all(
                        sum(c * v for c, v in zip(cycle, vec)) % modulus == 0
                        for cycle in cycles
                    )
                }
            )
        propagated = {
            vec
            for vec in itertools.product(range(modulus), repeat=len(ts.events))
            if support_from_signature(
                ts, tau, 0, {e: Group(v) for e, v in zip(ts.events, vec)}
            )
            is not None
        }
        assert orthogonal_sets[0] == orthogonal_sets[1] == propagated


@pytest.mark.filterwarnings("ignore:connector name collides")
def test_criterion_08_reduction_structure(example_formula):
    for variant in ("ppt-essp", "pt-essp", "ssp"):
        for bound in (1, 2):
            joined = linear_joining(build_union(example_formula, variant, bound))
            assert validate(joined).ok
            assert is_linear(joined)

    glued = joining(build_union(example_formula, "z-essp", 2))
    assert validate(glued).ok
    assert grade(glued) == 2
    assert glued.initial not in {dst for _, _, dst in glued.arcs()}

    model = brute_model(example_formula)
    assert model == frozenset({0, 4})

    for variant, bounds in (
        ("ppt-essp", (1, 2)),
        ("pt-essp", (1, 2)),
        ("ssp", (1, 2)),
        ("z-essp", (2,)),
    ):
        for bound in bounds:
            witness = alpha_witness_region(example_formula, model, variant, bound)
            assert solves(witness.region, make_type(
                {"ppt-essp": "ppt", "pt-essp": "pt", "ssp": "ppt", "z-essp": "zppt"}[variant],
                bound,
            ), witness.atom)

    annotated = alpha_witness_region(example_formula, model, "ppt-essp", 2)
    sup = annotated.union_region.sup
    assert [sup[f"h1_{i}"] for i in range(12)] == [0, 1, 2, 2, 0, 1, 2, 2, 2, 0, 1, 2]


def test_criterion_09_linear_essp_witness_settles_ssp():
    violations = 0
    for seed in range(100):
        rng = random.Random(seed)
        ts = random_linear_ts(rng, max_states=8, max_events=3)
        bound = 1 + seed % 2
        for family in ("pt", "ppt", "zpt", "zppt", "rzpt"):
            tau = make_type(family, bound)
            report = oracle_decide(ts, tau, "essp")
            if report.answer and not check_witness(ts, tau, report.witness, "ssp").ok:
                violations += 1
    assert violations == 0


def trailing_twos(i):
    count = 0
    while i % 3 == 2:
        i //= 3
        count += 1
    return count


def test_criterion_10_scale_budget():
    # a 200-state walk whose occurrence vectors stay pairwise distinct mod
    # 3: a base-3 Gray walk over the even events plus a tail introducing
    # the odd ones
    labels = [f"e{2 * trailing_twos(i)}" for i in range(189)]
    labels += [f"e{j}" for j in (1, 1, 3, 3, 5, 5, 7, 7, 9, 9)]
    states = [f"s{i}" for i in range(200)]
    arcs = [(states[i], labels[i], states[i + 1]) for i in range(199)]
    big = TransitionSystem("big", states, [f"e{j}" for j in range(10)], arcs, "s0")
    assert validate(big).ok
    started = time.perf_counter()
    report = decide_ssp(big, make_type("zppt", 2))
    elapsed = time.perf_counter() - started
    assert report.holds
    assert len(report.witness.coverage) == 19900
    assert elapsed < 5.0
