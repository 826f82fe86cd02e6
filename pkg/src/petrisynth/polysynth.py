"""Polynomial-time separation deciders for the modulo net-type families.

The key observation: over zpt/zppt/rzpt, a region whose signature uses only
group events is determined modulo b+1 by linear data.  Fix a spanning tree
of the TS and let psi(s) be the per-event occurrence counts (mod b+1) along
the tree path to s.  An assignment abs of group values to events extends to
a region iff every chord's fundamental cycle count vector is orthogonal to
abs; the support is then sup(s) = sup_init + psi(s).abs.  That turns state
separation into small linear systems over Z_{b+1}, and for rzpt the same
trick settles event/state separation, because an rzpt pair (m,n) constrains
all sources of its event to one support value -- again linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import modsolve
from .nets import DEFAULT_CAP, PetriNet, reachability_graph
from .nettypes import Group, NetType, Pair, TauEvent, absval, make_type, minus, plus
from .regions import (
    Region,
    WitnessSet,
    solves,
    synthesized_net,
    validate_region,
)
from .ts import (
    SeparationAtom,
    TransitionSystem,
    deterministic_isomorphism,
    essa_atoms,
    ssa_atoms,
)

Z_DECIDABLE_SSP = ("zpt", "zppt", "rzpt")


@dataclass
class SpanningData:
    """Spanning tree of a TS plus path count vectors modulo bound+1.

    parent maps every non-initial state to its tree arc (src, event, dst);
    chords are the non-tree arcs in input arc order; psi[s] counts, per
    event in declared order, the occurrences along the tree path from the
    initial state to s.
    """

    ts: TransitionSystem
    bound: int
    parent: dict[str, tuple[str, str, str]]
    chords: tuple[tuple[str, str, str], ...]
    psi: dict[str, tuple[int, ...]]


@dataclass(frozen=True)
class AbstractRegion:
    """Group-only region in vector form: abs aligned to the event order."""

    sup_init: int
    abs: tuple[int, ...]


@dataclass
class DecisionReport:
    holds: bool
    witness: Optional[WitnessSet]
    failing: Optional[SeparationAtom]


@dataclass
class SynthesisReport:
    net: Optional[PetriNet]
    failing: Optional[SeparationAtom]
    witness: Optional[WitnessSet]
    isomorphism: Optional[dict[str, str]]


def build_spanning(ts: TransitionSystem, bound: int, order: str = "bfs") -> SpanningData:
    """Spanning tree in input arc order, breadth-first by default.

    order "dfs" flips the traversal; any spanning tree gives the same
    decision procedures, which tests exploit.
    """
    if order not in ("bfs", "dfs"):
        raise ValueError(f"unknown traversal order: {order}")
    modulus = bound + 1
    index = {e: i for i, e in enumerate(ts.events)}
    zero = (0,) * len(ts.events)
    parent: dict[str, tuple[str, str, str]] = {}
    psi = {ts.initial: zero}
    frontier = [ts.initial]
    tree: set[tuple[str, str, str]] = set()
    while frontier:
        state = frontier.pop(0 if order == "bfs" else -1)
        for event, dst in ts.out_edges(state):
            if dst in psi:
                continue
            arc = (state, event, dst)
            parent[dst] = arc
            tree.add(arc)
            vec = list(psi[state])
            vec[index[event]] = (vec[index[event]] + 1) % modulus
            psi[dst] = tuple(vec)
            frontier.append(dst)
    if len(psi) != len(ts.states):
        raise ValueError("TS has unreachable states")
    chords = tuple(arc for arc in ts.arcs() if arc not in tree)
    return SpanningData(ts, bound, parent, chords, psi)


def fundamental_cycle(sd: SpanningData, chord: tuple[str, str, str]) -> tuple[int, ...]:
    """Occurrence count vector of the chord's fundamental cycle, mod b+1.

    For a chord s --e--> s', the cycle runs the tree path to s, the chord,
    and the tree path from s' backwards: psi(s) - psi(s') + unit(e).
    """
    if chord not in sd.chords:
        raise ValueError(f"not a chord: {chord}")
    src, event, dst = chord
    modulus = sd.bound + 1
    unit = {e: i for i, e in enumerate(sd.ts.events)}[event]
    vec = [
        (a - b_) % modulus for a, b_ in zip(sd.psi[src], sd.psi[dst])
    ]
    vec[unit] = (vec[unit] + 1) % modulus
    return tuple(vec)


def base_system(sd: SpanningData) -> modsolve.ModSystem:
    """Homogeneous system cutting out the abstract regions of the TS.

    One row per chord whose fundamental cycle is nonzero; a group value
    assignment abs satisfies it iff (sup_init, abs) is an abstract region
    for every sup_init.
    """
    rows = [row for chord in sd.chords if any(row := fundamental_cycle(sd, chord))]
    return modsolve.ModSystem(
        sd.bound + 1, len(sd.ts.events), tuple(rows), (0,) * len(rows)
    )


def _group_region(sd: SpanningData, tau: NetType, sup_init: int, abs_vec) -> Region:
    sup = {
        s: (sup_init + sum(p * a for p, a in zip(vec, abs_vec))) % (sd.bound + 1)
        for s, vec in sd.psi.items()
    }
    sig: dict[str, TauEvent] = {
        e: Group(abs_vec[i] % (sd.bound + 1)) for i, e in enumerate(sd.ts.events)
    }
    region = Region(sup, sig)
    check = validate_region(sd.ts, tau, region)
    if not check.ok:
        raise AssertionError(f"derived region fails validation: {check.reason}")
    return region


def decide_ssa(
    ts: TransitionSystem,
    tau: NetType,
    atom: SeparationAtom,
    sd: Optional[SpanningData] = None,
    base_rows: Optional[tuple[tuple[int, ...], ...]] = None,
) -> Optional[Region]:
    """Group-only region separating two states, or None.

    Solves base system + (psi(s') - psi(s)).abs = q for q = 1..b; the first
    solvable q yields the region with sup_init = 0.
    """
    if tau.family not in Z_DECIDABLE_SSP:
        raise ValueError(f"no polynomial ssa decision for family {tau.family}")
    if atom.kind != "ssa":
        raise ValueError(f"not an ssa atom: {atom}")
    sd = sd or build_spanning(ts, tau.bound)
    if base_rows is None:
        base = base_system(sd)
        base_rows = modsolve.reduce_rows(base.modulus, base.rows, base.cols)
    modulus = tau.bound + 1
    diff = tuple(
        (a - b_) % modulus for a, b_ in zip(sd.psi[atom.right], sd.psi[atom.left])
    )
    for q in range(1, tau.bound + 1):
        system = modsolve.ModSystem(
            modulus,
            len(ts.events),
            base_rows + (diff,),
            (0,) * len(base_rows) + (q,),
        )
        x = modsolve.solve(system)
        if x is not None:
            region = _group_region(sd, tau, 0, x)
            if not solves(region, tau, atom):
                raise AssertionError(f"derived region misses its atom: {atom}")
            return region
    return None


def decide_ssp(ts: TransitionSystem, tau: NetType) -> DecisionReport:
    """State separation over zpt/zppt/rzpt, with greedy region reuse.

    Short-circuits on the first unsolvable atom.
    """
    sd = build_spanning(ts, tau.bound)
    base = base_system(sd)
    base_rows = modsolve.reduce_rows(base.modulus, base.rows, base.cols)
    witness = WitnessSet()
    for atom in ssa_atoms(ts):
        covered = _cover(witness, tau, atom)
        if covered:
            continue
        region = decide_ssa(ts, tau, atom, sd=sd, base_rows=base_rows)
        if region is None:
            return DecisionReport(False, None, atom)
        witness.regions.append(region)
        witness.coverage[atom] = len(witness.regions) - 1
    return DecisionReport(True, witness, None)


def _cover(witness: WitnessSet, tau: NetType, atom: SeparationAtom) -> bool:
    for i, region in enumerate(witness.regions):
        if solves(region, tau, atom):
            witness.coverage[atom] = i
            return True
    return False


def _sources(ts: TransitionSystem, event: str) -> list[str]:
    return [s for s in ts.states if ts.has_arc(s, event)]


def essa_system(
    ts: TransitionSystem,
    bound: int,
    atom: SeparationAtom,
    m: int,
    n: int,
    sup_init: int,
    q: int,
    sd: Optional[SpanningData] = None,
) -> modsolve.ModSystem:
    """The rzpt event/state separation system for one parameter choice.

    Unknowns: one group value per event.  Rows, in order: the base system's
    fundamental cycle rows; the pin abs(e) = n - m; equal-support rows
    (psi(s1) - psi(si)).abs = 0 for the later sources si of the event;
    the source support row psi(s1).abs = m - sup_init; the separation row
    (psi(s1) - psi(s)).abs = q.
    """
    if atom.kind != "essa":
        raise ValueError(f"not an essa atom: {atom}")
    sd = sd or build_spanning(ts, bound)
    modulus = bound + 1
    event, state = atom.left, atom.right
    sources = _sources(ts, event)
    if not sources:
        raise ValueError(f"event never occurs: {event}")
    first = sources[0]
    index = {e: i for i, e in enumerate(ts.events)}
    rows: list[tuple[int, ...]] = []
    rhs: list[int] = []
    for chord in sd.chords:
        row = fundamental_cycle(sd, chord)
        if any(row):
            rows.append(row)
            rhs.append(0)
    pin = [0] * len(ts.events)
    pin[index[event]] = 1
    rows.append(tuple(pin))
    rhs.append((n - m) % modulus)
    for other in sources[1:]:
        rows.append(
            tuple((a - b_) % modulus for a, b_ in zip(sd.psi[first], sd.psi[other]))
        )
        rhs.append(0)
    rows.append(sd.psi[first])
    rhs.append((m - sup_init) % modulus)
    rows.append(
        tuple((a - b_) % modulus for a, b_ in zip(sd.psi[first], sd.psi[state]))
    )
    rhs.append(q % modulus)
    return modsolve.ModSystem(modulus, len(ts.events), tuple(rows), tuple(rhs))


def decide_essa_rzpt(
    ts: TransitionSystem,
    bound: int,
    atom: SeparationAtom,
    sd: Optional[SpanningData] = None,
    shared_rows: Optional[tuple[tuple[int, ...], ...]] = None,
) -> Optional[Region]:
    """rzpt region disabling an event at a state, or None.

    Iterates pairs (m,n) lexicographically over the rzpt pairs (so (0,0) is
    skipped), then sup_init 0..b, then q 1..b.  The first solvable system
    is concretized: the event gets the pair signature, every other event
    its solved group value.
    """
    if atom.kind != "essa":
        raise ValueError(f"not an essa atom: {atom}")
    sd = sd or build_spanning(ts, bound)
    modulus = bound + 1
    tau = make_type("rzpt", bound)
    event, state = atom.left, atom.right
    sources = _sources(ts, event)
    if not sources:
        raise ValueError(f"event never occurs: {event}")
    first = sources[0]
    index = {e: i for i, e in enumerate(ts.events)}
    if shared_rows is None:
        shared_rows = _essa_shared_rows(sd, event)
    for m in range(bound + 1):
        for n in range(bound + 1):
            if m == 0 and n == 0:
                continue
            pin = [0] * len(ts.events)
            pin[index[event]] = 1
            for sup_init in range(bound + 1):
                for q in range(1, bound + 1):
                    rows = shared_rows + (
                        tuple(pin),
                        sd.psi[first],
                        tuple(
                            (a - b_) % modulus
                            for a, b_ in zip(sd.psi[first], sd.psi[state])
                        ),
                    )
                    rhs = (0,) * len(shared_rows) + (
                        (n - m) % modulus,
                        (m - sup_init) % modulus,
                        q,
                    )
                    system = modsolve.ModSystem(modulus, len(ts.events), rows, rhs)
                    x = modsolve.solve(system)
                    if x is None:
                        continue
                    region = _concretize_essa(sd, tau, event, m, n, sup_init, x)
                    if not solves(region, tau, atom):
                        raise AssertionError(f"derived region misses its atom: {atom}")
                    return region
    return None


def _essa_shared_rows(sd: SpanningData, event: str) -> tuple[tuple[int, ...], ...]:
    """Pre-reduced homogeneous rows valid for every (m,n,sup_init,q) probe:
    the base system plus the equal-support rows of the event's sources."""
    modulus = sd.bound + 1
    sources = _sources(sd.ts, event)
    first = sources[0]
    rows = [
        row
        for chord in sd.chords
        if any(row := fundamental_cycle(sd, chord))
    ]
    for other in sources[1:]:
        rows.append(
            tuple((a - b_) % modulus for a, b_ in zip(sd.psi[first], sd.psi[other]))
        )
    return modsolve.reduce_rows(modulus, tuple(rows), len(sd.ts.events))


def _concretize_essa(
    sd: SpanningData,
    tau: NetType,
    event: str,
    m: int,
    n: int,
    sup_init: int,
    abs_vec,
) -> Region:
    modulus = sd.bound + 1
    sup = {
        s: (sup_init + sum(p * a for p, a in zip(vec, abs_vec))) % modulus
        for s, vec in sd.psi.items()
    }
    sig: dict[str, TauEvent] = {}
    for i, e in enumerate(sd.ts.events):
        sig[e] = Pair(m, n) if e == event else Group(abs_vec[i] % modulus)
    region = Region(sup, sig)
    check = validate_region(sd.ts, tau, region)
    if not check.ok:
        raise AssertionError(f"derived region fails validation: {check.reason}")
    return region


def decide_essp_rzpt(ts: TransitionSystem, bound: int) -> DecisionReport:
    """Event/state separation over rzpt, greedy reuse, short-circuiting."""
    sd = build_spanning(ts, bound)
    tau = make_type("rzpt", bound)
    witness = WitnessSet()
    shared: dict[str, tuple[tuple[int, ...], ...]] = {}
    for atom in essa_atoms(ts):
        if _cover(witness, tau, atom):
            continue
        if atom.left not in shared:
            shared[atom.left] = _essa_shared_rows(sd, atom.left)
        region = decide_essa_rzpt(ts, bound, atom, sd=sd, shared_rows=shared[atom.left])
        if region is None:
            return DecisionReport(False, None, atom)
        witness.regions.append(region)
        witness.coverage[atom] = len(witness.regions) - 1
    return DecisionReport(True, witness, None)


def synthesize_rzpt(
    ts: TransitionSystem,
    bound: int,
    cap: int = DEFAULT_CAP,
    name: Optional[str] = None,
) -> SynthesisReport:
    """Synthesize an rzpt net whose reachability graph is isomorphic to ts.

    Decides ssp and essp; on success the union of both witnesses becomes
    the net and the isomorphism back to ts is computed and asserted.
    """
    tau = make_type("rzpt", bound)
    ssp = decide_ssp(ts, tau)
    if not ssp.holds:
        return SynthesisReport(None, ssp.failing, None, None)
    essp = decide_essp_rzpt(ts, bound)
    if not essp.holds:
        return SynthesisReport(None, essp.failing, None, None)
    merged = WitnessSet()
    assert ssp.witness is not None and essp.witness is not None
    for part in (ssp.witness, essp.witness):
        for atom, i in part.coverage.items():
            region = part.regions[i]
            if region not in merged.regions:
                merged.regions.append(region)
            merged.coverage[atom] = merged.regions.index(region)
    net = synthesized_net(ts, tau, merged.regions, name=name or f"{ts.name}.synth")
    graph = reachability_graph(net, cap)
    iso = deterministic_isomorphism(graph, ts)
    if iso is None:
        raise AssertionError("synthesized net's reachability graph is not isomorphic")
    return SynthesisReport(net, None, merged, dict(iso))


def concrete_to_abstract(
    ts: TransitionSystem, region: Region, bound: int
) -> AbstractRegion:
    """Forget pair structure: each event keeps only its modular effect.

    A pair (m,n) moves any support it is defined on by n - m mod b+1, a
    group k by k; the support function carries over unchanged.
    """
    modulus = bound + 1
    abs_vec = tuple(
        (plus(region.sig[e]) - minus(region.sig[e]) + absval(region.sig[e])) % modulus
        for e in ts.events
    )
    return AbstractRegion(region.sup[ts.initial], abs_vec)
