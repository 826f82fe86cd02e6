"""Regions of a TS with respect to a net type.

A region is a pair of maps (sup, sig): sup gives every state a token count
in 0..b, sig gives every event a tau event, and every arc s --e--> s' must
satisfy delta_tau(sup(s), sig(e)) == sup(s').  Regions are the places of a
synthesized net.  A region solves an atom:

  ssa (s, s'):  sup(s) != sup(s')
  essa (e, s):  delta_tau(sup(s), sig(e)) is undefined
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .nets import PetriNet
from .nettypes import NetType, TauEvent, delta_tau
from .ts import PROBLEMS, SeparationAtom, TransitionSystem, enumerate_atoms


@dataclass
class Region:
    sup: dict[str, int]
    sig: dict[str, TauEvent]


@dataclass
class RegionCheck:
    ok: bool
    arc: Optional[tuple[str, str, str]] = None
    reason: str = ""


@dataclass
class WitnessSet:
    """Regions plus the atom coverage they were assembled for.

    coverage maps each atom to the index (into regions) of the first region
    that solves it.
    """

    regions: list[Region] = field(default_factory=list)
    coverage: dict[SeparationAtom, int] = field(default_factory=dict)


@dataclass
class WitnessReport:
    ok: bool
    missing: list[SeparationAtom]
    coverage: dict[SeparationAtom, int]


def validate_region(ts: TransitionSystem, tau: NetType, region: Region) -> RegionCheck:
    """Check the region condition on every arc; report the first failure.

    Support or signature maps that do not cover exactly the states and
    events of the TS raise ValueError.
    """
    if set(region.sup) != set(ts.states):
        raise ValueError("support map does not match the state set")
    if set(region.sig) != set(ts.events):
        raise ValueError("signature map does not match the event set")
    for s, v in region.sup.items():
        if not 0 <= v <= tau.bound:
            return RegionCheck(False, None, f"support out of range at {s}: {v}")
    for e, ev in region.sig.items():
        if not tau.is_event(ev):
            return RegionCheck(False, None, f"signature event outside {tau}: {e} -> {ev}")
    for src, event, dst in ts.arcs():
        got = delta_tau(tau, region.sup[src], region.sig[event])
        if got != region.sup[dst]:
            return RegionCheck(
                False,
                (src, event, dst),
                f"delta({region.sup[src]}, {region.sig[event]}) = {got}, "
                f"expected {region.sup[dst]}",
            )
    return RegionCheck(True)


def support_from_signature(
    ts: TransitionSystem, tau: NetType, sup_init: int, sig: dict[str, TauEvent]
) -> Optional[Region]:
    """Propagate an initial token count through a signature, if possible.

    The support of a region is determined by sup(initial) and sig: walking
    any arc fixes the target's support.  Returns None when propagation hits
    an undefined step or two walks disagree.
    """
    if set(sig) != set(ts.events):
        raise ValueError("signature map does not match the event set")
    if not 0 <= sup_init <= tau.bound:
        raise ValueError(f"initial support out of range: {sup_init}")
    sup = {ts.initial: sup_init}
    queue = [ts.initial]
    while queue:
        state = queue.pop()
        for event, dst in ts.out_edges(state):
            nxt = delta_tau(tau, sup[state], sig[event])
            if nxt is None:
                return None
            if dst in sup:
                if sup[dst] != nxt:
                    return None
            else:
                sup[dst] = nxt
                queue.append(dst)
    if len(sup) != len(ts.states):
        raise ValueError("TS has unreachable states")
    return Region(sup, dict(sig))


def solves(region: Region, tau: NetType, atom: SeparationAtom) -> bool:
    if atom.kind == "ssa":
        return region.sup[atom.left] != region.sup[atom.right]
    return delta_tau(tau, region.sup[atom.right], region.sig[atom.left]) is None


def build_witness(
    ts: TransitionSystem,
    tau: NetType,
    regions: Sequence[Region],
    problem: str = "solvability",
) -> tuple[WitnessSet, list[SeparationAtom]]:
    """Greedy witness assembly: each atom is charged to the first region
    that solves it.  Returns the witness and the uncovered atoms."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem: {problem}")
    witness = WitnessSet(list(regions), {})
    missing = []
    for atom in enumerate_atoms(ts, problem):
        for i, region in enumerate(witness.regions):
            if solves(region, tau, atom):
                witness.coverage[atom] = i
                break
        else:
            missing.append(atom)
    return witness, missing


def check_witness(
    ts: TransitionSystem, tau: NetType, witness: WitnessSet, problem: str
) -> WitnessReport:
    """Whether the witness covers every atom of the problem."""
    rebuilt, missing = build_witness(ts, tau, witness.regions, problem)
    return WitnessReport(not missing, missing, rebuilt.coverage)


def synthesized_net(
    ts: TransitionSystem,
    tau: NetType,
    regions: Iterable[Region],
    name: Optional[str] = None,
) -> PetriNet:
    """Net whose places are the given regions, in order, named p0, p1, ...

    Each place pi starts at region i's support of the initial state; the
    flow of (pi, e) is region i's signature of e.
    """
    regions = list(regions)
    places = [(f"p{i}", r.sup[ts.initial]) for i, r in enumerate(regions)]
    flow = {}
    for i, r in enumerate(regions):
        for e in ts.events:
            flow[(f"p{i}", e)] = r.sig[e]
    return PetriNet(
        name=name or f"{ts.name}.net",
        net_type=tau,
        places=places,
        transitions=ts.events,
        flow=flow,
    )
