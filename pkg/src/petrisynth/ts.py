"""Deterministic initialized labeled transition systems.

States and events are plain strings drawn from a restricted identifier
charset.  A transition system (TS) is finite, has one initial state and a
partial deterministic transition function: at most one arc s --e--> s' for
every state s and event e.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

IDENTIFIER = re.compile(r"[A-Za-z0-9_.+-]+\Z")

PROBLEMS = ("ssp", "essp", "solvability")


@dataclass(frozen=True)
class SeparationAtom:
    """A single separation obligation.

    kind "ssa": left and right are two distinct states to tell apart.
    kind "essa": left is an event, right a state where it must be disabled.
    """

    kind: str
    left: str
    right: str

    @staticmethod
    def ssa(s: str, t: str) -> "SeparationAtom":
        return SeparationAtom("ssa", s, t)

    @staticmethod
    def essa(e: str, s: str) -> "SeparationAtom":
        return SeparationAtom("essa", e, s)

    def __str__(self) -> str:
        return f"{self.kind}({self.left},{self.right})"


class TransitionSystem:
    """Finite deterministic TS with ordered states and events.

    The declared order of states and events is significant: atom
    enumeration, spanning trees and serialization all follow it.  Arcs keep
    their insertion order.  Instances are treated as immutable once built.
    """

    def __init__(
        self,
        name: str,
        states: Iterable[str],
        events: Iterable[str],
        arcs: Iterable[tuple[str, str, str]],
        initial: str,
    ):
        self.name = name
        self.states = tuple(states)
        self.events = tuple(events)
        self.initial = initial
        self._delta: dict[tuple[str, str], str] = {}
        self._out: dict[str, list[tuple[str, str]]] = {s: [] for s in self.states}
        for src, event, dst in arcs:
            key = (src, event)
            if key in self._delta:
                raise ValueError(f"nondeterministic arc: {src} {event}")
            self._delta[key] = dst
            if src in self._out:
                self._out[src].append((event, dst))

    def delta(self, state: str, event: str) -> Optional[str]:
        """Successor of state under event, or None if undefined."""
        return self._delta.get((state, event))

    def has_arc(self, state: str, event: str) -> bool:
        return (state, event) in self._delta

    def out_edges(self, state: str) -> list[tuple[str, str]]:
        """Outgoing (event, target) pairs of state, in insertion order."""
        return list(self._out.get(state, ()))

    def arcs(self) -> tuple[tuple[str, str, str], ...]:
        """All arcs (src, event, dst) in insertion order."""
        return tuple((s, e, t) for (s, e), t in self._delta.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransitionSystem):
            return NotImplemented
        return (
            self.name == other.name
            and self.states == other.states
            and self.events == other.events
            and self.initial == other.initial
            and self._delta == other._delta
        )

    def __repr__(self) -> str:
        return (
            f"TransitionSystem({self.name!r}, {len(self.states)} states, "
            f"{len(self.events)} events, {len(self._delta)} arcs)"
        )


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]


def validate(ts: TransitionSystem) -> ValidationReport:
    """Check well-formedness and return every violation found.

    Violations name their offender, e.g. "unreachable: u".  A TS with an
    empty report is safe input for every other operation in the package.
    """
    violations: list[str] = []
    for label, value in [("name", ts.name)] + [("state", s) for s in ts.states] + [
        ("event", e) for e in ts.events
    ]:
        if not IDENTIFIER.match(value):
            violations.append(f"bad {label} identifier: {value!r}")
    seen: set[str] = set()
    for s in ts.states:
        if s in seen:
            violations.append(f"duplicate state: {s}")
        seen.add(s)
    seen = set()
    for e in ts.events:
        if e in seen:
            violations.append(f"duplicate event: {e}")
        seen.add(e)
    state_set = set(ts.states)
    event_set = set(ts.events)
    if ts.initial not in state_set:
        violations.append(f"unknown initial state: {ts.initial}")
    for (src, event), dst in ts._delta.items():
        if src not in state_set:
            violations.append(f"arc source not a state: {src}")
        if dst not in state_set:
            violations.append(f"arc target not a state: {dst}")
        if event not in event_set:
            violations.append(f"arc event not declared: {event}")
    if violations:
        return ValidationReport(False, violations)

    reached = {ts.initial}
    frontier = [ts.initial]
    while frontier:
        state = frontier.pop()
        for _, dst in ts.out_edges(state):
            if dst not in reached:
                reached.add(dst)
                frontier.append(dst)
    for s in ts.states:
        if s not in reached:
            violations.append(f"unreachable: {s}")
    used = {event for (_, event) in ts._delta}
    for e in ts.events:
        if e not in used:
            violations.append(f"unused event: {e}")
    return ValidationReport(not violations, violations)


def grade(ts: TransitionSystem) -> int:
    """Least g such that every state sees at most g distinct incoming and
    at most g distinct outgoing events."""
    incoming: dict[str, set[str]] = {s: set() for s in ts.states}
    best = 0
    for (src, event), dst in ts._delta.items():
        incoming[dst].add(event)
    for s in ts.states:
        out = len(ts._out.get(s, ()))
        best = max(best, out, len(incoming[s]))
    return best


def is_linear(ts: TransitionSystem) -> bool:
    """True iff the TS is a single simple path from the initial state."""
    return _linear_walk(ts) is not None


def linear_terminal(ts: TransitionSystem) -> str:
    """Terminal state of a linear TS.  Raises ValueError if not linear."""
    walk = _linear_walk(ts)
    if walk is None:
        raise ValueError(f"not linear: {ts.name}")
    return walk[-1]


def _linear_walk(ts: TransitionSystem) -> Optional[list[str]]:
    path = [ts.initial]
    visited = {ts.initial}
    state = ts.initial
    while True:
        out = ts.out_edges(state)
        if len(out) > 1:
            return None
        if not out:
            break
        state = out[0][1]
        if state in visited:
            return None
        visited.add(state)
        path.append(state)
    if len(path) != len(ts.states):
        return None
    return path


def ssa_atoms(ts: TransitionSystem) -> list[SeparationAtom]:
    """All unordered state pairs, once each, in declared state order."""
    atoms = []
    for i, s in enumerate(ts.states):
        for t in ts.states[i + 1 :]:
            atoms.append(SeparationAtom.ssa(s, t))
    return atoms


def essa_atoms(ts: TransitionSystem) -> list[SeparationAtom]:
    """All (event, state) pairs with the event undefined at the state."""
    atoms = []
    for e in ts.events:
        for s in ts.states:
            if not ts.has_arc(s, e):
                atoms.append(SeparationAtom.essa(e, s))
    return atoms


def enumerate_atoms(ts: TransitionSystem, problem: str = "solvability") -> list[SeparationAtom]:
    """Separation atoms for a decision problem: ssp, essp or solvability."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem: {problem}")
    atoms: list[SeparationAtom] = []
    if problem in ("ssp", "solvability"):
        atoms.extend(ssa_atoms(ts))
    if problem in ("essp", "solvability"):
        atoms.extend(essa_atoms(ts))
    return atoms


def deterministic_isomorphism(
    a: TransitionSystem, b: TransitionSystem
) -> Optional[Mapping[str, str]]:
    """Initial-state-preserving label-preserving bijection, if one exists.

    Determinism makes the candidate unique: the image of the initial state
    is forced, and every arc propagates the mapping.  Returns the state map
    a -> b, or None.
    """
    if set(a.events) != set(b.events):
        return None
    if len(a.states) != len(b.states):
        return None
    mapping = {a.initial: b.initial}
    taken = {b.initial}
    queue = [a.initial]
    while queue:
        x = queue.pop(0)
        y = mapping[x]
        out_x = a.out_edges(x)
        if len(out_x) != len(b.out_edges(y)):
            return None
        for event, x2 in out_x:
            y2 = b.delta(y, event)
            if y2 is None:
                return None
            if x2 in mapping:
                if mapping[x2] != y2:
                    return None
            else:
                if y2 in taken:
                    return None
                mapping[x2] = y2
                taken.add(y2)
                queue.append(x2)
    if len(mapping) != len(a.states):
        # some a-state unreachable; bijectivity cannot be certified
        return None
    return mapping
