import random

import pytest

from petrisynth.reduction import Cm1in3Formula
from petrisynth.ts import TransitionSystem


@pytest.fixture
def a1():
    # 2x2 diamond: two events that commute once each
    return TransitionSystem(
        "a1",
        ["s0", "s1", "s2", "s3"],
        ["a", "b"],
        [("s0", "a", "s1"), ("s0", "b", "s2"), ("s1", "b", "s3"), ("s2", "a", "s3")],
        "s0",
    )


@pytest.fixture
def a2():
    # directed 3-cycle on a single event
    return TransitionSystem(
        "a2",
        ["s0", "s1", "s2"],
        ["a"],
        [("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s0")],
        "s0",
    )


@pytest.fixture
def demo8():
    # 8 states, 4 events, two c-cycles sharing structure through a and d
    return TransitionSystem(
        "demo8",
        [str(i) for i in range(8)],
        ["a", "b", "c", "d"],
        [
            ("0", "a", "1"),
            ("1", "b", "2"),
            ("2", "c", "3"),
            ("3", "c", "4"),
            ("4", "c", "2"),
            ("0", "c", "5"),
            ("5", "c", "6"),
            ("6", "a", "7"),
            ("6", "c", "0"),
            ("7", "d", "4"),
        ],
        "0",
    )


@pytest.fixture
def example_formula():
    # six clauses over six variables, each variable exactly three times;
    # the unique one-in-three model is {0, 4}
    return Cm1in3Formula(
        ((0, 1, 2), (0, 2, 3), (0, 1, 3), (2, 4, 5), (1, 4, 5), (3, 4, 5))
    )


def random_ts(rng: random.Random, max_states: int = 6, max_events: int = 3):
    """Reachable deterministic TS: a random spanning tree plus extra arcs."""
    n = rng.randint(2, max_states)
    k = rng.randint(1, max_events)
    states = [f"s{i}" for i in range(n)]
    events = [chr(ord("a") + i) for i in range(k)]
    arcs = []
    used = set()
    for i in range(1, n):
        src = states[rng.randrange(i)]
        options = [e for e in events if (src, e) not in used]
        if not options:
            src = next(s for s in states[:i] for e in events if (s, e) not in used)
            options = [e for e in events if (src, e) not in used]
        event = rng.choice(options)
        used.add((src, event))
        arcs.append((src, event, states[i]))
    for _ in range(rng.randint(0, n)):
        free = [(s, e) for s in states for e in events if (s, e) not in used]
        if not free:
            break
        src, event = rng.choice(free)
        used.add((src, event))
        arcs.append((src, event, states[rng.randrange(n)]))
    # keep every event used so validation passes
    for event in events:
        if not any(e == event for _, e, _ in arcs):
            free = [s for s in states if (s, event) not in used]
            src = rng.choice(free)
            used.add((src, event))
            arcs.append((src, event, states[rng.randrange(n)]))
    return TransitionSystem(f"r{rng.randrange(10**6)}", states, events, arcs, states[0])


def random_linear_ts(rng: random.Random, max_states: int = 8, max_events: int = 3):
    """Linear TS: one path from the initial state, random labels."""
    n = rng.randint(2, max_states)
    k = rng.randint(1, max_events)
    states = [f"s{i}" for i in range(n)]
    labels = [chr(ord("a") + rng.randrange(k)) for _ in range(n - 1)]
    events = list(dict.fromkeys(labels))
    arcs = [(states[i], labels[i], states[i + 1]) for i in range(n - 1)]
    return TransitionSystem(f"l{rng.randrange(10**6)}", states, events, arcs, states[0])
