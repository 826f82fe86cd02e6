"""Linear equation systems over Z_m, m composite allowed.

Solving over a residue ring needs more than Gaussian elimination: a pivot
like 2 mod 4 is a zero divisor, and naively zeroing it out loses solutions.
The row reduction here keeps the basis closed under annihilator rows
((m/gcd(pivot,m)) times the row), which is what makes back-substitution
with free variables fixed to 0 complete: if the reduced system has no pivot
in the right-hand-side column, the straightforward bottom-up substitution
always succeeds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence


@dataclass(frozen=True)
class ModSystem:
    """k equations in n unknowns over Z_modulus, entries kept reduced."""

    modulus: int
    cols: int
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if len(self.rows) != len(self.rhs):
            raise ValueError("row/rhs count mismatch")
        for row in self.rows:
            if len(row) != self.cols:
                raise ValueError("row width mismatch")
        m = self.modulus
        object.__setattr__(
            self, "rows", tuple(tuple(v % m for v in row) for row in self.rows)
        )
        object.__setattr__(self, "rhs", tuple(v % m for v in self.rhs))


def make_system(
    modulus: int,
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    cols: Optional[int] = None,
) -> ModSystem:
    """Build a ModSystem, inferring the width from the first row."""
    if cols is None:
        if not rows:
            raise ValueError("cols required for an empty system")
        cols = len(rows[0])
    return ModSystem(modulus, cols, tuple(tuple(r) for r in rows), tuple(rhs))


def verify(system: ModSystem, x: Sequence[int]) -> bool:
    """Whether x satisfies every equation of the system."""
    if len(x) != system.cols:
        return False
    m = system.modulus
    for row, want in zip(system.rows, system.rhs):
        acc = sum(c * v for c, v in zip(row, x)) % m
        if acc != want:
            return False
    return True


def solve(system: ModSystem) -> Optional[tuple[int, ...]]:
    """One solution with free variables fixed to 0, or None.

    Deterministic: rows are folded into the basis top-down and the reduced
    basis is unique up to the fixed reduction order.
    """
    m = system.modulus
    n = system.cols
    augmented = [list(row) + [b] for row, b in zip(system.rows, system.rhs)]
    basis = _howell(m, augmented, n + 1)
    if n in basis:
        # a pivot in the rhs column is an equation 0 = c with c != 0
        return None
    x = [0] * n
    for j in sorted(basis, reverse=True):
        row = basis[j]
        acc = (row[n] - sum(row[l] * x[l] for l in range(j + 1, n))) % m
        g = row[j]
        d = gcd(g, m)
        if acc % d:
            raise AssertionError("back-substitution hit an unsolvable pivot")
        mm = m // d
        if mm > 1:
            x[j] = (acc // d) * pow((g // d) % mm, -1, mm) % mm
    return tuple(x)


def reduce_rows(modulus: int, rows: Sequence[Sequence[int]], cols: int) -> tuple[tuple[int, ...], ...]:
    """Basis rows spanning the same Z_modulus row module as the input.

    Useful for preprocessing a shared homogeneous block once and reusing it
    across many one-extra-row systems.
    """
    basis = _howell(modulus, [list(r) for r in rows], cols)
    return tuple(tuple(basis[j]) for j in sorted(basis))


def _howell(m: int, rows: list[list[int]], width: int) -> dict[int, list[int]]:
    """Echelon basis keyed by pivot column, closed under annihilators."""
    basis: dict[int, list[int]] = {}
    pending = [[v % m for v in row] for row in rows]
    while pending:
        row = pending.pop(0)
        col = _leading(row, width)
        while col is not None:
            if col not in basis:
                basis[col] = row
                d = gcd(row[col], m)
                if d != m:
                    pending.append([(m // d) * e % m for e in row])
                break
            held = basis[col]
            g, c = held[col], row[col]
            if c % g == 0:
                t = c // g
                row = [(rv - t * hv) % m for rv, hv in zip(row, held)]
            else:
                # unimodular 2x2 combination; the held pivot drops to gcd(g, c)
                d, u, v = _egcd(g, c)
                new_held = [(u * hv + v * rv) % m for hv, rv in zip(held, row)]
                row = [((g // d) * rv - (c // d) * hv) % m for hv, rv in zip(held, row)]
                basis[col] = new_held
                dd = gcd(d, m)
                if dd != m:
                    pending.append([(m // dd) * e % m for e in new_held])
            col = _leading(row, width)
    return basis


def _leading(row: list[int], width: int) -> Optional[int]:
    for j in range(width):
        if row[j]:
            return j
    return None


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b == g == gcd(a, b), for a, b >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    return old_r, old_u, old_v
