"""Exact order-two linear recurrence fitting.

A strictly increasing positive sequence e1 < e2 < ... < em satisfies
integer parameters (a, b) when e_{i+2} = a*e_{i+1} + b*e_i for every
applicable i.  ``solve_fit`` returns the complete integer solution set of
that linear system:

* vacuous  - fewer than three terms, every (a, b) works;
* empty    - no integer pair works;
* point    - exactly one pair;
* line     - a one-parameter family base + t*dir, t in Z, which happens
  exactly for a single binding constraint (three terms) or a geometric
  sequence with integer ratio.

All arithmetic is exact; no bound on the magnitude of (a, b) is assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .arith import ContractViolation, _guard

__all__ = [
    "FitKind",
    "FitVerdict",
    "brute_force_fit",
    "constraints_of",
    "solve_constraints",
    "solve_fit",
    "solutions_in_box",
    "verify_params",
]


class FitKind(Enum):
    VACUOUS = "vacuous"
    EMPTY = "empty"
    POINT = "point"
    LINE = "line"


@dataclass(frozen=True)
class FitVerdict:
    """Complete solution set of the recurrence constraints on a sequence."""

    kind: FitKind
    point: tuple[int, int] | None = None
    line_base: tuple[int, int] | None = None
    line_dir: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.kind is FitKind.POINT:
            return f"point{self.point}"
        if self.kind is FitKind.LINE:
            return f"line base={self.line_base} dir={self.line_dir}"
        return self.kind.value


def _check_sequence(seq: Sequence[int]) -> None:
    for i, v in enumerate(seq):
        if v < 1:
            raise ContractViolation("sequence entries must be positive")
        if i and seq[i - 1] >= v:
            raise ContractViolation("sequence must be strictly increasing")
    if seq:
        _guard(seq[-1])


def constraints_of(seq: Sequence[int]) -> list[tuple[int, int, int]]:
    """Adjacent-triple constraints (a_coef, b_coef, rhs): a_coef*a + b_coef*b = rhs."""
    return [(seq[i + 1], seq[i], seq[i + 2]) for i in range(len(seq) - 2)]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _canonical_base(a0: int, b0: int, du: int, dv: int) -> tuple[int, int]:
    # Slide along the direction until the coordinate with nonzero step is
    # reduced into [0, step); unique, so verdicts compare by equality.
    if dv != 0:
        step = abs(dv)
        t = ((b0 % step) - b0) // dv
    else:
        step = abs(du)
        t = ((a0 % step) - a0) // du
    return a0 + t * du, b0 + t * dv


def solve_constraints(constraints: Iterable[tuple[int, int, int]]) -> FitVerdict:
    """Solve {ca*a + cb*b = rhs} exactly over the integers.

    The first constraint fixes a line via extended gcd; each later one
    either keeps the whole line (proportional and consistent), pins the
    line parameter to one integer, or kills the system.
    """
    live = []
    for ca, cb, rhs in constraints:
        if ca == 0 and cb == 0:
            if rhs != 0:
                return FitVerdict(FitKind.EMPTY)
            continue
        live.append((ca, cb, rhs))
    if not live:
        return FitVerdict(FitKind.VACUOUS)

    ca, cb, rhs = live[0]
    g, x, y = _ext_gcd(ca, cb)
    if rhs % g:
        return FitVerdict(FitKind.EMPTY)
    scale = rhs // g
    a0, b0 = x * scale, y * scale
    du, dv = cb // g, -(ca // g)
    if du < 0 or (du == 0 and dv < 0):
        du, dv = -du, -dv

    t_pin: int | None = None
    for ca, cb, rhs in live[1:]:
        if t_pin is None:
            coeff = ca * du + cb * dv
            rem = rhs - (ca * a0 + cb * b0)
            if coeff == 0:
                if rem != 0:
                    return FitVerdict(FitKind.EMPTY)
            elif rem % coeff:
                return FitVerdict(FitKind.EMPTY)
            else:
                t_pin = rem // coeff
        else:
            a = a0 + t_pin * du
            b = b0 + t_pin * dv
            if ca * a + cb * b != rhs:
                return FitVerdict(FitKind.EMPTY)

    if t_pin is not None:
        return FitVerdict(
            FitKind.POINT, point=(a0 + t_pin * du, b0 + t_pin * dv)
        )
    return FitVerdict(
        FitKind.LINE,
        line_base=_canonical_base(a0, b0, du, dv),
        line_dir=(du, dv),
    )


def solve_fit(seq: Sequence[int]) -> FitVerdict:
    """Complete (a, b) solution set for a strictly increasing sequence."""
    _check_sequence(seq)
    if len(seq) <= 2:
        return FitVerdict(FitKind.VACUOUS)
    return solve_constraints(constraints_of(seq))


def verify_params(seq: Sequence[int], a: int, b: int) -> bool:
    """True iff every adjacent triple obeys e3 = a*e2 + b*e1."""
    _check_sequence(seq)
    return all(
        seq[i + 2] == a * seq[i + 1] + b * seq[i] for i in range(len(seq) - 2)
    )


_GRID_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _grid(bound: int) -> tuple[np.ndarray, np.ndarray]:
    cached = _GRID_CACHE.get(bound)
    if cached is None:
        vals = np.arange(-bound, bound + 1, dtype=np.int64)
        # a-major layout, so surviving indices come out lexicographically
        a = np.repeat(vals, vals.size)
        b = np.tile(vals, vals.size)
        cached = _GRID_CACHE[bound] = (a, b)
    return cached


def brute_force_fit(seq: Sequence[int], bound: int) -> list[tuple[int, int]]:
    """Every (a, b) with |a|, |b| <= bound satisfying all constraints.

    Independent oracle for ``solve_fit``: it decides each grid point from
    the raw constraints and never touches the gcd machinery.
    """
    _check_sequence(seq)
    if bound < 1:
        raise ContractViolation("bound must be >= 1")
    cons = constraints_of(seq)
    if not cons:
        a, b = _grid(bound)
        return list(zip(a.tolist(), b.tolist()))

    # int64 is safe as long as |coef * bound| sums stay below 2**62
    if seq[-1] * bound < 1 << 61:
        a, b = _grid(bound)
        ca, cb, rhs = cons[0]
        alive = ca * a + cb * b == rhs
        sa, sb = a[alive], b[alive]
        for ca, cb, rhs in cons[1:]:
            keep = ca * sa + cb * sb == rhs
            sa, sb = sa[keep], sb[keep]
        return list(zip(sa.tolist(), sb.tolist()))

    hits = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if all(ca * a + cb * b == rhs for ca, cb, rhs in cons):
                hits.append((a, b))
    return hits


def _t_range(base: int, step: int, bound: int) -> tuple[int, int] | None:
    """Integer t with |base + t*step| <= bound; None means unbounded."""
    if step == 0:
        return None if abs(base) <= bound else (1, 0)
    lo_num, hi_num = -bound - base, bound - base
    if step < 0:
        lo_num, hi_num, step = -hi_num, -lo_num, -step
    lo = -((-lo_num) // step)
    hi = hi_num // step
    return lo, hi


def solutions_in_box(verdict: FitVerdict, bound: int) -> list[tuple[int, int]]:
    """The verdict's solution set intersected with |a|, |b| <= bound."""
    if bound < 1:
        raise ContractViolation("bound must be >= 1")
    if verdict.kind is FitKind.EMPTY:
        return []
    if verdict.kind is FitKind.POINT:
        a, b = verdict.point
        return [(a, b)] if abs(a) <= bound and abs(b) <= bound else []
    if verdict.kind is FitKind.VACUOUS:
        a, b = _grid(bound)
        return list(zip(a.tolist(), b.tolist()))
    a0, b0 = verdict.line_base
    du, dv = verdict.line_dir
    r1 = _t_range(a0, du, bound)
    r2 = _t_range(b0, dv, bound)
    if r1 is None and r2 is None:  # cannot happen for a primitive direction
        raise ContractViolation("degenerate line direction")
    if r1 is None:
        lo, hi = r2
    elif r2 is None:
        lo, hi = r1
    else:
        lo, hi = max(r1[0], r2[0]), min(r1[1], r2[1])
    return sorted((a0 + t * du, b0 + t * dv) for t in range(lo, hi + 1))
