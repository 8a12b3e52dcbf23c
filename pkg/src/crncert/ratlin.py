"""Exact linear algebra over the rationals.

Everything that feeds a certificate must be tolerance-free, so ranks, row
spaces, kernels and linear feasibility are decided here in ``Fraction``
arithmetic.  Vectors are tuples, matrices are sequences of row vectors.

Canonical form used throughout the package: a subspace is represented by
the reduced row echelon form of a spanning set, with every row scaled to
integer entries of gcd 1 and positive leading entry.  Two spanning sets
describe the same subspace iff their canonical bases are equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Scalar = Fraction | int
IntVec = tuple[int, ...]


def _frac_rows(rows: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = _frac_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def integerize(vec: Sequence[Scalar], keep_sign: bool = False) -> IntVec:
    """Scale a rational vector to integer entries with gcd 1.

    The scale factor is always positive when ``keep_sign`` is set; otherwise
    the sign is chosen so the first nonzero entry is positive.
    """
    fracs = [Fraction(v) for v in vec]
    den_lcm = 1
    for f in fracs:
        den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
    ints = [int(f * den_lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    if not keep_sign:
        lead = next((v for v in ints if v != 0), 0)
        if lead < 0:
            ints = [-v for v in ints]
    return tuple(ints)


def canonical_basis(rows: Sequence[Sequence[Scalar]]) -> tuple[IntVec, ...]:
    """Canonical integer basis of the row space of ``rows``."""
    reduced, _ = rref(rows)
    return tuple(integerize(row) for row in reduced)


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[IntVec, ...]:
    """Canonical integer basis of the right kernel {x : rows @ x = 0}."""
    if not rows:
        basis = [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
        return tuple(integerize(b) for b in basis)
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    vectors: list[list[Fraction]] = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        vectors.append(v)
    return canonical_basis(vectors)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


class _Ineq:
    """One inequality coeffs . x <= rhs with its multiplier provenance."""

    __slots__ = ("coeffs", "rhs", "mult")

    def __init__(self, coeffs: list[Fraction], rhs: Fraction, mult: list[Fraction]):
        self.coeffs = coeffs
        self.rhs = rhs
        self.mult = mult

    def scaled(self, f: Fraction) -> "_Ineq":
        return _Ineq([c * f for c in self.coeffs], self.rhs * f, [m * f for m in self.mult])

    def plus(self, other: "_Ineq") -> "_Ineq":
        return _Ineq(
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.rhs + other.rhs,
            [a + b for a, b in zip(self.mult, other.mult)],
        )


def _dedupe(ineqs: list[_Ineq]) -> list[_Ineq]:
    # Keep, per coefficient direction, only the tightest right-hand side.
    best: dict[tuple[Fraction, ...], _Ineq] = {}
    order: list[tuple[Fraction, ...]] = []
    for q in ineqs:
        lead = next((c for c in q.coeffs if c != 0), None)
        scale = Fraction(1) if lead is None else 1 / abs(lead)
        key = tuple(c * scale for c in q.coeffs)
        q = q.scaled(scale)
        if key not in best:
            best[key] = q
            order.append(key)
        elif q.rhs < best[key].rhs:
            best[key] = q
    return [best[k] for k in order]


def solve_le(
    A: Sequence[Sequence[Scalar]],
    b: Sequence[Scalar],
    max_rows: int = 200_000,
) -> tuple[Optional[list[Fraction]], Optional[list[Fraction]]]:
    """Decide feasibility of A x <= b by Fourier-Motzkin elimination.

    Returns ``(point, farkas)`` where exactly one entry is not None.
    ``point`` is a feasible rational vector.  ``farkas`` is a nonnegative
    multiplier vector y with y A = 0 and y . b < 0, an exact witness of
    infeasibility (every eliminated inequality is a nonnegative combination
    of the originals, so the multipliers come out of the elimination).
    """
    nrows = len(A)
    nvars = len(A[0]) if nrows else 0
    system = [
        _Ineq(
            [Fraction(v) for v in row],
            Fraction(b[i]),
            [Fraction(int(i == j)) for j in range(nrows)],
        )
        for i, row in enumerate(A)
    ]
    stages: list[list[_Ineq]] = []
    current = system
    for j in range(nvars):
        for q in current:
            if all(c == 0 for c in q.coeffs) and q.rhs < 0:
                return None, q.mult
        stages.append(current)
        pos = [q.scaled(1 / q.coeffs[j]) for q in current if q.coeffs[j] > 0]
        neg = [q.scaled(-1 / q.coeffs[j]) for q in current if q.coeffs[j] < 0]
        nxt = [q for q in current if q.coeffs[j] == 0]
        for p in pos:
            for n in neg:
                nxt.append(p.plus(n))
        current = _dedupe(nxt)
        if len(current) > max_rows:
            raise RuntimeError("inequality system grew too large during elimination")
    for q in current:
        if q.rhs < 0:
            return None, q.mult
    point: list[Fraction] = [Fraction(0)] * nvars
    for j in range(nvars - 1, -1, -1):
        lower: Optional[Fraction] = None
        upper: Optional[Fraction] = None
        for q in stages[j]:
            cj = q.coeffs[j]
            if cj == 0:
                continue
            residual = q.rhs - sum(q.coeffs[i] * point[i] for i in range(j + 1, nvars))
            bound = residual / cj
            if cj > 0:
                upper = bound if upper is None else min(upper, bound)
            else:
                lower = bound if lower is None else max(lower, bound)
        if lower is not None and upper is not None:
            point[j] = (lower + upper) / 2
        elif lower is not None:
            point[j] = lower + 1
        elif upper is not None:
            point[j] = upper - 1
    return point, None
