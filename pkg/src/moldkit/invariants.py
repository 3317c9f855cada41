"""Discriminants, word traces, moduli coordinates and trace identities.

The two-argument discriminant and the three-argument alternating invariant
detect when a family of 2x2 matrices generates the full matrix algebra;
the invariant vector (generator determinants plus traces of strictly
increasing products) is a complete conjugacy invariant on the semi-simple
stratum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import VanishingM
from .fields import FieldElement
from .mat2 import Mat2
from .words import GROUP, RepTuple, Word


def delta2(A: Mat2, B: Mat2) -> FieldElement:
    """Symmetric pair discriminant; zero iff A, B generate a proper subalgebra."""
    trA, trB, trAB = A.tr, B.tr, (A * B).tr
    return (trA * trA * B.det + trB * trB * A.det + trAB * trAB
            - trA * trB * trAB - 4 * A.det * B.det)


def tau3(A: Mat2, B: Mat2, C: Mat2) -> FieldElement:
    """tr(ABC) - tr(ACB); alternating in the last two arguments."""
    return (A * B * C).tr - (A * C * B).tr


def delta4(A1: Mat2, A2: Mat2, A3: Mat2, A4: Mat2) -> FieldElement:
    """4x4 determinant of the stacked entry rows (a11, a12, a21, a22).

    Nonzero iff the four matrices form a basis of the 2x2 matrices; the
    row order fixes the sign so that delta2(A, B) = -delta4(I, A, B, AB).
    """
    rows = [M.entries() for M in (A1, A2, A3, A4)]

    def det3(r, cols):
        (i, j, k) = cols
        return (rows[r[0]][i] * (rows[r[1]][j] * rows[r[2]][k] - rows[r[1]][k] * rows[r[2]][j])
                - rows[r[0]][j] * (rows[r[1]][i] * rows[r[2]][k] - rows[r[1]][k] * rows[r[2]][i])
                + rows[r[0]][k] * (rows[r[1]][i] * rows[r[2]][j] - rows[r[1]][j] * rows[r[2]][i]))

    rest = (1, 2, 3)
    return (rows[0][0] * det3(rest, (1, 2, 3))
            - rows[0][1] * det3(rest, (0, 2, 3))
            + rows[0][2] * det3(rest, (0, 1, 3))
            - rows[0][3] * det3(rest, (0, 1, 2)))


def trace_word(t: RepTuple, w: Word) -> FieldElement:
    """Trace of the image of a word; the empty word gives tr I = 2."""
    return t.evaluate(w).tr


@dataclass(frozen=True)
class InvariantVector:
    """Generator determinants plus traces of strictly increasing products.

    Keys of ``traces`` are the increasing index subsequences (1-based), in
    lexicographic order.  Conjugation-invariant; a complete invariant on
    the semi-simple stratum.
    """

    dets: tuple[FieldElement, ...]
    traces: tuple[tuple[tuple[int, ...], FieldElement], ...]

    def trace_map(self) -> dict[tuple[int, ...], FieldElement]:
        return dict(self.traces)


def increasing_subsequences(n: int) -> list[tuple[int, ...]]:
    """All nonempty increasing subsequences of (1..n), lexicographically."""
    subs = [c for k in range(1, n + 1) for c in combinations(range(1, n + 1), k)]
    return sorted(subs)


def invariant_vector(t: RepTuple) -> InvariantVector:
    """Moduli coordinates of a tuple.

    In group mode the generator list is first augmented with the inverses
    (A_1, ..., A_m, A_1^-1, ..., A_m^-1) so that traces of increasing
    products generate all word traces verbatim.
    """
    mats = list(t.gens)
    if t.mode == GROUP:
        mats += [g.inverse() for g in t.gens]  # invertibility checked on construction
    dets = tuple(g.det for g in mats)
    traces = []
    for sub in increasing_subsequences(len(mats)):
        prod = mats[sub[0] - 1]
        for i in sub[1:]:
            prod = prod * mats[i - 1]
        traces.append((sub, prod.tr))
    return InvariantVector(dets=dets, traces=tuple(traces))


def det_from_traces(t1: FieldElement, t2: FieldElement, t3: FieldElement) -> FieldElement:
    """Recover det A from (tr A, tr A^2, tr A^3) when m = 2 t2 - t1^2 != 0."""
    m = 2 * t2 - t1 * t1
    if not m:
        raise VanishingM("2 tr(A^2) - tr(A)^2 vanishes; determinant not recoverable")
    return (t1 * t3 - t2 * t2) / m


def reconstruct_from_traces(A: Mat2, trX: FieldElement, trAX: FieldElement) -> Mat2:
    """The unique X in span{I, A} with tr X = trX and tr(AX) = trAX.

    Inverts the trace pairing on span{I, A}; needs m(A) != 0.
    """
    m = A.m
    if not m:
        raise VanishingM("m(A) = 0; the trace pairing on span{I, A} is degenerate")
    trA2 = (A * A).tr
    mi = m.inv()
    x = mi * (trA2 * trX - A.tr * trAX)
    y = mi * (-(A.tr * trX) + 2 * trAX)
    return Mat2.identity(A.spec).scale(x) + A.scale(y)


def trace_powers(trA: FieldElement, detA: FieldElement, n: int) -> list[FieldElement]:
    """[tr A^0, ..., tr A^n] by the Cayley-Hamilton recurrence."""
    spec = trA.spec
    out = [spec.element(2)]
    if n >= 1:
        out.append(trA)
    for _ in range(2, n + 1):
        out.append(trA * out[-1] - detA * out[-2])
    return out


def m_power_closed(A: Mat2, n: int) -> FieldElement:
    """m(A^n) via the closed formula m(A) * f(tr A, det A)^2.

    f sums det(A)^k tr(A^(n-2k-1)); for odd n the final tr A^0 term is
    replaced by det(A)^((n-1)/2) alone.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    trA, detA = A.tr, A.det
    tp = trace_powers(trA, detA, max(n - 1, 0))
    spec = A.spec
    acc = spec.zero()
    if n % 2 == 1:
        for k in range((n - 3) // 2 + 1):
            acc = acc + detA**k * tp[n - 2 * k - 1]
        acc = acc + detA ** ((n - 1) // 2)
    else:
        for k in range((n - 2) // 2 + 1):
            acc = acc + detA**k * tp[n - 2 * k - 1]
    return A.m * acc * acc
