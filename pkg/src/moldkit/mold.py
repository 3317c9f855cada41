"""Span closure of the generated matrix algebra and the six-way mold
classification over a field, with the discriminant-based air tests."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

from . import linalg
from .errors import NonInvertibleGenerator
from .fields import FieldElement
from .invariants import delta2, tau3
from .mat2 import Mat2
from .words import GROUP, RepTuple


class MoldLabel(Enum):
    AIR = "air"
    BOREL = "borel"
    SEMISIMPLE = "semi_simple"
    UNIPOTENT = "unipotent"
    UNIPOTENT_F2 = "unipotent_f2"
    SCALAR = "scalar"


@dataclass(frozen=True)
class SubalgebraBasis:
    """Echelonized basis of the unital algebra generated by a tuple."""

    basis: tuple[Mat2, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def span_closure(t: RepTuple) -> SubalgebraBasis:
    """Fixpoint of span + span*span starting from {I} union generators.

    Terminates in at most three rounds since the dimension is at most 4.
    The returned basis is the reduced row echelon form of the closure, so
    it is deterministic and contains I in its span.
    """
    rows = [Mat2.identity(t.spec).entries()] + [g.entries() for g in t.gens]
    basis_rows, _ = linalg.rref(rows)
    while len(basis_rows) < 4:
        mats = [Mat2(*row) for row in basis_rows]
        products = [(x * y).entries() for x in mats for y in mats]
        new_rows, _ = linalg.rref(list(basis_rows) + products)
        if len(new_rows) == len(basis_rows):
            break
        basis_rows = new_rows
    return SubalgebraBasis(tuple(Mat2(*row) for row in basis_rows))


def rank_le2_test(t: RepTuple) -> bool:
    """True iff the span of all word images has dimension <= 2."""
    return span_closure(t).dim <= 2


def classify(t: RepTuple) -> MoldLabel:
    """Six-way mold classification of a tuple over a field.

    dim 4 -> air, dim 3 -> borel, dim 1 -> scalar; dim 2 is semi-simple
    when some basis element has m != 0, otherwise unipotent (split by
    characteristic).  In characteristic 2, m = tr^2, so the m-test on the
    basis is the all-traces-vanish test.
    """
    closure = span_closure(t)
    if closure.dim == 4:
        return MoldLabel.AIR
    if closure.dim == 3:
        return MoldLabel.BOREL
    if closure.dim == 1:
        return MoldLabel.SCALAR
    if any(X.m for X in closure.basis):
        return MoldLabel.SEMISIMPLE
    if t.spec.characteristic() == 2:
        return MoldLabel.UNIPOTENT_F2
    return MoldLabel.UNIPOTENT


def air_witness(t: RepTuple) -> Optional[tuple[str, tuple[int, ...], FieldElement]]:
    """First nonvanishing discriminant witnessing full matrix algebra.

    Returns ("delta", (i, j), value) for a generator pair or
    ("tau", (i, j, k), value) for a generator triple, or None.
    """
    gens = t.gens
    for i, j in combinations(range(1, len(gens) + 1), 2):
        v = delta2(gens[i - 1], gens[j - 1])
        if v:
            return ("delta", (i, j), v)
    for i, j, k in combinations(range(1, len(gens) + 1), 3):
        v = tau3(gens[i - 1], gens[j - 1], gens[k - 1])
        if v:
            return ("tau", (i, j, k), v)
    return None


def air_by_discriminants(t: RepTuple) -> bool:
    """True iff some generator pair has delta2 != 0 or some triple tau3 != 0.

    In group mode the product-pair variant delta2(A_i A_j, A_k) is also
    evaluated and must agree with the tau criterion.
    """
    result = air_witness(t) is not None
    if t.mode == GROUP:
        for g in t.gens:
            if not g.det:
                raise NonInvertibleGenerator("product-pair air test needs invertible generators")
        variant = any(delta2(t.gens[i - 1], t.gens[j - 1])
                      for i, j in combinations(range(1, len(t.gens) + 1), 2))
        if not variant:
            variant = any(delta2(t.gens[i - 1] * t.gens[j - 1], t.gens[k - 1])
                          for i, j, k in combinations(range(1, len(t.gens) + 1), 3))
        if variant != result:
            raise RuntimeError("group-mode air criteria disagree; this is a bug")
    return result


def _sqrt_mod(a: int, p: int) -> Optional[int]:
    """A square root of a mod p, or None (Tonelli-Shanks; p prime)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks for p = 1 mod 4.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sqrt_in_field(x: FieldElement) -> Optional[FieldElement]:
    spec = x.spec
    if spec.p is not None:
        r = _sqrt_mod(x.value, spec.p)
        return None if r is None else spec.element(r)
    f = x.value
    if f < 0:
        return None
    num, den = math.isqrt(f.numerator), math.isqrt(f.denominator)
    if num * num == f.numerator and den * den == f.denominator:
        from fractions import Fraction

        return spec.element(Fraction(num, den))
    return None


def _eigenlines(A: Mat2) -> list[tuple[FieldElement, FieldElement]]:
    """Base-field eigenlines of a non-scalar A, canonically scaled."""
    spec = A.spec
    lines: list[tuple[FieldElement, FieldElement]] = []
    if spec.characteristic() == 2 and spec.p == 2:
        candidates = [spec.element(0), spec.element(1)]
        eigenvalues = [lam for lam in candidates
                       if lam * lam - A.tr * lam + A.det == lam.spec.zero()]
    else:
        s = _sqrt_in_field(A.m)
        if s is None:
            return []
        two_inv = spec.element(2).inv()
        lam1, lam2 = (A.tr + s) * two_inv, (A.tr - s) * two_inv
        eigenvalues = [lam1] if lam1 == lam2 else sorted([lam1, lam2], key=lambda e: e.value)
    for lam in eigenvalues:
        M11, M12 = A.a11 - lam, A.a12
        M21, M22 = A.a21, A.a22 - lam
        if M11 or M12:
            v = (M12, -M11)
        elif M21 or M22:
            v = (M22, -M21)
        else:
            continue  # A = lam I, excluded for non-scalar A
        scale = (v[0] if v[0] else v[1]).inv()
        line = (scale * v[0], scale * v[1])
        if line not in lines:
            lines.append(line)
    return lines


def common_invariant_line(t: RepTuple) -> Optional[tuple[FieldElement, FieldElement]]:
    """A line of the base plane fixed by every generator, if one exists.

    Candidates are the eigenlines of the first non-scalar element of the
    closure basis; a line invariant under the whole tuple must be one of
    them.  For an all-scalar tuple every line works and (1, 0) is returned.
    """
    closure = span_closure(t)
    pivot = next((X for X in closure.basis if not X.is_scalar), None)
    spec = t.spec
    if pivot is None:
        return (spec.one(), spec.zero())
    for line in _eigenlines(pivot):
        ok = True
        for g in t.gens:
            w = (g.a11 * line[0] + g.a12 * line[1], g.a21 * line[0] + g.a22 * line[1])
            if w[0] * line[1] - w[1] * line[0]:
                ok = False
                break
        if ok:
            return line
    return None
