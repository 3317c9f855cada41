"""Equivalence deciders with certificates and the canonical decompositions
for the semi-simple, unipotent and characteristic-2 unipotent strata."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import linalg
from .errors import (
    CharNotTwo,
    CharTwo,
    ChartOverlapEmpty,
    NoSplitGenerator,
    NotScalar,
    NotSemiSimple,
    NotUnipotent,
    NotUnipotentF2,
)
from .fields import FieldElement
from .invariants import invariant_vector
from .mat2 import Mat2, companion_normalize, conjugate, eta
from .mold import MoldLabel, classify
from .words import RepTuple, Word


def intertwiner_basis(t1: RepTuple, t2: RepTuple) -> list[Mat2]:
    """Basis of the solution space {P : t1_i P = P t2_i for all i}."""
    spec = t1.spec
    z = spec.zero()
    rows: list[tuple[FieldElement, ...]] = []
    for A, B in zip(t1.gens, t2.gens):
        a, b, c, d = A.entries()
        e, f, g, h = B.entries()
        # Entries of A P - P B as linear forms in (p11, p12, p21, p22).
        rows.append((a - e, -g, b, z))
        rows.append((-f, a - h, z, b))
        rows.append((c, z, d - e, -g))
        rows.append((z, c, -f, d - h))
    return [Mat2(*v) for v in linalg.nullspace(rows, 4, spec)]


def _invertible_in_span(basis: list[Mat2], spec) -> Optional[Mat2]:
    """An invertible element of the span, or None if there is none.

    det restricts to a quadratic form on the span.  For tiny prime fields
    the span is enumerated; otherwise the basis vectors and their pairwise
    sums suffice in characteristic != 2 (polarization), a 3-dimensional
    intertwiner space never contains an invertible element, and a
    4-dimensional one contains I.
    """
    d = len(basis)
    if d == 0:
        return None
    if d == 4:
        return Mat2.identity(spec)
    if spec.p is not None and spec.p**d <= 4096:
        # Lexicographic coefficient search keeps certificates reproducible.
        coeffs = [spec.element(i) for i in range(spec.p)]
        stack = [[]]
        for _ in range(d):
            stack = [s + [c] for s in stack for c in coeffs]
        for s in stack:
            cand = Mat2.zero(spec)
            for c, B in zip(s, basis):
                cand = cand + B.scale(c)
            if cand.det:
                return cand
        return None
    candidates = list(basis)
    candidates += [basis[i] + basis[j] for i, j in combinations(range(d), 2)]
    for cand in candidates:
        if cand.det:
            return cand
    if d <= 2:
        return None  # det vanishes identically on the span (char != 2)
    if d == 3:
        return None  # P0 invertible would force dim in {1, 2, 4}
    raise RuntimeError("invertible-element search fell through; this is a bug")


def general_conjugator(t1: RepTuple, t2: RepTuple) -> Optional[Mat2]:
    """Invertible P with P^-1 t1_i P = t2_i for all i, or None.

    Decides membership in the same conjugation orbit over the base field;
    any returned certificate is re-verified by direct conjugation.
    """
    if len(t1.gens) != len(t2.gens):
        raise ValueError("tuples have different lengths")
    if t1.spec != t2.spec:
        raise ValueError("tuples over different fields")
    if t1.mode != t2.mode:
        raise ValueError("tuples in different modes")
    P = _invertible_in_span(intertwiner_basis(t1, t2), t1.spec)
    if P is None:
        return None
    for A, B in zip(t1.gens, t2.gens):
        if conjugate(P, A) != B:
            raise RuntimeError("intertwiner failed verification; this is a bug")
    return P


def _require_semisimple(t: RepTuple) -> None:
    if classify(t) is not MoldLabel.SEMISIMPLE:
        raise NotSemiSimple("tuple is not in the semi-simple stratum")


def ss_equivalent(t1: RepTuple, t2: RepTuple) -> bool:
    """Trace-coordinate equivalence test on the semi-simple stratum."""
    _require_semisimple(t1)
    _require_semisimple(t2)
    return invariant_vector(t1) == invariant_vector(t2)


def split_witness_word(t: RepTuple) -> Word:
    """First generator with m != 0, else the first increasing product.

    Deterministic: single generators in index order, then increasing index
    subsequences in lexicographic order.
    """
    for i, g in enumerate(t.gens, start=1):
        if g.m:
            return Word((i,))
    n = len(t.gens)
    for sub in sorted(c for k in range(2, n + 1) for c in combinations(range(1, n + 1), k)):
        w = Word(sub)
        if t.evaluate(w).m:
            return w
    raise NoSplitGenerator("no generator or increasing product has m != 0")


def ss_conjugator(t1: RepTuple, t2: RepTuple) -> Optional[Mat2]:
    """Conjugacy certificate on the semi-simple stratum via companion forms.

    Both tuples are normalized so the split word's image is in companion
    form; equal invariant vectors force the two normalizations to agree on
    every generator, so Q1 Q2^-1 conjugates t1 to t2.
    """
    _require_semisimple(t1)
    _require_semisimple(t2)
    w = split_witness_word(t1)
    if invariant_vector(t1) != invariant_vector(t2):
        return None
    Q1 = companion_normalize(t1.evaluate(w)).P
    Q2 = companion_normalize(t2.evaluate(w)).P
    P = Q1 * Q2.inverse()
    for A, B in zip(t1.gens, t2.gens):
        if conjugate(P, A) != B:
            raise RuntimeError("semi-simple certificate failed verification; this is a bug")
    return P


@dataclass(frozen=True)
class CharDeriv:
    """Character r = tr/2 and derivation d coordinatizing a unipotent tuple.

    d is normalized by d(alpha) = 1 at the chart generator alpha; values on
    arbitrary words are computed from the defining formulas on demand.
    """

    tup: RepTuple = field(repr=False)
    alpha_index: int
    eta_mat: Mat2

    def r(self, w: Word) -> FieldElement:
        return self.tup.evaluate(w).tr / self.tup.spec.element(2)

    def d(self, w: Word) -> FieldElement:
        E = eta(self.tup.evaluate(w))
        ref = self.eta_mat
        pos = next(i for i, x in enumerate(ref.entries()) if x)
        val = E.entries()[pos] / ref.entries()[pos]
        if ref.scale(val) != E:
            raise NotUnipotent("image is outside the chart span; tuple is not unipotent")
        return val


def unipotent_decompose(t: RepTuple) -> CharDeriv:
    """Character/derivation chart of a unipotent tuple (characteristic != 2)."""
    if t.spec.characteristic() == 2:
        raise CharTwo("unipotent charts over characteristic 2 use the (a, b) machinery")
    if classify(t) is not MoldLabel.UNIPOTENT:
        raise NotUnipotent("tuple is not in the unipotent stratum")
    alpha = next(i for i, g in enumerate(t.gens, start=1) if not eta(g).is_scalar)
    return CharDeriv(tup=t, alpha_index=alpha, eta_mat=eta(t.gens[alpha - 1]))


def unipotent_reconstruct(cd: CharDeriv, w: Word) -> Mat2:
    """r(w) I + d(w) eta(alpha); reproduces generator images exactly."""
    spec = cd.tup.spec
    return Mat2.identity(spec).scale(cd.r(w)) + cd.eta_mat.scale(cd.d(w))


@dataclass(frozen=True)
class ABChart:
    """(a, b)-coefficient chart of a characteristic-2 unipotent tuple.

    Coefficients satisfy rho(w) = a(w) I + b(w) Z with Z the image of the
    base word; d(w) = det rho(w).  A chart obtained by transition keeps a
    reference to its parent and evaluates through the gluing formulas.
    """

    tup: RepTuple = field(repr=False)
    base_word: Word
    Z: Mat2
    parent: Optional["ABChart"] = None

    @property
    def alpha_index(self) -> Optional[int]:
        if len(self.base_word) == 1 and self.base_word.letters[0] > 0:
            return self.base_word.letters[0]
        return None

    def d(self, w: Word) -> FieldElement:
        return self.tup.evaluate(w).det

    def _solve(self, w: Word) -> tuple[FieldElement, FieldElement]:
        M = self.tup.evaluate(w)
        I = Mat2.identity(self.tup.spec)
        sol = linalg.solve(list(zip(I.entries(), self.Z.entries())), M.entries())
        if sol is None:
            raise NotUnipotentF2("image is outside span{I, Z}; tuple is not unipotent over F2")
        return sol[0], sol[1]

    def a(self, w: Word) -> FieldElement:
        if self.parent is None:
            return self._solve(w)[0]
        pa, pb = self.parent.a, self.parent.b
        beta = self.base_word
        return pa(w) + pa(beta) * pb(beta).inv() * pb(w)

    def b(self, w: Word) -> FieldElement:
        if self.parent is None:
            return self._solve(w)[1]
        beta = self.base_word
        return self.parent.b(w) * self.parent.b(beta).inv()


def uf2_decompose(t: RepTuple) -> ABChart:
    """(a, b)-chart at the first non-scalar generator (characteristic 2)."""
    if t.spec.characteristic() != 2:
        raise CharNotTwo("(a, b)-charts are a characteristic-2 construction")
    if classify(t) is not MoldLabel.UNIPOTENT_F2:
        raise NotUnipotentF2("tuple is not in the characteristic-2 unipotent stratum")
    alpha = next(i for i, g in enumerate(t.gens, start=1) if not g.is_scalar)
    return ABChart(tup=t, base_word=Word((alpha,)), Z=t.gens[alpha - 1])


def uf2_reconstruct(ch: ABChart, w: Word) -> Mat2:
    """a(w) I + b(w) Z; det of the result equals d(w)."""
    spec = ch.tup.spec
    return Mat2.identity(spec).scale(ch.a(w)) + ch.Z.scale(ch.b(w))


def uf2_transition(ch: ABChart, beta_word: Word) -> ABChart:
    """Re-base the chart at beta; defined on the overlap b(beta) != 0.

    The new coefficients follow the gluing formulas
    b'(w) = b(w) b(beta)^-1 and a'(w) = a(w) + a(beta) b(beta)^-1 b(w).
    """
    if not ch.b(beta_word):
        raise ChartOverlapEmpty("b(beta) = 0: the chart overlap is empty")
    return ABChart(tup=ch.tup, base_word=beta_word, Z=ch.tup.evaluate(beta_word), parent=ch)


def scalar_decompose(t: RepTuple) -> list[FieldElement]:
    """Character values c_i with A_i = c_i I for a scalar tuple."""
    if classify(t) is not MoldLabel.SCALAR:
        raise NotScalar("tuple is not in the scalar stratum")
    return [g.a11 for g in t.gens]
