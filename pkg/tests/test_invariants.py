"""Discriminants, trace identities, invariant vectors and closed formulas."""

from fractions import Fraction
from itertools import product

import pytest

from moldkit import (
    Mat2,
    RepTuple,
    Word,
    delta2,
    delta4,
    det_from_traces,
    invariant_vector,
    m_power_closed,
    reconstruct_from_traces,
    tau3,
    trace_word,
)
from moldkit.errors import VanishingM

from conftest import (
    F2,
    F3,
    F5,
    Q,
    all_mats,
    det4_oracle,
    invertible_mats,
    rand_invertible,
    rand_mat,
)

E_PAIR = (Mat2.from_rows([[1, 1], [0, 1]], Q), Mat2.from_rows([[1, 0], [1, 1]], Q))


def test_delta2_examples(rng):
    A, B = E_PAIR
    assert delta2(A, B) == Q.one()
    for _ in range(50):
        M = rand_mat(rng, Q)
        assert not delta2(M, Mat2.identity(Q))
    assert delta2(Mat2.from_rows([[1, 0], [0, 2]], Q),
                  Mat2.from_rows([[0, 1], [1, 0]], Q)) == Q.element(-1)


def test_delta2_symmetry_and_delta4_identity(rng):
    mats2 = all_mats(F2)
    for A in mats2:
        for B in mats2:
            assert delta2(A, B) == delta2(B, A)
            assert delta2(A, B) == -delta4(Mat2.identity(F2), A, B, A * B)
    for spec in (F5, Q):
        for _ in range(300):
            A, B = rand_mat(rng, spec), rand_mat(rng, spec)
            assert delta2(A, B) == delta2(B, A)
            assert delta2(A, B) == -delta4(Mat2.identity(spec), A, B, A * B)


def test_delta2_commutator_formula(rng):
    # delta2(A, B) = det A det B tr(A B A^-1 B^-1 - I) for invertible A, B.
    def check(A, B):
        comm = A * B * A.inverse() * B.inverse() - Mat2.identity(A.spec)
        assert delta2(A, B) == A.det * B.det * comm.tr

    for spec in (F2, F3):
        invs = invertible_mats(spec)
        for A in invs:
            for B in invs:
                check(A, B)
    for spec in (F5, Q):
        for _ in range(300):
            check(rand_invertible(rng, spec), rand_invertible(rng, spec))


def test_tau3_examples():
    A = Mat2.from_rows([[1, 0], [0, 2]], Q)
    B = Mat2.from_rows([[1, 0], [1, 2]], Q)
    C = Mat2.from_rows([[2, 1], [0, 1]], Q)
    assert (A * B * C).tr == Q.element(8)
    assert (A * C * B).tr == Q.element(7)
    assert tau3(A, B, C) == Q.one()
    assert not tau3(A, B, B)
    assert not tau3(Mat2.identity(Q), B, C)


def test_tau3_properties(rng):
    mats2 = all_mats(F2)
    for A in mats2[:8]:
        for B in mats2:
            for C in mats2:
                assert tau3(A, B, C) == -tau3(A, C, B)
    for spec in (F5, Q):
        for _ in range(200):
            A, B, C = (rand_mat(rng, spec) for _ in range(3))
            assert tau3(A, B, C) == -tau3(A, C, B)
            # Degree-3 polynomial expression in traces.
            poly = (2 * (A * B * C).tr - A.tr * (B * C).tr - B.tr * (C * A).tr
                    - C.tr * (A * B).tr + A.tr * B.tr * C.tr)
            assert tau3(A, B, C) == poly
            # tau is the 4x4 discriminant against the identity slot.
            assert tau3(A, B, C) == delta4(A, B, C, Mat2.identity(spec))


def test_delta4_examples(rng):
    I = Mat2.identity(Q)
    E12 = Mat2.from_rows([[0, 1], [0, 0]], Q)
    E21 = Mat2.from_rows([[0, 0], [1, 0]], Q)
    E22 = Mat2.from_rows([[0, 0], [0, 1]], Q)
    v = delta4(I, E12, E21, E22)
    assert v == det4_oracle([M.entries() for M in (I, E12, E21, E22)])
    assert v.value in (1, -1)
    A, B = E_PAIR
    assert delta4(I, A, B, A * B) == Q.element(-1)
    assert not delta4(I, I, E12, E21)
    for _ in range(100):
        ms = [rand_mat(rng, Q) for _ in range(4)]
        assert delta4(*ms) == det4_oracle([M.entries() for M in ms])


def test_trace_word_examples():
    t = RepTuple((Mat2.from_rows([[1, 0], [0, 2]], Q), Mat2.from_rows([[3, 0], [0, 4]], Q)))
    assert trace_word(t, Word(())) == Q.element(2)
    assert trace_word(t, Word((1, 2))) == Q.element(11)
    tg = RepTuple((Mat2.from_rows([[1, 0], [0, 2]], Q),), mode="group")
    assert trace_word(tg, Word((-1,))) == Q.element(Fraction(3, 2))


def test_invariant_vector_examples():
    t = RepTuple((Mat2.from_rows([[1, 0], [0, 2]], Q), Mat2.from_rows([[3, 0], [0, 4]], Q)))
    vec = invariant_vector(t)
    assert [d.value for d in vec.dets] == [2, 12]
    tm = vec.trace_map()
    assert tm[(1,)].value == 3 and tm[(2,)].value == 7 and tm[(1, 2)].value == 11
    assert len(vec.traces) == 3

    ones = RepTuple((Mat2.identity(Q), Mat2.identity(Q)))
    v1 = invariant_vector(ones)
    assert all(d == Q.one() for d in v1.dets)
    assert all(v == Q.element(2) for _, v in v1.traces)

    comp = RepTuple((Mat2.from_rows([[0, -7], [1, 5]], Q),))
    vc = invariant_vector(comp)
    assert [d.value for d in vc.dets] == [7]
    assert vc.trace_map()[(1,)].value == 5


def test_invariant_vector_group_mode_augments():
    t = RepTuple((Mat2.from_rows([[1, 0], [0, 2]], Q),), mode="group")
    vec = invariant_vector(t)
    assert len(vec.dets) == 2
    assert len(vec.traces) == 3
    assert vec.dets[1] == Q.element(Fraction(1, 2))
    assert vec.trace_map()[(2,)] == Q.element(Fraction(3, 2))


def test_invariant_vector_conjugation_invariant(rng):
    from moldkit import conjugate

    for spec in (F3, Q):
        for _ in range(50):
            t = RepTuple((rand_mat(rng, spec), rand_mat(rng, spec)))
            P = rand_invertible(rng, spec)
            assert invariant_vector(t) == invariant_vector(t.conjugated(P))


def test_det_from_traces(rng):
    assert det_from_traces(Q.element(3), Q.element(5), Q.element(9)) == Q.element(2)
    assert det_from_traces(Q.element(0), Q.element(2), Q.element(0)) == Q.element(-1)
    with pytest.raises(VanishingM):
        det_from_traces(Q.element(2), Q.element(2), Q.element(2))
    for spec in (F5, Q):
        for _ in range(200):
            A = rand_mat(rng, spec)
            if not A.m:
                continue
            t1, t2, t3 = A.tr, (A * A).tr, (A * A * A).tr
            assert det_from_traces(t1, t2, t3) == A.det


def test_reconstruct_from_traces(rng):
    A = Mat2.from_rows([[1, 0], [0, 2]], Q)
    assert reconstruct_from_traces(A, Q.element(3), Q.element(5)) == A
    assert reconstruct_from_traces(A, Q.element(2), A.tr) == Mat2.identity(Q)
    with pytest.raises(VanishingM):
        reconstruct_from_traces(Mat2.identity(Q), Q.element(2), Q.element(2))
    for spec in (F5, Q):
        for _ in range(200):
            A = rand_mat(rng, spec)
            if not A.m:
                continue
            x, y = spec.element(rng.randint(-9, 9)), spec.element(rng.randint(-9, 9))
            X = Mat2.identity(spec).scale(x) + A.scale(y)
            assert reconstruct_from_traces(A, X.tr, (A * X).tr) == X


def test_m_power_closed(rng):
    A = Mat2.from_rows([[1, 1], [0, 2]], Q)
    assert m_power_closed(A, 1) == A.m
    assert m_power_closed(A, 2) == Q.element(9)
    nil = Mat2.from_rows([[1, 1], [0, 1]], Q)
    for n in range(1, 9):
        assert not m_power_closed(nil, n)
    for spec in (F2, F3):
        for A in all_mats(spec):
            for n in range(1, 9):
                assert m_power_closed(A, n) == A.pow(n).m
    for spec in (F5, Q):
        for _ in range(100):
            A = rand_mat(rng, spec, span=4)
            for n in range(1, 9):
                assert m_power_closed(A, n) == A.pow(n).m


def test_m_of_inverse(rng):
    # m(A^-1) = m(A) det(A)^-2 for invertible A.
    for spec in (F2, F3):
        for A in invertible_mats(spec):
            assert A.inverse().m == A.m * (A.det.inv() ** 2)
    for spec in (F5, Q):
        for _ in range(200):
            A = rand_invertible(rng, spec)
            assert A.inverse().m == A.m * (A.det.inv() ** 2)


def test_trace_identities(rng):
    # tr(X^2 Y) = tr X tr(XY) - det X tr Y
    # tr(XYZ) = -tr(XZY) + tr X tr(YZ) + tr Y tr(ZX) + tr Z tr(YX) - tr X tr Y tr Z
    def check(X, Y, Z):
        assert (X * X * Y).tr == X.tr * (X * Y).tr - X.det * Y.tr
        lhs = (X * Y * Z).tr
        rhs = (-(X * Z * Y).tr + X.tr * (Y * Z).tr + Y.tr * (Z * X).tr
               + Z.tr * (Y * X).tr - X.tr * Y.tr * Z.tr)
        assert lhs == rhs

    mats2 = all_mats(F2)
    for X, Y, Z in product(mats2[:8], mats2[:8], mats2):
        check(X, Y, Z)
    for X in mats2:
        for Y in mats2:
            check(X, Y, Mat2.from_rows([[1, 1], [0, 1]], F2))
    for spec in (F5, Q):
        for _ in range(300):
            check(rand_mat(rng, spec), rand_mat(rng, spec), rand_mat(rng, spec))
