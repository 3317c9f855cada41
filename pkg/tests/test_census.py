"""Census: packed classifier vs exact classifier, counts, orbits, caching."""

import json
from itertools import product

import pytest

from moldkit import Mat2, MoldLabel, RepTuple, classify
from moldkit.census import (
    CensusKey,
    classify_packed,
    consistency_report,
    field_tables,
    orbit_census,
    stratum_census,
)
from moldkit.errors import BudgetExceeded

from conftest import F2, F3, F5


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MOLDKIT_CACHE", str(tmp_path / "cache"))


def lift(T, idx, spec):
    return Mat2.from_rows([T.entries[idx][:2], T.entries[idx][2:]], spec)


def test_classify_packed_agrees_with_exact():
    for spec in (F2, F3):
        T = field_tables(spec.p)
        for i in range(T.n):
            assert classify_packed(T, (i,)) is classify(RepTuple((lift(T, i, spec),)))
        for i in range(T.n):
            for j in range(T.n):
                expected = classify(RepTuple((lift(T, i, spec), lift(T, j, spec))))
                assert classify_packed(T, (i, j)) is expected


def test_packed_invariant_vector_agrees_with_exact(rng):
    from moldkit import invariant_vector
    from moldkit.census import _invariant_vector_packed

    T = field_tables(3)
    for mode in ("monoid", "group"):
        pool = T.invertible if mode == "group" else list(range(T.n))
        for _ in range(200):
            idxs = (rng.choice(pool), rng.choice(pool))
            dets, traces = _invariant_vector_packed(T, idxs, mode)
            t = RepTuple(tuple(lift(T, i, F3) for i in idxs), mode)
            vec = invariant_vector(t)
            assert dets == tuple(d.value for d in vec.dets)
            assert traces == tuple(v.value for _, v in vec.traces)


def test_classify_packed_agrees_with_exact_f5_sampled(rng):
    T = field_tables(5)
    for _ in range(400):
        i, j = rng.randrange(T.n), rng.randrange(T.n)
        expected = classify(RepTuple((lift(T, i, F5), lift(T, j, F5))))
        assert classify_packed(T, (i, j)) is expected
    for _ in range(100):
        i, j, k = (rng.randrange(T.n) for _ in range(3))
        expected = classify(RepTuple((lift(T, i, F5), lift(T, j, F5), lift(T, k, F5))))
        assert classify_packed(T, (i, j, k)) is expected


def test_stratum_census_pinned_counts():
    r = stratum_census(CensusKey(2, 1))
    assert r.points_by_value() == {
        "air": 0, "borel": 0, "semi_simple": 8,
        "unipotent": 0, "unipotent_f2": 6, "scalar": 2,
    }
    assert r.total == 16
    r = stratum_census(CensusKey(3, 1))
    assert r.points[MoldLabel.SCALAR] == 3
    assert r.points[MoldLabel.SEMISIMPLE] == 54
    assert r.points[MoldLabel.UNIPOTENT] == 24
    assert sum(r.points.values()) == 81


def test_stratum_census_group_mode():
    r = stratum_census(CensusKey(2, 1, "group"))
    assert sum(r.points.values()) == 6
    assert r.total == 6
    assert r.points[MoldLabel.SCALAR] == 1
    assert r.points[MoldLabel.SEMISIMPLE] == 2
    assert r.points[MoldLabel.UNIPOTENT_F2] == 3
    r2 = stratum_census(CensusKey(3, 2, "group"))
    assert sum(r2.points.values()) == 48 * 48 == r2.total


def test_orbit_census_examples():
    r = orbit_census(CensusKey(3, 1))
    assert r.orbits[MoldLabel.UNIPOTENT] == 3
    r = orbit_census(CensusKey(2, 1))
    assert r.orbits[MoldLabel.UNIPOTENT_F2] == 2
    assert r.orbits[MoldLabel.SCALAR] == 2
    assert r.orbit_size_counts[MoldLabel.SCALAR] == {1: 2}


def test_orbit_sizes_divide_pgl_order():
    for key in (CensusKey(2, 2), CensusKey(3, 1), CensusKey(3, 2, "group")):
        r = orbit_census(key)
        pgl = key.q**3 - key.q
        for label in MoldLabel:
            for size, count in r.orbit_size_counts[label].items():
                assert pgl % size == 0
                assert count > 0
        assert sum(r.points.values()) == r.total


def test_air_orbits_are_free():
    for key in (CensusKey(2, 2), CensusKey(2, 3), CensusKey(3, 2)):
        r = orbit_census(key)
        sizes = r.orbit_size_counts[MoldLabel.AIR]
        assert set(sizes) == {key.q**3 - key.q}


def test_orbit_census_invariant_under_generator_permutation():
    key = CensusKey(2, 2)
    r = orbit_census(key)
    T = field_tables(2)
    perms = T.pgl_perms()
    # Recount orbits with the reversed tuple order; the relabelled space
    # has the same orbit structure.
    seen = set()
    counts = {label: 0 for label in MoldLabel}
    for idxs in product(range(T.n), repeat=2):
        rev = idxs[::-1]
        orbit = frozenset(tuple(p[i] for i in rev) for p in perms)
        if orbit in seen:
            continue
        seen.add(orbit)
        counts[classify_packed(T, rev)] += 1
    for label in MoldLabel:
        assert counts[label] == r.orbits[label]


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        stratum_census(CensusKey(5, 3))
    with pytest.raises(BudgetExceeded):
        orbit_census(CensusKey(3, 2), budget=100)


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("MOLDKIT_CACHE", str(tmp_path / "c2"))
    key = CensusKey(3, 1)
    first = orbit_census(key)
    path = tmp_path / "c2" / "census_q3_m1_monoid.json"
    assert path.exists()
    second = orbit_census(key)
    assert second.points == first.points
    assert second.orbits == first.orbits
    assert second.orbit_size_counts == first.orbit_size_counts

    # Corrupted payloads are ignored, not trusted.
    body = json.loads(path.read_text())
    body["points"]["air"] = 999
    path.write_text(json.dumps(body))
    third = orbit_census(key)
    assert third.points == first.points

    # Version mismatches invalidate the record.
    body = json.loads(path.read_text())
    body["version"] = "0.0.0"
    path.write_text(json.dumps(body))
    fourth = orbit_census(key)
    assert fourth.points == first.points


def test_points_only_cache_upgraded_by_orbit_census(tmp_path, monkeypatch):
    monkeypatch.setenv("MOLDKIT_CACHE", str(tmp_path / "c3"))
    key = CensusKey(2, 2)
    pts = stratum_census(key)
    assert pts.orbits is None
    orb = orbit_census(key)
    assert orb.orbits is not None
    assert orb.points == pts.points
    again = stratum_census(key)
    assert again.points == pts.points


def test_consistency_report_passes():
    for key in (CensusKey(2, 1), CensusKey(2, 2), CensusKey(3, 1),
                CensusKey(3, 2), CensusKey(5, 1), CensusKey(3, 1, "group")):
        rep = consistency_report(key)
        assert rep.passed, [c for c in rep.checks if not c.passed]
        assert all(c.source for c in rep.checks)
        names = [c.name for c in rep.checks]
        assert "partition" in names and "air_orbit_sizes" in names
