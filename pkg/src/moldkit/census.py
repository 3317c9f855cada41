"""Exhaustive census of tuple spaces over small prime fields.

Tuples of 2x2 matrices over F_q are enumerated, classified into the six
mold strata and partitioned into conjugation orbits.  The hot path works
on packed integer encodings (a matrix is an index below q^4); tests pin
it against the exact classifier in :mod:`moldkit.mold`.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Optional

from .errors import BudgetExceeded
from .fields import is_prime
from .mold import MoldLabel

__version__ = "0.1.0"

DEFAULT_BUDGET = 10_000_000

MONOID = "monoid"
GROUP = "group"

_LABEL_ORDER = (
    MoldLabel.AIR,
    MoldLabel.BOREL,
    MoldLabel.SEMISIMPLE,
    MoldLabel.UNIPOTENT,
    MoldLabel.UNIPOTENT_F2,
    MoldLabel.SCALAR,
)


@dataclass(frozen=True, slots=True)
class CensusKey:
    q: int
    m: int
    mode: str = MONOID

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"census field size must be prime, got {self.q}")
        if self.m < 1:
            raise ValueError("rank must be >= 1")
        if self.mode not in (MONOID, GROUP):
            raise ValueError(f"mode must be 'monoid' or 'group', got {self.mode!r}")


@dataclass
class StratumCounts:
    """Per-label point counts, and orbit data when an orbit census ran."""

    key: CensusKey
    points: dict[MoldLabel, int]
    total: int
    orbits: Optional[dict[MoldLabel, int]] = None
    orbit_size_counts: Optional[dict[MoldLabel, dict[int, int]]] = None

    def points_by_value(self) -> dict[str, int]:
        return {label.value: self.points[label] for label in _LABEL_ORDER}

    def orbits_by_value(self) -> Optional[dict[str, int]]:
        if self.orbits is None:
            return None
        return {label.value: self.orbits[label] for label in _LABEL_ORDER}


class FieldTables:
    """Packed-integer tables for M_2(F_p): index = ((a*p + b)*p + c)*p + d."""

    def __init__(self, p: int):
        self.p = p
        self.n = p**4
        entries = []
        for a in range(p):
            for b in range(p):
                for c in range(p):
                    for d in range(p):
                        entries.append((a, b, c, d))
        self.entries = entries
        self.tr = [(a + d) % p for (a, b, c, d) in entries]
        self.det = [(a * d - b * c) % p for (a, b, c, d) in entries]
        self.m = [(self.tr[i] ** 2 - 4 * self.det[i]) % p for i in range(self.n)]
        self.scalar = [b == 0 and c == 0 and a == d for (a, b, c, d) in entries]
        self.invertible = [i for i in range(self.n) if self.det[i]]
        self.inv_idx = {i: self._pack(self._inv(entries[i])) for i in self.invertible}
        self._pgl_perms: Optional[list[list[int]]] = None

    def _pack(self, e: tuple[int, int, int, int]) -> int:
        a, b, c, d = e
        return ((a * self.p + b) * self.p + c) * self.p + d

    def _inv(self, e):
        a, b, c, d = e
        p = self.p
        di = pow((a * d - b * c) % p, p - 2, p)
        return (d * di % p, (-b) * di % p, (-c) * di % p, a * di % p)

    def mul(self, e1, e2):
        a, b, c, d = e1
        e, f, g, h = e2
        p = self.p
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)

    def tr_mul(self, e1, e2) -> int:
        a, b, c, d = e1
        e, f, g, h = e2
        return (a * e + b * g + c * f + d * h) % self.p

    def pgl_perms(self) -> list[list[int]]:
        """Conjugation permutation of the matrix index space, one per
        element of PGL_2(F_p) (invertible matrices with first nonzero
        entry scaled to 1, in index order)."""
        if self._pgl_perms is not None:
            return self._pgl_perms
        p = self.p
        reps = set()
        for i in self.invertible:
            e = self.entries[i]
            lead = next(x for x in e if x)
            s = pow(lead, p - 2, p)
            reps.add(self._pack(tuple(x * s % p for x in e)))
        perms = []
        for r in sorted(reps):
            g = self.entries[r]
            gi = self._inv(g)
            perm = [self._pack(self.mul(self.mul(gi, self.entries[i]), g))
                    for i in range(self.n)]
            perms.append(perm)
        self._pgl_perms = perms
        return perms


_TABLES: dict[int, FieldTables] = {}


def field_tables(p: int) -> FieldTables:
    if p not in _TABLES:
        _TABLES[p] = FieldTables(p)
    return _TABLES[p]


def _delta2_int(T: FieldTables, i: int, j: int) -> int:
    trA, trB = T.tr[i], T.tr[j]
    dA, dB = T.det[i], T.det[j]
    trAB = T.tr_mul(T.entries[i], T.entries[j])
    return (trA * trA * dB + trB * trB * dA + trAB * trAB
            - trA * trB * trAB - 4 * dA * dB) % T.p


def _tau3_int(T: FieldTables, i: int, j: int, k: int) -> int:
    ei, ej, ek = T.entries[i], T.entries[j], T.entries[k]
    return (T.tr_mul(T.mul(ei, ej), ek) - T.tr_mul(T.mul(ei, ek), ej)) % T.p


def classify_packed(T: FieldTables, idxs: tuple[int, ...]) -> MoldLabel:
    """Mold label of a packed tuple; agrees with mold.classify."""
    n = len(idxs)
    for a, b in combinations(range(n), 2):
        if _delta2_int(T, idxs[a], idxs[b]):
            return MoldLabel.AIR
    if n >= 3:
        for a, b, c in combinations(range(n), 3):
            if _tau3_int(T, idxs[a], idxs[b], idxs[c]):
                return MoldLabel.AIR
    pivot = next((i for i in idxs if not T.scalar[i]), None)
    if pivot is None:
        return MoldLabel.SCALAR
    pa, pb, pc, pd = T.entries[pivot]
    u = ((pa - pd) % T.p, pb, pc)
    rank2 = True
    for i in idxs:
        a, b, c, d = T.entries[i]
        v = ((a - d) % T.p, b, c)
        if ((u[0] * v[1] - u[1] * v[0]) % T.p or (u[0] * v[2] - u[2] * v[0]) % T.p
                or (u[1] * v[2] - u[2] * v[1]) % T.p):
            rank2 = False
            break
    if rank2:
        if any(T.m[i] for i in idxs):
            return MoldLabel.SEMISIMPLE
        return MoldLabel.UNIPOTENT_F2 if T.p == 2 else MoldLabel.UNIPOTENT
    return MoldLabel.BOREL


def _matrix_indices(T: FieldTables, mode: str) -> list[int]:
    return T.invertible if mode == GROUP else list(range(T.n))


def _check_budget(key: CensusKey, budget: int) -> None:
    if key.q ** (4 * key.m) > budget:
        raise BudgetExceeded(
            f"census space q^(4m) = {key.q ** (4 * key.m)} exceeds budget {budget}")


def _space_size(key: CensusKey) -> int:
    if key.mode == GROUP:
        return ((key.q**2 - 1) * (key.q**2 - key.q)) ** key.m
    return key.q ** (4 * key.m)


def stratum_census(key: CensusKey, budget: int = DEFAULT_BUDGET,
                   use_cache: bool = True) -> StratumCounts:
    """Classify every tuple of the space and count points per label."""
    cached = _load_cache(key) if use_cache else None
    if cached is not None:
        return _counts_from_payload(key, cached)
    _check_budget(key, budget)
    T = field_tables(key.q)
    counts = {label: 0 for label in _LABEL_ORDER}
    idx_range = _matrix_indices(T, key.mode)
    for idxs in product(idx_range, repeat=key.m):
        counts[classify_packed(T, idxs)] += 1
    result = StratumCounts(key=key, points=counts, total=_space_size(key))
    if use_cache:
        _store_cache(key, result)
    return result


def orbit_census(key: CensusKey, budget: int = DEFAULT_BUDGET,
                 use_cache: bool = True) -> StratumCounts:
    """Partition every stratum into conjugation orbits.

    Tuples are visited in lexicographic order; an unvisited tuple is the
    canonical (least) representative of its orbit, which is then expanded
    through all conjugation permutations at once.
    """
    cached = _load_cache(key) if use_cache else None
    if cached is not None and cached.get("orbits") is not None:
        return _counts_from_payload(key, cached)
    _check_budget(key, budget)
    T = field_tables(key.q)
    perms = T.pgl_perms()
    m = key.m
    n = T.n
    idx_range = _matrix_indices(T, key.mode)
    visited = bytearray(n**m)
    points = {label: 0 for label in _LABEL_ORDER}
    orbits = {label: 0 for label in _LABEL_ORDER}
    size_counts: dict[MoldLabel, dict[int, int]] = {label: {} for label in _LABEL_ORDER}
    for idxs in product(idx_range, repeat=m):
        flat = 0
        for i in idxs:
            flat = flat * n + i
        if visited[flat]:
            continue
        orbit = set()
        for perm in perms:
            img = tuple(perm[i] for i in idxs)
            f = 0
            for i in img:
                f = f * n + i
            if f not in orbit:
                orbit.add(f)
                visited[f] = 1
        label = classify_packed(T, idxs)
        size = len(orbit)
        points[label] += size
        orbits[label] += 1
        size_counts[label][size] = size_counts[label].get(size, 0) + 1
    result = StratumCounts(key=key, points=points, total=_space_size(key),
                           orbits=orbits, orbit_size_counts=size_counts)
    if use_cache:
        _store_cache(key, result)
    return result


def _invariant_vector_packed(T: FieldTables, idxs: tuple[int, ...], mode: str):
    """(dets, increasing-product traces) over packed matrices; in group
    mode the tuple is augmented with the inverses first."""
    mats = [T.entries[i] for i in idxs]
    if mode == GROUP:
        mats += [T.entries[T.inv_idx[i]] for i in idxs]
    dets = tuple((e[0] * e[3] - e[1] * e[2]) % T.p for e in mats)
    traces = []
    for sub in sorted(c for k in range(1, len(mats) + 1)
                      for c in combinations(range(len(mats)), k)):
        acc = mats[sub[0]]
        for i in sub[1:]:
            acc = T.mul(acc, mats[i])
        traces.append((acc[0] + acc[3]) % T.p)
    return dets, tuple(traces)


@dataclass(frozen=True)
class CheckResult:
    name: str
    source: str
    expected: object
    actual: object
    passed: bool


@dataclass
class Report:
    key: CensusKey
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def consistency_report(key: CensusKey, budget: int = DEFAULT_BUDGET,
                       use_cache: bool = True) -> Report:
    """Pass/fail checks tying the census to the structural theory."""
    counts = orbit_census(key, budget=budget, use_cache=use_cache)
    q, m = key.q, key.m
    pgl_order = q**3 - q
    checks: list[CheckResult] = []

    checks.append(CheckResult(
        name="partition",
        source="the tuple space is the disjoint union of the six strata",
        expected=_space_size(key),
        actual=sum(counts.points.values()),
        passed=sum(counts.points.values()) == _space_size(key),
    ))

    air_points = counts.points[MoldLabel.AIR]
    checks.append(CheckResult(
        name="air_divisibility",
        source="conjugation acts freely on the full-algebra stratum",
        expected=0,
        actual=air_points % pgl_order,
        passed=air_points % pgl_order == 0,
    ))

    air_sizes = counts.orbit_size_counts[MoldLabel.AIR]
    bad_air = {s: c for s, c in air_sizes.items() if s != pgl_order}
    checks.append(CheckResult(
        name="air_orbit_sizes",
        source="every full-algebra orbit is a free orbit of size q^3 - q",
        expected={pgl_order: counts.orbits[MoldLabel.AIR]},
        actual=dict(sorted(air_sizes.items())),
        passed=not bad_air,
    ))

    T = field_tables(q)
    vectors = set()
    idx_range = _matrix_indices(T, key.mode)
    for idxs in product(idx_range, repeat=m):
        if classify_packed(T, idxs) is MoldLabel.SEMISIMPLE:
            vectors.add(_invariant_vector_packed(T, idxs, key.mode))
    checks.append(CheckResult(
        name="semisimple_trace_separation",
        source="trace coordinates separate semi-simple orbits",
        expected=counts.orbits[MoldLabel.SEMISIMPLE],
        actual=len(vectors),
        passed=len(vectors) == counts.orbits[MoldLabel.SEMISIMPLE],
    ))

    if q % 2 == 1:
        if key.mode == GROUP:
            expected_u = (q - 1) ** m * (q**m - 1) // (q - 1)
            src = ("unipotent moduli is a projective (m-1)-space bundle over the "
                   "invertible character space")
        else:
            expected_u = q**m * (q**m - 1) // (q - 1)
            src = ("unipotent moduli is a projective (m-1)-space bundle over the "
                   "character space")
        actual_u = counts.orbits[MoldLabel.UNIPOTENT]
        checks.append(CheckResult(
            name="unipotent_orbit_count",
            source=src,
            expected=expected_u,
            actual=actual_u,
            passed=actual_u == expected_u,
        ))

    expected_scalar = (q - 1) ** m if key.mode == GROUP else q**m
    checks.append(CheckResult(
        name="scalar_orbits",
        source="conjugation fixes scalar tuples pointwise",
        expected=expected_scalar,
        actual=counts.orbits[MoldLabel.SCALAR],
        passed=(counts.orbits[MoldLabel.SCALAR] == expected_scalar
                and counts.points[MoldLabel.SCALAR] == expected_scalar),
    ))

    return Report(key=key, checks=checks)


# --- advisory on-disk cache -------------------------------------------------

def cache_dir() -> Path:
    return Path(os.environ.get("MOLDKIT_CACHE", ".moldkit-cache"))


def _cache_path(key: CensusKey) -> Path:
    return cache_dir() / f"census_q{key.q}_m{key.m}_{key.mode}.json"


def _payload_body(result: StratumCounts) -> dict:
    body = {
        "version": __version__,
        "key": {"q": result.key.q, "m": result.key.m, "mode": result.key.mode},
        "points": result.points_by_value(),
        "total": result.total,
        "orbits": result.orbits_by_value(),
        "orbit_size_counts": None,
    }
    if result.orbit_size_counts is not None:
        body["orbit_size_counts"] = {
            label.value: {str(s): c for s, c in sorted(result.orbit_size_counts[label].items())}
            for label in _LABEL_ORDER
        }
    return body


def _checksum(body: dict) -> str:
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()


def _store_cache(key: CensusKey, result: StratumCounts) -> None:
    try:
        body = _payload_body(result)
        body["checksum"] = _checksum({k: v for k, v in body.items() if k != "checksum"})
        path = _cache_path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(body, sort_keys=True, indent=1) + "\n")
    except OSError:
        pass  # cache is advisory


def _load_cache(key: CensusKey) -> Optional[dict]:
    path = _cache_path(key)
    try:
        body = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if body.get("version") != __version__:
        return None
    checksum = body.pop("checksum", None)
    if checksum != _checksum(body):
        return None
    if body.get("key") != {"q": key.q, "m": key.m, "mode": key.mode}:
        return None
    return body


def _counts_from_payload(key: CensusKey, body: dict) -> StratumCounts:
    points = {label: body["points"][label.value] for label in _LABEL_ORDER}
    orbits = None
    size_counts = None
    if body.get("orbits") is not None:
        orbits = {label: body["orbits"][label.value] for label in _LABEL_ORDER}
    if body.get("orbit_size_counts") is not None:
        size_counts = {
            label: {int(s): c for s, c in body["orbit_size_counts"][label.value].items()}
            for label in _LABEL_ORDER
        }
    return StratumCounts(key=key, points=points, total=body["total"],
                         orbits=orbits, orbit_size_counts=size_counts)
