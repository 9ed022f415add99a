"""Bigraded Betti numbers of face rings via Hochster's formula.

beta^{-i,2j} is the sum over all j-element vertex subsets J of the rank
of reduced cohomology of the full subcomplex K_J in degree j - i - 1.
The scan runs over all 2^m subsets as bitmasks in contiguous ranges;
each subset's homology is computed independently and the (i, j, rank)
triples are merged by addition, so the result is identical for every
range split.

A subset whose restricted facets share a common vertex spans a cone and
is contractible; those subsets are skipped.  This shortcut is exact and
can be disabled (``cone_shortcut=False``) for cross-checking.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complexes import SimplicialComplex
from .errors import BoundExceeded
from .homology import _face_table

DEFAULT_GROUND_BOUND = 24


@dataclass(eq=False)
class BigradedBettiTable:
    """Sparse table of beta^{-i,2j} ranks keyed by (i, j)."""

    m: int
    entries: dict[tuple[int, int], int]
    d: int | None = None
    engine: str = "hochster"
    coeff: str = "rational"
    torsion_encountered: bool | None = None

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    def __eq__(self, other):
        if not isinstance(other, BigradedBettiTable):
            return NotImplemented
        return self.m == other.m and self.entries == other.entries

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total_rank(self) -> int:
        return sum(self.entries.values())

    def to_dict(self) -> dict:
        items = sorted(self.entries.items(), key=lambda kv: (kv[0][1] - kv[0][0], kv[0][0]))
        d = {
            "m": self.m,
            "engine": self.engine,
            "entries": [{"i": i, "j": j, "beta": b} for (i, j), b in items],
        }
        if self.d is not None:
            d["d"] = self.d
        if self.torsion_encountered is not None:
            d["torsion_encountered"] = self.torsion_encountered
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "BigradedBettiTable":
        entries = {(int(e["i"]), int(e["j"])): int(e["beta"]) for e in data["entries"]}
        return cls(
            m=int(data["m"]),
            entries=entries,
            d=data.get("d"),
            engine=data.get("engine", "hochster"),
            torsion_encountered=data.get("torsion_encountered"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render_text(self, d: int | None = None) -> str:
        """Grid with rows l = j - i from 1 to d-1 and columns i from 1 to
        m-d-1; the two corner entries are printed separately."""
        d = d if d is not None else self.d
        if d is None:
            raise ValueError("polytope dimension needed for the table layout")
        cols = max(self.m - d - 1, 0)
        width = max([3] + [len(str(v)) for v in self.entries.values()])
        lines = []
        header = "l\\i |" + "".join(f" {i:>{width}}" for i in range(1, cols + 1))
        lines.append(header)
        lines.append("-" * len(header))
        for l in range(1, d):
            row = "".join(f" {self.beta(i, i + l):>{width}}" for i in range(1, cols + 1))
            lines.append(f"{l:>3} |" + row)
        lines.append(f"beta(0, 0) = {self.beta(0, 0)}")
        lines.append(f"beta(-{self.m - d}, {2 * self.m}) = {self.beta(self.m - d, self.m)}")
        return "\n".join(lines)


@dataclass
class OrdinaryBettiVector:
    """Topological Betti numbers b^q of the moment-angle complex,
    aggregated from the bigraded table along q = 2j - i."""

    betti: dict[int, int]
    total_dim: int | None = None

    def b(self, q: int) -> int:
        return self.betti.get(q, 0)

    def to_dict(self) -> dict:
        return {str(q): v for q, v in sorted(self.betti.items())}


@dataclass
class HochsterSummand:
    """One cohomologically nontrivial full subcomplex: the subset and its
    reduced cohomology ranks by degree."""

    subset: tuple[int, ...]
    ranks: dict[int, int]

    def contributes(self) -> list[tuple[int, int, int]]:
        j = len(self.subset)
        return [(j - 1 - deg, j, r) for deg, r in sorted(self.ranks.items())]


def _check_bound(k: SimplicialComplex, bound: int):
    if k.m > bound:
        raise BoundExceeded(
            f"ground set has {k.m} vertices, above the bound {bound}; "
            "pass a larger bound explicitly to override"
        )


def _is_cone_mask(restr: np.ndarray) -> bool:
    """True when the restricted facets share a common vertex, i.e. the
    full subcomplex is a cone (hence contractible).  The test runs over
    the maximal restricted facets only; it never misreports a cone but
    may miss one (missed cones are simply computed honestly)."""
    u = np.unique(restr)
    if u[0] == 0:
        u = u[1:]
    if u.size == 0:
        return False
    contained = (u[:, None] & u[None, :]) == u[:, None]
    strict = contained & (u[:, None] != u[None, :])
    maximal = ~strict.any(axis=1)
    return bool(np.bitwise_and.reduce(u[maximal]) != 0)


def _scan(
    k: SimplicialComplex,
    lo: int,
    hi: int,
    integer: bool,
    cone_shortcut: bool,
    collect_summands: bool = False,
):
    ft = _face_table(k)
    fac = np.array(k.facet_masks() or (0,), dtype=np.int64)
    table: dict[tuple[int, int], int] = {}
    torsion_seen = False
    summands = []
    for jmask in range(lo, hi):
        restr = fac & jmask
        if cone_shortcut and _is_cone_mask(restr):
            continue
        ranks, torsion = ft.betti(jmask, integer=integer)
        if torsion:
            torsion_seen = True
        if not ranks:
            continue
        j = bin(jmask).count("1")
        for deg, r in ranks.items():
            key = (j - 1 - deg, j)
            table[key] = table.get(key, 0) + r
        if collect_summands:
            summands.append((jmask, ranks))
    return table, torsion_seen, summands


def bigraded_betti(
    k: SimplicialComplex,
    coeff: str = "rational",
    bound: int = DEFAULT_GROUND_BOUND,
    threads: int = 1,
    cone_shortcut: bool = True,
) -> BigradedBettiTable:
    """Bigraded Betti numbers of the face ring by direct summation of
    full-subcomplex cohomology over all vertex subsets."""
    if coeff not in ("rational", "integer"):
        raise ValueError(f"unsupported coefficients {coeff!r}")
    _check_bound(k, bound)
    integer = coeff == "integer"
    total = 1 << k.m
    threads = max(1, int(threads))
    if threads == 1:
        table, torsion_seen, _ = _scan(k, 0, total, integer, cone_shortcut)
    else:
        step = -(-total // threads)
        ranges = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda r: _scan(k, r[0], r[1], integer, cone_shortcut), ranges)
            )
        table = {}
        torsion_seen = False
        for part, tors, _ in parts:
            torsion_seen = torsion_seen or tors
            for key, v in part.items():
                table[key] = table.get(key, 0) + v
    return BigradedBettiTable(
        m=k.m,
        entries=table,
        d=_polytope_dim(k),
        engine="hochster",
        coeff=coeff,
        torsion_encountered=torsion_seen if integer else None,
    )


def _polytope_dim(k: SimplicialComplex) -> int | None:
    if k.meta:
        if k.meta.get("type") == "gtp":
            return sum(k.meta["dims"])
        if k.meta.get("type") == "cyclic":
            return k.meta["n"]
    return None


def ordinary_betti(table: BigradedBettiTable) -> OrdinaryBettiVector:
    """Aggregate beta^{-i,2j} into topological Betti numbers along
    q = 2j - i."""
    out: dict[int, int] = {}
    for (i, j), v in table.entries.items():
        q = 2 * j - i
        out[q] = out.get(q, 0) + v
    total = table.m + table.d if table.d is not None else None
    return OrdinaryBettiVector(betti=out, total_dim=total)


def duality_check(
    table: BigradedBettiTable, m: int, n: int
) -> tuple[bool, list[tuple]]:
    """Bigraded Poincare duality: beta^{-i,2j} must equal
    beta^{-(m-n)+i, 2(m-j)}.  Returns (ok, violations)."""
    violations = []
    keys = set(table.entries)
    keys.update((m - n - i, m - j) for (i, j) in table.entries)
    for (i, j) in sorted(keys):
        dual = (m - n - i, m - j)
        a, b = table.beta(i, j), table.beta(*dual)
        if a != b:
            violations.append(((i, j), dual, a, b))
    return not violations, violations


def nontrivial_summands(
    k: SimplicialComplex,
    bound: int = DEFAULT_GROUND_BOUND,
    cone_shortcut: bool = True,
) -> list[HochsterSummand]:
    """All vertex subsets whose full subcomplex has nonzero reduced
    cohomology, with per-degree ranks (the support of Hochster's sum)."""
    _check_bound(k, bound)
    _, _, raw = _scan(k, 0, 1 << k.m, False, cone_shortcut, collect_summands=True)
    return [
        HochsterSummand(subset=k.labels_of(mask), ranks=ranks) for mask, ranks in raw
    ]


def summand_masks(
    k: SimplicialComplex,
    bound: int = DEFAULT_GROUND_BOUND,
) -> dict[int, dict[int, int]]:
    """Bitmask-keyed variant of `nontrivial_summands` for engine use."""
    _check_bound(k, bound)
    _, _, raw = _scan(k, 0, 1 << k.m, False, True, collect_summands=True)
    return dict(raw)


def hochster_torsion_free(
    k: SimplicialComplex, bound: int = DEFAULT_GROUND_BOUND
) -> bool:
    """True when no full subcomplex carries torsion in integral homology."""
    _check_bound(k, bound)
    ft = _face_table(k)
    fac = np.array(k.facet_masks() or (0,), dtype=np.int64)
    for jmask in range(1 << k.m):
        restr = fac & jmask
        if _is_cone_mask(restr):
            continue
        _, torsion = ft.betti(jmask, integer=True)
        if torsion:
            return False
    return True
