"""Finite simplicial complexes on labeled vertex sets.

Vertices are positive integer labels.  A complex stores its ground set
explicitly, so "ghost" vertices (ground-set members carried by no face)
are representable; restriction and vertex deletion preserve labels.
Faces are kept canonically as strictly increasing tuples and the facet
list is normalized to an inclusion antichain on construction.

All operations return new complexes; instances are immutable in use.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import networkx as nx


def _canon_face(face) -> tuple[int, ...]:
    out = tuple(sorted(set(int(v) for v in face)))
    if len(out) != len(tuple(face)):
        raise ValueError(f"face {tuple(face)} has repeated vertices")
    if out and out[0] < 1:
        raise ValueError(f"vertex labels must be positive, got {out}")
    return out


def _antichain(faces) -> tuple[tuple[int, ...], ...]:
    """Drop faces contained in another face; deduplicate; sort."""
    sets = sorted({frozenset(f) for f in faces}, key=len, reverse=True)
    keep: list[frozenset] = []
    for s in sets:
        if not any(s < k for k in keep):
            keep.append(s)
    out = sorted(tuple(sorted(s)) for s in keep if s)
    return tuple(out)


class SimplicialComplex:
    """A simplicial complex given by its ground set and maximal faces.

    The empty face is implicitly a face of every complex; a complex with
    no facets at all is the "empty complex" {∅} (every ground vertex is
    then a ghost).
    """

    def __init__(self, ground, facets, meta=None):
        self.ground: tuple[int, ...] = _canon_face(ground)
        self.facets: tuple[tuple[int, ...], ...] = _antichain(
            _canon_face(f) for f in facets
        )
        gset = set(self.ground)
        for f in self.facets:
            if not gset.issuperset(f):
                raise ValueError(f"facet {f} not contained in ground set")
        self.meta = dict(meta) if meta else None
        self._pos = {v: i for i, v in enumerate(self.ground)}
        self._cache: dict = {}

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.ground)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        sizes = {len(f) for f in self.facets}
        return len(sizes) <= 1

    def vertices_present(self) -> tuple[int, ...]:
        seen = set()
        for f in self.facets:
            seen.update(f)
        return tuple(sorted(seen))

    def ghost_vertices(self) -> tuple[int, ...]:
        present = set(self.vertices_present())
        return tuple(v for v in self.ground if v not in present)

    def mask_of(self, vertices) -> int:
        """Bitmask of a vertex set relative to this complex's ground order."""
        m = 0
        for v in vertices:
            m |= 1 << self._pos[v]
        return m

    def labels_of(self, mask: int) -> tuple[int, ...]:
        return tuple(self.ground[i] for i in range(self.m) if mask >> i & 1)

    def facet_masks(self) -> tuple[int, ...]:
        if "facet_masks" not in self._cache:
            self._cache["facet_masks"] = tuple(self.mask_of(f) for f in self.facets)
        return self._cache["facet_masks"]

    def has_face(self, face) -> bool:
        s = set(face)
        if not s.issubset(self.ground):
            return False
        return any(s.issubset(f) for f in self.facets) or not s

    def faces(self) -> list[tuple[int, ...]]:
        """All faces including the empty face, sorted by (size, lex)."""
        seen = {()}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                seen.update(itertools.combinations(f, r))
        return sorted(seen, key=lambda t: (len(t), t))

    def f_vector(self) -> tuple[int, ...]:
        """(f_-1, f_0, ..., f_dim); f_-1 = 1 counts the empty face."""
        counts = [0] * (self.dim + 2)
        for f in self.faces():
            counts[len(f)] += 1
        return tuple(counts)

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.ground == other.ground and self.facets == other.facets

    def __hash__(self):
        return hash((self.ground, self.facets))

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, facets={len(self.facets)}, dim={self.dim})"

    # -- JSON interchange ----------------------------------------------

    def to_dict(self) -> dict:
        d = {"m": self.m, "facets": [list(f) for f in self.facets]}
        if self.ground != tuple(range(1, self.m + 1)):
            d["ground"] = list(self.ground)
        if self.meta:
            d["meta"] = self.meta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SimplicialComplex":
        ground = d.get("ground") or range(1, int(d["m"]) + 1)
        return cls(ground, d.get("facets", []), meta=d.get("meta"))


@dataclass(frozen=True)
class GtpSpec:
    """Type of a generalized truncation polytope: k vertex cuts of a
    product of simplices with the given factor dimensions.

    ``strategy`` fixes which facet of the dual complex gets stacked at
    each cut: "lex" picks the lexicographically least facet, "random"
    draws from the facet list with the given seed.
    """

    k: int
    dims: tuple[int, ...]
    strategy: str = "lex"
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if self.k < 0:
            raise ValueError("number of vertex cuts k must be >= 0")
        if not self.dims:
            raise ValueError("at least one simplex factor is required")
        if any(n < 1 for n in self.dims):
            raise ValueError("factor dimensions must be >= 1")
        if any(a < b for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError("factor dimensions must be non-increasing")
        if self.r == 1 and self.dims[0] == 1:
            raise ValueError("type (k; 1) is a segment, not a simple polytope of interest")
        if self.strategy not in ("lex", "random"):
            raise ValueError(f"unknown facet-choice strategy {self.strategy!r}")

    @property
    def r(self) -> int:
        return len(self.dims)

    @property
    def d(self) -> int:
        return sum(self.dims)

    @property
    def m(self) -> int:
        return self.d + self.r + self.k

    @property
    def a(self) -> int:
        return sum(1 for n in self.dims if n == 1)


# -- constructors and operations ----------------------------------------


def boundary_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex: all n-subsets of n+1 vertices."""
    if n < 1:
        raise ValueError("boundary of a 0-simplex is degenerate")
    verts = range(1, n + 2)
    return SimplicialComplex(verts, itertools.combinations(verts, n))


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; the second factor is relabeled disjointly above
    the first factor's labels."""
    shift = max(k1.ground, default=0)
    g2 = tuple(v + shift for v in k2.ground)
    f2 = [tuple(v + shift for v in f) for f in k2.facets]
    facets = [a + b for a in (k1.facets or [()]) for b in (f2 or [()])]
    return SimplicialComplex(k1.ground + g2, facets)


def stack(k: SimplicialComplex, facet) -> SimplicialComplex:
    """Stellar subdivision of a facet: replace ``facet`` by the pyramid
    over its boundary with a fresh vertex.  Dual to a vertex cut."""
    f = _canon_face(facet)
    if f not in k.facets:
        raise ValueError(f"{f} is not a facet")
    if not k.is_pure():
        raise ValueError("stacking requires a pure complex")
    v = max(k.ground) + 1
    new_facets = [g for g in k.facets if g != f]
    for x in f:
        new_facets.append(tuple(sorted(set(f) - {x} | {v})))
    meta = None
    if k.meta and k.meta.get("type") == "gtp":
        meta = dict(k.meta)
        meta["k"] = meta.get("k", 0) + 1
        meta["new_vertices"] = list(meta.get("new_vertices", [])) + [v]
        meta["strategy"] = "manual"
    return SimplicialComplex(k.ground + (v,), new_facets, meta=meta)


def build_gtp(spec: GtpSpec) -> SimplicialComplex:
    """Dual boundary complex of a generalized truncation polytope.

    Starts from the join of simplex boundaries (the dual of the product
    of simplices) and stacks k facets according to the spec's strategy.
    The stacked vertices are recorded in the ``new_vertices`` metadata.
    """
    k = boundary_simplex(spec.dims[0])
    for n in spec.dims[1:]:
        k = join(k, boundary_simplex(n))
    rng = random.Random(spec.seed) if spec.strategy == "random" else None
    new_vertices = []
    for _ in range(spec.k):
        facets = sorted(k.facets)
        f = facets[0] if rng is None else rng.choice(facets)
        k = stack(k, f)
        new_vertices.append(max(k.ground))
    meta = {
        "type": "gtp",
        "k": spec.k,
        "dims": list(spec.dims),
        "new_vertices": new_vertices,
        "strategy": spec.strategy,
    }
    if spec.seed is not None:
        meta["seed"] = spec.seed
    return SimplicialComplex(k.ground, k.facets, meta=meta)


def full_subcomplex(k: SimplicialComplex, subset) -> SimplicialComplex:
    """Restriction to a vertex subset: all faces contained in it.
    Labels are preserved; ghosts stay ghosts."""
    s = set(subset)
    if not s.issubset(k.ground):
        raise ValueError("subset is not contained in the ground set")
    facets = [tuple(v for v in f if v in s) for f in k.facets]
    return SimplicialComplex(sorted(s), facets)


def delete_vertex(k: SimplicialComplex, v: int) -> SimplicialComplex:
    """Full subcomplex on the ground set minus one vertex."""
    if v not in k.ground:
        raise ValueError(f"vertex {v} not in ground set")
    return full_subcomplex(k, (u for u in k.ground if u != v))


def glue(
    k1: SimplicialComplex,
    k2: SimplicialComplex,
    sigma1,
    sigma2,
) -> SimplicialComplex:
    """Glue two complexes along a common simplex.

    ``sigma2``'s vertices are identified with ``sigma1``'s in sorted
    order; the remaining vertices of ``k2`` are relabeled above ``k1``'s
    labels.
    """
    s1, s2 = _canon_face(sigma1), _canon_face(sigma2)
    if len(s1) != len(s2):
        raise ValueError("glued simplices must have the same size")
    if not k1.has_face(s1):
        raise ValueError(f"{s1} is not a face of the first complex")
    if not k2.has_face(s2):
        raise ValueError(f"{s2} is not a face of the second complex")
    relabel = dict(zip(s2, s1))
    nxt = max(k1.ground, default=0)
    for v in k2.ground:
        if v not in relabel:
            nxt += 1
            relabel[v] = nxt
    ground = sorted(set(k1.ground) | set(relabel[v] for v in k2.ground))
    facets = list(k1.facets) + [tuple(sorted(relabel[v] for v in f)) for f in k2.facets]
    return SimplicialComplex(ground, facets)


def minimal_nonfaces(k: SimplicialComplex) -> list[tuple[int, ...]]:
    """Inclusion-minimal subsets of the ground set that are not faces.

    These are the supports of the squarefree generators of the
    Stanley-Reisner ideal.  Ghost vertices show up as singletons.
    """
    if k.m > 22:
        raise ValueError("minimal non-face enumeration is limited to m <= 22")
    face_masks = set()
    for f in k.facets:
        fm = k.mask_of(f)
        sub = fm
        while True:
            face_masks.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & fm
    out = []
    for mask in range(1, 1 << k.m):
        if mask in face_masks:
            continue
        x = mask
        minimal = True
        while x:
            b = x & (-x)
            if (mask ^ b) not in face_masks:
                minimal = False
                break
            x ^= b
        if minimal:
            out.append(k.labels_of(mask))
    return sorted(out, key=lambda t: (len(t), t))


def cyclic_boundary(m: int, n: int) -> SimplicialComplex:
    """Boundary complex of the cyclic polytope C(m, n) via Gale's
    evenness condition: an n-subset S of [m] is a facet iff every two
    elements outside S have an even number of S-elements between them."""
    if n < 2:
        raise ValueError("cyclic polytopes need dimension n >= 2")
    if m <= n:
        raise ValueError("cyclic polytope C(m, n) needs m >= n + 1")
    facets = []
    for comb in itertools.combinations(range(1, m + 1), n):
        s = set(comb)
        outside = [v for v in range(1, m + 1) if v not in s]
        ok = True
        for i, j in itertools.combinations(outside, 2):
            if sum(1 for v in comb if i < v < j) % 2:
                ok = False
                break
        if ok:
            facets.append(comb)
    return SimplicialComplex(
        range(1, m + 1), facets, meta={"type": "cyclic", "m": m, "n": n}
    )


def one_skeleton(k: SimplicialComplex) -> nx.Graph:
    """Graph of 0- and 1-faces (ghosts excluded)."""
    g = nx.Graph()
    g.add_nodes_from(k.vertices_present())
    for f in k.facets:
        g.add_edges_from(itertools.combinations(f, 2))
    return g


def one_skeleton_chordal(
    k: SimplicialComplex,
) -> tuple[bool, tuple[int, ...] | None]:
    """Chordality of the 1-skeleton.

    Returns (True, None) when chordal, else (False, witness) where the
    witness is an induced cycle of length >= 4, rotated to start at its
    least vertex and oriented toward the smaller neighbor.
    """
    g = one_skeleton(k)
    if nx.is_chordal(g):
        return True, None
    best = None
    for cyc in nx.chordless_cycles(g):
        if len(cyc) >= 4:
            cand = _canon_cycle(cyc)
            if best is None or (len(cand), cand) < (len(best), best):
                best = cand
    return False, best


def _canon_cycle(cyc: list[int]) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    rot = cyc[i:] + cyc[:i]
    if rot[1] > rot[-1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def f_vector(k: SimplicialComplex) -> tuple[int, ...]:
    return k.f_vector()
