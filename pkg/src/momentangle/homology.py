"""Exact reduced simplicial (co)homology over the rationals and integers.

The chain complex is augmented: the empty simplex is a (-1)-dimensional
cell, so the empty complex has reduced homology of rank 1 in degree -1
and Hochster-style bookkeeping needs no special cases.  Orientations
come from increasing vertex labels; the boundary sign of the face
omitting the t-th vertex (0-based) is (-1)^t.

`FaceTable` precomputes the face list and boundary incidences of one
complex once so that homology of arbitrary full subcomplexes (given as
vertex bitmasks) reduces to index selection plus exact rank/Smith
computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exact
from .complexes import SimplicialComplex


@dataclass
class ReducedHomologySummary:
    """Ranks and invariant factors of reduced homology by dimension."""

    ranks: dict[int, int]
    torsion: dict[int, list[int]] = field(default_factory=dict)

    def rank(self, dim: int) -> int:
        return self.ranks.get(dim, 0)

    def has_torsion(self) -> bool:
        return any(self.torsion.values())

    def to_dict(self) -> dict:
        return {
            "ranks": {str(k): v for k, v in sorted(self.ranks.items())},
            "torsion": {str(k): v for k, v in sorted(self.torsion.items())},
        }


@dataclass
class ChainBoundaryStack:
    """Augmented boundary matrices keyed by chain dimension p, with the
    face lists indexing rows and columns."""

    faces: dict[int, list[tuple[int, ...]]]  # p -> p-dimensional faces
    matrices: dict[int, np.ndarray]  # p -> boundary from p-chains to (p-1)-chains

    def verify_squares_to_zero(self) -> bool:
        for p, mat in self.matrices.items():
            prev = self.matrices.get(p - 1)
            if prev is not None and prev.size and mat.size:
                if np.any(prev @ mat):
                    return False
        return True


@dataclass
class CohomologyBasis:
    """Integer cocycle representatives of reduced cohomology in one
    degree, together with a basis of the coboundary space."""

    dimension: int
    faces: list[tuple[int, ...]]
    representatives: list[np.ndarray]
    coboundaries: np.ndarray
    rank: int


class FaceTable:
    """Face enumeration of one complex with boundary bookkeeping, shared
    by every full-subcomplex homology computation."""

    def __init__(self, k: SimplicialComplex):
        self.complex = k
        seen = {0}
        for fm in k.facet_masks():
            sub = fm
            while sub:
                seen.add(sub)
                sub = (sub - 1) & fm
        by_size: dict[int, list[int]] = {}
        for mask in seen:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
        self.top = max(by_size)
        self.masks: list[np.ndarray] = []
        index: list[dict[int, int]] = []
        for s in range(self.top + 1):
            ms = sorted(by_size.get(s, []))
            self.masks.append(np.array(ms, dtype=np.int64))
            index.append({m: i for i, m in enumerate(ms)})
        self.bnd_idx: list[np.ndarray | None] = [None]
        self.bnd_sgn: list[np.ndarray | None] = [None]
        for s in range(1, self.top + 1):
            ms = self.masks[s]
            idx = np.empty((len(ms), s), dtype=np.int32)
            sgn = np.empty((len(ms), s), dtype=np.int64)
            prev = index[s - 1]
            for col, fmask in enumerate(ms):
                fmask = int(fmask)
                x = fmask
                t = 0
                while x:
                    b = x & (-x)
                    idx[col, t] = prev[fmask ^ b]
                    sgn[col, t] = -1 if t & 1 else 1
                    x ^= b
                    t += 1
            self.bnd_idx.append(idx)
            self.bnd_sgn.append(sgn)

    def full_mask(self) -> int:
        return (1 << self.complex.m) - 1

    def _selection(self, jmask: int):
        sel = [np.array([True])]  # the empty face is always present
        for s in range(1, self.top + 1):
            sel.append((self.masks[s] & ~jmask) == 0)
        return sel

    def boundary_matrix(self, s: int, jmask: int | None = None) -> np.ndarray:
        """Dense boundary matrix from size-s faces to size-(s-1) faces of
        the full subcomplex selected by ``jmask`` (None = whole complex)."""
        if jmask is None:
            jmask = self.full_mask()
        if s < 1 or s > self.top:
            return np.zeros((0, 0), dtype=np.int64)
        sel_prev = (self.masks[s - 1] & ~jmask) == 0
        sel_cur = (self.masks[s] & ~jmask) == 0
        return self._matrix(s, sel_prev, sel_cur)

    def _matrix(self, s: int, sel_prev, sel_cur) -> np.ndarray:
        nprev = int(sel_prev.sum())
        cols = np.nonzero(sel_cur)[0]
        mat = np.zeros((nprev, len(cols)), dtype=np.int64)
        if nprev == 0 or len(cols) == 0:
            return mat
        pos = np.cumsum(sel_prev) - 1
        rows = pos[self.bnd_idx[s][cols]]
        colrep = np.repeat(np.arange(len(cols)), s)
        mat[rows.ravel(), colrep] = self.bnd_sgn[s][cols].ravel()
        return mat

    def betti(self, jmask: int | None = None, integer: bool = False):
        """Reduced betti ranks (and invariant factors when ``integer``)
        of the full subcomplex on ``jmask``.

        Returns (ranks, torsion): dicts keyed by homology dimension.
        """
        if jmask is None:
            jmask = self.full_mask()
        sel = self._selection(jmask)
        counts = [int(s.sum()) for s in sel]
        top = max((s for s in range(self.top + 1) if counts[s]), default=0)
        ranks = [0] * (top + 2)
        torsion: dict[int, list[int]] = {}
        for s in range(1, top + 1):
            if counts[s] == 0:
                continue
            mat = self._matrix(s, sel[s - 1], sel[s])
            if integer:
                r, factors = exact.smith_invariants(mat)
                ranks[s] = r
                nontrivial = [f for f in factors if f > 1]
                if nontrivial:
                    torsion[s - 2] = nontrivial
            else:
                ranks[s] = exact.rank(mat)
        out = {}
        for s in range(top + 1):
            b = counts[s] - ranks[s] - ranks[s + 1]
            if b:
                out[s - 1] = b
        return out, torsion


def _face_table(k: SimplicialComplex) -> FaceTable:
    ft = k._cache.get("face_table")
    if ft is None:
        ft = FaceTable(k)
        k._cache["face_table"] = ft
    return ft


def boundary_matrices(k: SimplicialComplex) -> ChainBoundaryStack:
    """Augmented boundary matrices of the whole complex, keyed by chain
    dimension (p = 0 maps vertices onto the empty simplex)."""
    ft = _face_table(k)
    faces = {}
    mats = {}
    for s in range(ft.top + 1):
        faces[s - 1] = [k.labels_of(int(m)) for m in ft.masks[s]]
        if s >= 1:
            mats[s - 1] = ft.boundary_matrix(s)
    return ChainBoundaryStack(faces=faces, matrices=mats)


def reduced_homology(
    k: SimplicialComplex, coeff: str = "rational"
) -> ReducedHomologySummary:
    """Exact reduced homology; ``coeff`` is "rational" (ranks only) or
    "integer" (ranks plus invariant factors via Smith normal form)."""
    if coeff not in ("rational", "integer"):
        raise ValueError(f"unsupported coefficients {coeff!r}")
    ranks, torsion = _face_table(k).betti(integer=(coeff == "integer"))
    return ReducedHomologySummary(ranks=ranks, torsion=torsion)


def is_torsion_free(k: SimplicialComplex) -> bool:
    """True when the integral homology of the complex itself carries no
    torsion (full subcomplexes are not inspected here)."""
    return not reduced_homology(k, "integer").has_torsion()


def cohomology_basis(k: SimplicialComplex, p: int) -> CohomologyBasis:
    """Integer cocycle representatives spanning reduced H^p plus a basis
    of the degree-p coboundary space."""
    ft = _face_table(k)
    faces_p, reps, cob, rank = cohomology_data(ft, ft.full_mask(), p)
    return CohomologyBasis(
        dimension=p,
        faces=[k.labels_of(int(m)) for m in faces_p],
        representatives=reps,
        coboundaries=cob,
        rank=rank,
    )


def cohomology_data(ft: FaceTable, jmask: int, p: int):
    """(face masks, cocycle representatives, coboundary basis, rank) for
    reduced H^p of the full subcomplex on ``jmask``.

    Cochains are integer vectors indexed by the returned size-(p+1) face
    masks in sorted order.  Degree -1 is the span of the empty-simplex
    cochain, nonzero exactly for the empty complex.
    """
    s = p + 1
    if s < 0 or s > ft.top:
        empty = np.zeros((0, 0), dtype=np.int64)
        return np.array([], dtype=np.int64), [], empty, 0
    sel_s = (ft.masks[s] & ~jmask) == 0 if s else np.array([True])
    n_s = int(sel_s.sum())
    faces_p = ft.masks[s][sel_s] if s else ft.masks[0]
    if n_s == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return faces_p, [], empty, 0
    # cocycles: kernel of the coboundary into degree p+1
    if s + 1 <= ft.top:
        sel_up = (ft.masks[s + 1] & ~jmask) == 0
        delta = ft._matrix(s + 1, sel_s, sel_up).T  # C^p -> C^{p+1}
    else:
        delta = np.zeros((0, n_s), dtype=np.int64)
    kernel = exact.kernel_basis(delta)
    # coboundaries: row space of the boundary from size-s faces
    if s >= 1:
        sel_dn = (ft.masks[s - 1] & ~jmask) == 0 if s - 1 else np.array([True])
        dmat = ft._matrix(s, sel_dn, sel_s)
        ech, pivots = exact.row_echelon(dmat.T.copy())
        cob = dmat.T[:, pivots] if pivots else np.zeros((n_s, 0), dtype=np.int64)
    else:
        cob = np.zeros((n_s, 0), dtype=np.int64)
    base_rank = cob.shape[1]
    reps: list[np.ndarray] = []
    current = cob
    cur_rank = base_rank
    for vec in kernel:
        cand = np.column_stack([current, vec]) if current.size else vec.reshape(-1, 1)
        r = exact.rank(cand)
        if r > cur_rank:
            reps.append(vec)
            current = cand
            cur_rank = r
    return faces_p, reps, cob, len(reps)
