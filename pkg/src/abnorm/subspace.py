"""Subspace machinery: bracket generation, the canonical basis construction,
normalizer/centralizer solves and the typing of subspaces of the two
decomposable algebras with simple 3D part.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lie import DIM, StructureConstants, bracket, killing_matrix

RANK_RTOL = 1e-9


class SubspaceError(ValueError):
    pass


def _orthonormal_basis(vectors, rtol: float = RANK_RTOL) -> np.ndarray:
    """Rows: orthonormal basis of the span; rank by singular-value cutoff."""
    a = np.atleast_2d(np.asarray(vectors, dtype=float))
    if not len(a):
        return np.zeros((0, DIM))
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, a.shape[1]))
    rank = int(np.sum(s > rtol * s[0]))
    return vt[:rank]


def _rank(vectors) -> int:
    return _orthonormal_basis(vectors).shape[0]


def _contains(space_rows, vector, tol: float = 1e-9) -> bool:
    q = _orthonormal_basis(space_rows)
    v = np.asarray(vector, dtype=float)
    resid = v - q.T @ (q @ v)
    return float(np.linalg.norm(resid)) <= tol * max(1.0, float(np.linalg.norm(v)))


def intersect(rows_a, rows_b) -> np.ndarray:
    """Orthonormal rows spanning span(A) ∩ span(B)."""
    qa = _orthonormal_basis(rows_a)
    qb = _orthonormal_basis(rows_b)
    if not len(qa) or not len(qb):
        return np.zeros((0, DIM))
    # null space of [A^T | -B^T] glues coefficients of a common vector
    m = np.hstack([qa.T, -qb.T])
    u, s, vt = np.linalg.svd(m)
    ns = vt[np.sum(s > RANK_RTOL * max(s[0], 1.0)):]
    if not len(ns):
        return np.zeros((0, DIM))
    vecs = ns[:, : len(qa)] @ qa
    return _orthonormal_basis(vecs)


@dataclass(frozen=True)
class Subspace:
    algebra: StructureConstants
    basis: np.ndarray  # rows

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if b.shape[0] not in (2, 3) or b.shape[1] != DIM:
            raise SubspaceError("subspace basis must be 2 or 3 vectors in R^4")
        if _rank(b) != b.shape[0]:
            raise SubspaceError("dependent spanning set")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


@dataclass(frozen=True)
class GenerationResult:
    generates: bool
    dims: tuple

    def __bool__(self):
        return self.generates


def generates(alg: StructureConstants, p: Subspace) -> GenerationResult:
    """Flag test: V0 = p, V_{i+1} = V_i + [V_i, V_i] until stabilization."""
    rows = _orthonormal_basis(p.basis)
    dims = [rows.shape[0]]
    while dims[-1] < DIM:
        new = list(rows)
        n = rows.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                new.append(bracket(alg, rows[i], rows[j]))
        rows = _orthonormal_basis(new)
        if rows.shape[0] == dims[-1]:
            break
        dims.append(rows.shape[0])
    return GenerationResult(generates=dims[-1] == DIM, dims=tuple(dims))


@dataclass(frozen=True)
class CanonicalBasis:
    """Basis with [e1,e2] = e3, [e1,e3] = e4 and the e4-component of
    [e2,e3] removed; the e2-shift of e1 is applied whenever it can zero
    the e2-component of [e2,e3]."""

    algebra: StructureConstants
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    c23: np.ndarray
    c14: np.ndarray
    c24: np.ndarray
    #: columns of final (e1, e2) in coordinates of the input spanners
    frame_from_spanners: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        """Columns e1..e4 in catalog coordinates."""
        return np.stack([self.e1, self.e2, self.e3, self.e4], axis=1)

    def to_catalog_frame(self, xy) -> np.ndarray:
        x, y = xy
        return x * self.e1 + y * self.e2


def _components(basis_matrix, v) -> np.ndarray:
    return np.linalg.solve(basis_matrix, v)


def canonical_basis(alg: StructureConstants, p: Subspace) -> CanonicalBasis:
    """Construct the canonical basis from a generating 2D subspace.

    Tie-break: the first spanner is preferred as e1; if e1, e2, [e1,e2],
    [e1,[e1,e2]] fail the rank-4 test the spanners are swapped.
    """
    if p.dim != 2:
        raise SubspaceError("canonical basis needs a 2D subspace")
    v1, v2 = p.basis
    for e1, e2, frame in (
        (v1, v2, np.eye(2)),
        (v2, v1, np.array([[0.0, 1.0], [1.0, 0.0]])),
    ):
        e3 = bracket(alg, e1, e2)
        e4 = bracket(alg, e1, e3)
        if _rank([e1, e2, e3, e4]) == DIM:
            break
    else:
        raise SubspaceError("canonicalization failed: no rank-4 ordering")

    basis = np.stack([e1, e2, e3, e4], axis=1)
    c23 = _components(basis, bracket(alg, e2, e3))
    if abs(c23[3]) > 0:
        # e2 <- e2 - C423 e1 removes the e4-component of [e2, e3]
        shift = c23[3]
        e2 = e2 - shift * e1
        frame = frame @ np.array([[1.0, -shift], [0.0, 1.0]])
        basis = np.stack([e1, e2, e3, e4], axis=1)
        c23 = _components(basis, bracket(alg, e2, e3))

    if abs(c23[0]) > RANK_RTOL and abs(c23[1]) > RANK_RTOL:
        # e1 <- e1 + (C223/C123) e2 zeroes C223; e3 is unchanged, e4 moves
        x = c23[1] / c23[0]
        e1 = e1 + x * e2
        frame = frame @ np.array([[1.0, 0.0], [x, 1.0]])
        e4 = bracket(alg, e1, e3)
        basis = np.stack([e1, e2, e3, e4], axis=1)
        c23 = _components(basis, bracket(alg, e2, e3))

    c14 = _components(basis, bracket(alg, e1, e4))
    c24 = _components(basis, bracket(alg, e2, e4))
    return CanonicalBasis(
        algebra=alg, e1=e1, e2=e2, e3=e3, e4=e4,
        c23=c23, c14=c14, c24=c24, frame_from_spanners=frame,
    )


def check_prop2(b: CanonicalBasis) -> float:
    """Max violation of C124 = C224 = 0, C324 = C223, C424 = C323."""
    return float(
        max(
            abs(b.c24[0]),
            abs(b.c24[1]),
            abs(b.c24[2] - b.c23[1]),
            abs(b.c24[3] - b.c23[2]),
        )
    )


def normalizer(alg: StructureConstants, p: Subspace) -> np.ndarray:
    """N(p) = {X : [X, v] in p for all v in p}; orthonormal rows."""
    q = _orthonormal_basis(p.basis)
    comp = _orthonormal_basis(np.eye(DIM) - q.T @ q)  # complement of p
    rows = []
    for v in p.basis:
        # X -> projection of [X, v] off p, linear in X
        adv = np.einsum("ijk,j->ki", alg.c, v)  # column i: [E_i, v]... see below
        rows.append(comp @ adv)
    m = np.vstack(rows) if rows else np.zeros((0, DIM))
    u, s, vt = np.linalg.svd(m)
    cutoff = RANK_RTOL * max(s[0] if s.size else 0.0, 1.0)
    return vt[np.sum(s > cutoff):]


def centralizer(alg: StructureConstants, p: Subspace) -> np.ndarray:
    """C(p) = {X : [X, v] = 0 for all v in p}; orthonormal rows."""
    rows = []
    for v in p.basis:
        rows.append(np.einsum("ijk,j->ki", alg.c, v))
    m = np.vstack(rows)
    u, s, vt = np.linalg.svd(m)
    cutoff = RANK_RTOL * max(s[0] if s.size else 0.0, 1.0)
    return vt[np.sum(s > cutoff):]


class SL2SubspaceType(Enum):
    TypeI = "I"
    TypeIIa = "IIa"
    TypeIIb = "IIb"
    TypeIIc = "IIc"
    Degenerate = "degenerate"


@dataclass(frozen=True)
class SL2Typing:
    tag: SL2SubspaceType
    detail: dict


# the typing form Q on the 3D part reproduces signature (+,+,-) for the
# sl(2,R) summand and (+,+,+) for the so(3) summand; see the decomposable
# Killing matrices diag(±2, ±2, -2, 0)
def _typing_form(alg: StructureConstants, family: str) -> np.ndarray:
    k = killing_matrix(alg)[:3, :3]
    return 0.5 * k if family == "g3.6+g1" else -0.5 * k


def classify_sl2(alg: StructureConstants, p: Subspace, family: str) -> SL2Typing:
    """Type a 2D subspace of g3.6+g1 or g3.7+g1.

    Conditions checked: the projection p1 onto the 3D part differs from p,
    is 2D, and the Killing form restricted to p1 is non-degenerate.  On
    the sl(2,R) side the indefinite case is refined by the causal type of
    s = p ∩ g3.
    """
    if family not in ("g3.6+g1", "g3.7+g1"):
        raise SubspaceError("classification applies to g3.6+g1 / g3.7+g1 only")
    if p.dim != 2:
        raise SubspaceError("2D subspace expected")
    q = _typing_form(alg, family)

    p1 = _orthonormal_basis(p.basis[:, :3])
    in_g3 = _rank(np.vstack([p.basis, np.eye(DIM)[:3]])) == 3
    detail: dict = {"p1_dim": int(p1.shape[0])}
    if in_g3 or p1.shape[0] != 2:
        return SL2Typing(SL2SubspaceType.Degenerate, detail)

    gram = p1 @ q @ p1.T
    eigs = np.linalg.eigvalsh(gram)
    detail["gram_eigs"] = [float(x) for x in eigs]
    if min(abs(eigs)) <= 1e-9 * max(1.0, max(abs(eigs))):
        return SL2Typing(SL2SubspaceType.Degenerate, detail)

    if family == "g3.7+g1":
        return SL2Typing(SL2SubspaceType.TypeI, detail)

    if np.all(eigs > 0):
        return SL2Typing(SL2SubspaceType.TypeI, detail)

    # indefinite restriction: refine by the causal type of s = p ∩ g3
    s = intersect(p.basis, np.eye(DIM)[:3])
    if s.shape[0] != 1:
        return SL2Typing(SL2SubspaceType.Degenerate, detail)
    v = s[0][:3]
    qv = float(v @ q[:3, :3] @ v)
    detail["s_form_value"] = qv
    if abs(qv) <= 1e-9:
        return SL2Typing(SL2SubspaceType.TypeIIc, detail)
    if qv > 0:
        return SL2Typing(SL2SubspaceType.TypeIIa, detail)
    return SL2Typing(SL2SubspaceType.TypeIIb, detail)
