"""Convex geometry of the 2D control region: gauge (Minkowski functional),
support function, polar polygon and the axis condition on the second
canonical direction.

Bodies live in the canonical (e1, e2) frame of the subspace and may be
asymmetric; nothing here assumes F(u) = F(-u).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

AXIS_TOL = 1e-9


class BodyError(ValueError):
    pass


class SeminormBody:
    """Convex, bounded, with the origin strictly interior."""

    def gauge(self, v) -> float:
        raise NotImplementedError

    def support(self, w) -> float:
        raise NotImplementedError

    def scaled(self, lam: float) -> "SeminormBody":
        raise NotImplementedError

    def transformed(self, m) -> "SeminormBody":
        """Image of the body under the linear map m (2x2, invertible)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Polygon(SeminormBody):
    """Convex polygon, vertices counterclockwise, origin strictly interior."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 3 or v.shape[1] != 2:
            raise BodyError("polygon needs >= 3 planar vertices")
        n = v.shape[0]
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.any(cross < -1e-12):
            raise BodyError("polygon vertices must be convex and counterclockwise")
        # outward normal of edge i and its support offset; origin interior
        # iff every offset is positive
        normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
        lengths = np.linalg.norm(normals, axis=1)
        if np.any(lengths < 1e-14):
            raise BodyError("degenerate polygon edge")
        normals = normals / lengths[:, None]
        offsets = np.einsum("ij,ij->i", normals, v)
        if np.any(offsets <= 1e-12):
            raise BodyError("invalid body: origin not strictly interior")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "_normals", normals)
        object.__setattr__(self, "_offsets", offsets)

    def gauge(self, v) -> float:
        v = np.asarray(v, dtype=float)
        if np.allclose(v, 0.0):
            return 0.0
        return float(np.max((self._normals @ v) / self._offsets))

    def support(self, w) -> float:
        return float(np.max(self.vertices @ np.asarray(w, dtype=float)))

    def scaled(self, lam: float) -> "Polygon":
        return Polygon(lam * self.vertices)

    def transformed(self, m) -> "Polygon":
        m = np.asarray(m, dtype=float)
        verts = self.vertices @ m.T
        u, w = verts[1] - verts[0], verts[2] - verts[0]
        area2 = u[0] * w[1] - u[1] * w[0]
        if area2 < 0:  # orientation flipped
            verts = verts[::-1]
        return Polygon(verts)


def polar(p: Polygon) -> Polygon:
    """Polar polygon {w : <w, u> <= 1 on U}; vertices dual to edges."""
    verts = p._normals / p._offsets[:, None]
    return Polygon(verts)


@dataclass(frozen=True)
class Ellipse(SeminormBody):
    """{center + S^(1/2) d : |d| <= 1} for SPD shape matrix S.

    The support function is <center, w> + sqrt(w^T S w).
    """

    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        s = np.asarray(self.shape, dtype=float)
        if c.shape != (2,) or s.shape != (2, 2):
            raise BodyError("ellipse needs a 2-vector center and 2x2 shape matrix")
        if not np.allclose(s, s.T, atol=1e-12) or np.any(np.linalg.eigvalsh(s) <= 0):
            raise BodyError("shape matrix must be symmetric positive definite")
        q = np.linalg.inv(s)
        if float(c @ q @ c) >= 1.0 - 1e-12:
            raise BodyError("invalid body: origin not strictly interior")
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "shape", s)
        object.__setattr__(self, "_q", q)

    def gauge(self, v) -> float:
        v = np.asarray(v, dtype=float)
        if np.allclose(v, 0.0):
            return 0.0
        # smallest lam > 0 with (v/lam - c)^T Q (v/lam - c) = 1
        q = self._q
        a = float(self.center @ q @ self.center) - 1.0  # < 0
        b = float(v @ q @ self.center)
        c = float(v @ q @ v)
        return float((b - np.sqrt(b * b - a * c)) / a)

    def support(self, w) -> float:
        w = np.asarray(w, dtype=float)
        return float(self.center @ w + np.sqrt(w @ self.shape @ w))

    def scaled(self, lam: float) -> "Ellipse":
        return Ellipse(lam * self.center, lam * lam * self.shape)

    def transformed(self, m) -> "Ellipse":
        m = np.asarray(m, dtype=float)
        return Ellipse(m @ self.center, m @ self.shape @ m.T)


def Disk(center, radius: float) -> Ellipse:
    """Disk as the isotropic ellipse."""
    r = float(radius)
    if r <= 0:
        raise BodyError("disk radius must be positive")
    return Ellipse(np.asarray(center, dtype=float), r * r * np.eye(2))


def gauge(b: SeminormBody, v) -> float:
    return b.gauge(v)


def support(b: SeminormBody, w) -> float:
    return b.support(w)


def axis_condition(b: SeminormBody, s: int) -> bool:
    """True iff F_U(0, s) = 1 / F(0, s), i.e. the extreme point of U in
    the direction s*e2 sits on the e2-axis."""
    if s not in (1, -1):
        raise BodyError("direction must be +1 or -1")
    sup = b.support((0.0, float(s)))
    g = b.gauge((0.0, float(s)))
    return abs(sup - 1.0 / g) <= AXIS_TOL * max(1.0, sup)


def body_from_config(cfg: dict) -> SeminormBody:
    """Parse the config schema: {"polygon": [...]} / {"ellipse": {...}} /
    {"disk": {...}}."""
    if not isinstance(cfg, dict) or len(cfg) != 1:
        raise BodyError("body config must have exactly one of polygon/ellipse/disk")
    (kind, val), = cfg.items()
    if kind == "polygon":
        return Polygon(np.asarray(val, dtype=float))
    if kind == "ellipse":
        return Ellipse(np.asarray(val["center"], dtype=float),
                       np.asarray(val["matrix"], dtype=float))
    if kind == "disk":
        return Disk(val.get("center", (0.0, 0.0)), val["radius"])
    raise BodyError(f"unknown body kind {kind!r}")


def body_to_config(b: SeminormBody) -> dict:
    if isinstance(b, Polygon):
        return {"polygon": [[float(x), float(y)] for x, y in b.vertices]}
    if isinstance(b, Ellipse):
        return {"ellipse": {"center": [float(x) for x in b.center],
                            "matrix": [[float(x) for x in row] for row in b.shape]}}
    raise BodyError("unknown body type")
