"""Catalog of 4D real Lie algebras: bracket tables, parameter constraints,
automorphism families and the known generating subspaces.

The data lives in ``data/catalog.json`` (override with the ABNORM_CATALOG
environment variable); this module parses it and exposes typed accessors.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .lie import StructureConstants, automorphism_defect

FAMILIES = [
    "g3.1+g1", "g3.2+g1", "g3.3+g1", "g3.4+g1", "g3.5+g1", "g3.6+g1",
    "g3.7+g1", "g4.1", "g4.2", "g4.3", "g4.4", "g4.5", "g4.6", "g4.7",
    "g4.8", "g4.9", "g4.10",
]


class CatalogError(ValueError):
    pass


class CatalogCorruptError(CatalogError):
    """The catalog data file is unreadable or structurally invalid."""


def _eval(expr: str, env: dict) -> float:
    return eval(expr, {"__builtins__": {}}, dict(env))  # noqa: S307 - trusted data file


def _normalize_family(name: str) -> str:
    s = name.strip().lower().replace(" ", "")
    s = s.replace("⊕", "+").replace("+r", "+g1")
    m = re.fullmatch(r"g(\d)\.?(\d+)(\+g1)?", s)
    if not m:
        raise CatalogError(f"unknown family {name!r}")
    cand = f"g{m.group(1)}.{m.group(2)}" + ("+g1" if m.group(1) == "3" else "")
    if cand not in FAMILIES:
        raise CatalogError(f"unknown family {name!r}")
    return cand


@dataclass(frozen=True)
class AlgebraId:
    family: str
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", _normalize_family(self.family))

    @property
    def params(self) -> dict:
        env = {}
        if self.alpha is not None:
            env["alpha"] = float(self.alpha)
        if self.beta is not None:
            env["beta"] = float(self.beta)
        return env

    def __str__(self):
        parts = [self.family]
        if self.alpha is not None:
            parts.append(f"alpha={self.alpha:g}")
        if self.beta is not None:
            parts.append(f"beta={self.beta:g}")
        return " ".join(parts)


@dataclass(frozen=True)
class AutomorphismMatrix:
    m: np.ndarray
    family: str
    params: dict


@dataclass
class AutomorphismFamily:
    """Parametrized automorphism family of one catalog algebra."""

    algebra_id: AlgebraId
    branches: list

    def matrix(self, branch: int = 0, **values) -> AutomorphismMatrix:
        spec = self.branches[branch]
        env = dict(self.algebra_id.params)
        for name in spec["free"]:
            env[name] = float(values.get(name, 0.0))
        for name, choices in spec.get("discrete", {}).items():
            env[name] = float(values.get(name, choices[0]))
            if env[name] not in [float(c) for c in choices]:
                raise CatalogError(f"{name} must be one of {choices}")
        for expr in spec["nonzero"]:
            if _eval(expr, env) == 0:
                raise CatalogError(f"constraint {expr} != 0 violated")
        m = np.array(
            [[_eval(entry, env) for entry in row] for row in spec["matrix"]]
        )
        return AutomorphismMatrix(m=m, family=self.algebra_id.family, params=env)

    def sample(self, rng: np.random.Generator, scale: float = 3.0) -> AutomorphismMatrix:
        """Random member with parameters in [-scale, scale], constraints respected."""
        branch = int(rng.integers(len(self.branches)))
        spec = self.branches[branch]
        while True:
            values = {name: float(rng.uniform(-scale, scale)) for name in spec["free"]}
            for name, choices in spec.get("discrete", {}).items():
                values[name] = float(rng.choice(choices))
            env = dict(self.algebra_id.params) | values
            # keep a margin away from the singular locus
            if all(abs(_eval(expr, env)) > 0.05 for expr in spec["nonzero"]):
                return self.matrix(branch, **values)


@dataclass(frozen=True)
class KnownSubspace:
    algebra: AlgebraId
    span: list
    provenance: str


def _load_raw(path: str | None = None) -> dict:
    if path is None:
        path = os.environ.get("ABNORM_CATALOG")
    return _load_raw_cached(path)


@lru_cache(maxsize=None)
def _load_raw_cached(path: str | None) -> dict:
    try:
        if path is None:
            text = (resources.files("abnorm") / "data" / "catalog.json").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        data = json.loads(text)
        by_name = {fam["name"]: fam for fam in data["families"]}
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CatalogCorruptError(f"cannot load catalog data: {exc}") from exc
    missing = set(FAMILIES) - set(by_name)
    if missing:
        raise CatalogCorruptError(f"catalog data missing families: {sorted(missing)}")
    return by_name


def _family_entry(id: AlgebraId) -> dict:
    entry = _load_raw()[id.family]
    env = id.params
    for name in entry["params"]:
        if name not in env:
            raise CatalogError(f"{id.family} requires parameter {name}")
    if not _eval(entry["param_constraint"], env):
        raise CatalogError(
            f"invalid parameters for {id.family}: need {entry['constraint_text']}"
        )
    return entry


def instantiate(id: AlgebraId) -> StructureConstants:
    """Bracket table of the catalog algebra with the given parameters."""
    entry = _family_entry(id)
    env = id.params
    for row in entry["rows"]:
        if _eval(row["condition"], env):
            brackets = [
                (i, j, {int(k): _eval(expr, env) for k, expr in comps.items()})
                for i, j, comps in row["brackets"]
            ]
            return StructureConstants.from_brackets(brackets, label=str(id))
    raise CatalogCorruptError(f"no bracket row matches parameters of {id}")


def automorphism_family(id: AlgebraId) -> AutomorphismFamily:
    """The tabulated automorphism family, or 'no table entry' error."""
    entry = _family_entry(id)
    env = id.params
    branches = [b for b in entry["automorphisms"] if _eval(b["condition"], env)]
    if not branches:
        raise CatalogError(f"no table entry for automorphisms of {id}")
    return AutomorphismFamily(algebra_id=id, branches=branches)


def known_generating_subspace(id: AlgebraId) -> KnownSubspace | None:
    """The generating 2D subspace exhibited in the proofs, if one exists."""
    entry = _family_entry(id)
    ks = entry["known_subspace"]
    if ks is None or not _eval(ks["condition"], id.params):
        return None
    span = [np.array([float(x) for x in vec]) for vec in ks["span"]]
    return KnownSubspace(algebra=id, span=span, provenance=ks["provenance"])


def list_families() -> list[str]:
    return list(FAMILIES)


def default_id(family: str, alpha: float | None = None, beta: float | None = None) -> AlgebraId:
    """AlgebraId with representative parameters filled in where needed."""
    family = _normalize_family(family)
    defaults = {
        "g3.4+g1": (0.5, None),
        "g3.5+g1": (0.5, None),
        "g4.2": (2.0, None),
        "g4.5": (0.25, 0.5),
        "g4.6": (1.0, 0.5),
        "g4.8": (0.5, None),
        "g4.9": (0.5, None),
    }
    d_alpha, d_beta = defaults.get(family, (None, None))
    return AlgebraId(
        family,
        alpha if alpha is not None else d_alpha,
        beta if beta is not None else d_beta,
    )


def verify_automorphism(alg: StructureConstants, m: AutomorphismMatrix, tol: float = 1e-10) -> bool:
    return automorphism_defect(alg, m.m) <= tol
