"""Batch front-end: catalog queries, verification suites, classification
reports, ODE trajectory dumps and config sweeps.

Exit codes: 0 ok, 2 usage error, 3 catalog data corruption, 4 the
configured subspace does not generate.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import sys

import numpy as np

from . import adjoint, extremal
from .catalog import (
    AlgebraId,
    CatalogCorruptError,
    CatalogError,
    automorphism_family,
    default_id,
    instantiate,
    known_generating_subspace,
    list_families,
    verify_automorphism,
)
from .lie import jacobi_defect
from .seminorm import BodyError, body_from_config, body_to_config
from .subspace import Subspace, SubspaceError, canonical_basis, check_prop2, generates

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CORRUPT = 3
EXIT_NON_GENERATING = 4


class UsageError(ValueError):
    pass


class NonGeneratingError(ValueError):
    pass


def _emit(data, out: str | None):
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _algebra_id(spec) -> AlgebraId:
    if isinstance(spec, str):
        return default_id(spec)
    try:
        return default_id(spec["family"], spec.get("alpha"), spec.get("beta"))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad algebra spec: {exc}") from exc


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc


def _subspace(alg, alg_id: AlgebraId, spec) -> Subspace:
    if spec == "known":
        ks = known_generating_subspace(alg_id)
        if ks is None:
            raise NonGeneratingError(f"no known generating subspace for {alg_id}")
        return Subspace(alg, np.stack(ks.span))
    try:
        rows = np.asarray(spec, dtype=float)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad subspace spec: {exc}") from exc
    return Subspace(alg, rows)


def _vec(x) -> list:
    return [float(v) for v in np.asarray(x).ravel()]


def cmd_catalog(args) -> int:
    if args.action == "list":
        _emit({"families": list_families()}, args.out)
        return EXIT_OK
    alg_id = default_id(args.id, args.alpha, args.beta)
    alg = instantiate(alg_id)
    ks = known_generating_subspace(alg_id)
    try:
        n_branches = len(automorphism_family(alg_id).branches)
    except CatalogError:
        n_branches = 0
    _emit(
        {
            "id": str(alg_id),
            "brackets": [
                {"i": i, "j": j,
                 "value": [float(comps.get(k, 0.0)) for k in range(1, 5)]}
                for i, j, comps in alg.nonzero_brackets()
            ],
            "jacobi_defect": jacobi_defect(alg),
            "automorphism_branches": n_branches,
            "known_subspace": None if ks is None else [_vec(v) for v in ks.span],
        },
        args.out,
    )
    return EXIT_OK


def _verify_one(alg_id: AlgebraId, rng: np.random.Generator) -> dict:
    alg = instantiate(alg_id)
    res = {"id": str(alg_id), "jacobi_defect": jacobi_defect(alg)}
    ok = res["jacobi_defect"] <= 1e-12
    try:
        fam = automorphism_family(alg_id)
        defects = []
        for _ in range(20):
            m = fam.sample(rng)
            defects.append(0.0 if verify_automorphism(alg, m) else 1.0)
        res["automorphism_failures"] = int(sum(defects))
        ok = ok and not sum(defects)
    except CatalogError:
        res["automorphism_failures"] = None
    ks = known_generating_subspace(alg_id)
    if ks is not None:
        p = Subspace(alg, np.stack(ks.span))
        gen = generates(alg, p)
        res["generates"] = bool(gen)
        res["generation_dims"] = list(gen.dims)
        if gen:
            res["prop2_defect"] = check_prop2(canonical_basis(alg, p))
            ok = ok and res["prop2_defect"] <= 1e-9
        ok = ok and bool(gen)
    else:
        res["generates"] = None
    res["pass"] = ok
    return res


_VERIFY_IDS = [
    "g3.1+g1", "g3.2+g1", "g3.3+g1", "g3.4+g1", "g3.5+g1", "g3.6+g1",
    "g3.7+g1", "g4.1", "g4.2", "g4.3", "g4.4", "g4.5", "g4.6", "g4.7",
    "g4.8", "g4.9", "g4.10",
]


def cmd_verify(args) -> int:
    rng = np.random.default_rng(0)
    if args.scope == "all":
        ids = [default_id(f) for f in _VERIFY_IDS]
    else:
        ids = [default_id(args.scope, args.alpha, args.beta)]
    results = [_verify_one(i, rng) for i in ids]
    all_pass = all(r["pass"] for r in results)
    _emit({"results": results, "pass": all_pass}, args.out)
    return EXIT_OK if all_pass else 1


def _classify_report(cfg: dict) -> dict:
    alg_id = _algebra_id(cfg.get("algebra"))
    alg = instantiate(alg_id)
    p = _subspace(alg, alg_id, cfg.get("subspace", "known"))
    gen = generates(alg, p)
    report: dict = {
        "config": {
            "algebra": {"family": alg_id.family, "alpha": alg_id.alpha, "beta": alg_id.beta},
            "subspace": [_vec(v) for v in p.basis],
        },
        "generates": bool(gen),
        "generation_dims": list(gen.dims),
    }
    if not gen:
        raise NonGeneratingError(json.dumps(report, sort_keys=True))
    if p.dim == 3:
        d3 = extremal.classify_dim3(alg, p)
        report["dim3"] = {
            "exists": d3.exists,
            "p1": None if d3.p1 is None else _vec(d3.p1),
            "verdict": None if d3.verdict is None else d3.verdict.value,
        }
        return report
    body = body_from_config(cfg.get("body", {"disk": {"radius": 1.0}}))
    report["config"]["body"] = body_to_config(body)
    basis = canonical_basis(alg, p)
    report["canonical"] = {
        "e1": _vec(basis.e1), "e2": _vec(basis.e2),
        "e3": _vec(basis.e3), "e4": _vec(basis.e4),
        "c23": _vec(basis.c23),
    }
    report["extremals"] = [
        {"s": d.s, "velocity": _vec(d.velocity), "label": d.label}
        for d in extremal.abnormal_extremals(alg, p, body)
    ]
    disp = extremal.theorem3_dispatch(alg_id, p, body)
    report["classification"] = {
        "directions": {
            str(s): {
                "verdict": d.verdict.value,
                "reason": d.reason.value,
                "witness": d.witness,
                "pmp_max": d.pmp_max,
            }
            for s, d in disp.report.directions.items()
        },
        "verdict": disp.criterion_verdict.value,
        "oracle_verdict": disp.oracle_verdict.value,
        "summary_case": disp.case,
        "summary_verdict": None if disp.summary_verdict is None else disp.summary_verdict.value,
        "consistent": disp.consistent,
        "flagged_tension": disp.flagged_tension,
        "sl2_type": disp.sl2_type,
    }
    return report


def cmd_classify(args) -> int:
    cfg = _load_config(args.config)
    report = _classify_report(cfg)
    _emit(report, args.out)
    if args.expect:
        if "dim3" in report:
            got = report["dim3"]["verdict"] or ""
            want = {"strict": "strict", "nonstrict": "non-strict"}[args.expect]
            return EXIT_OK if got.startswith(want) else 1
        got = report["classification"]["verdict"]
        want = {"strict": "strict", "nonstrict": "non-strict"}[args.expect]
        return EXIT_OK if got == want else 1
    return EXIT_OK


def cmd_ode(args) -> int:
    cfg = _load_config(args.config)
    alg_id = _algebra_id(cfg.get("algebra"))
    alg = instantiate(alg_id)
    p = _subspace(alg, alg_id, cfg.get("subspace", "known"))
    if not generates(alg, p):
        raise NonGeneratingError("subspace does not generate")
    body = body_from_config(cfg.get("body", {"disk": {"radius": 1.0}}))
    basis = canonical_basis(alg, p)
    s = int(cfg.get("options", {}).get("s", 1))
    u2 = s / body.gauge((0.0, float(s)))
    if args.psi0:
        psi0 = [float(x) for x in args.psi0.split(",")]
        if len(psi0) != 4:
            raise UsageError("--psi0 needs 4 comma-separated values")
    else:
        psi0 = [0.0, 1.0 / u2, 0.0, 1.0]
    traj = adjoint.integrate(basis.c23[:3], u2, psi0, args.T, args.dt)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "psi1", "psi2", "psi3", "psi4"])
            for t, row in zip(traj.t, traj.psi):
                w.writerow([f"{t:.10g}"] + [f"{x:.12g}" for x in row])
    print(json.dumps(
        {
            "kernel": adjoint.KERNEL,
            "max_deviation": traj.max_deviation,
            "n_steps": len(traj.t) - 1,
            "u2": u2,
        },
        indent=2, sort_keys=True,
    ))
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    jobs = cfg.get("jobs")
    if not isinstance(jobs, list):
        raise UsageError("sweep config needs a 'jobs' list")
    results = []
    with concurrent.futures.ThreadPoolExecutor() as pool:
        futures = [pool.submit(_classify_report, job) for job in jobs]
        for i, fut in enumerate(futures):
            try:
                results.append({"job": i, "report": fut.result()})
            except NonGeneratingError:
                results.append({"job": i, "error": "subspace does not generate"})
    _emit({"results": results}, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abnorm")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list families or show one algebra")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("id", nargs="?")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("verify", help="run consistency suites")
    p.add_argument("scope", help="'all' or a family id")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("classify", help="classify a configured extremal")
    p.add_argument("--config", required=True)
    p.add_argument("--expect", choices=["strict", "nonstrict"])
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("ode", help="dump a covector trajectory")
    p.add_argument("--config", required=True)
    p.add_argument("--psi0")
    p.add_argument("-T", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_ode)

    p = sub.add_parser("sweep", help="run many classify jobs concurrently")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_sweep)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except CatalogCorruptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except NonGeneratingError as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_NON_GENERATING
    except (UsageError, CatalogError, SubspaceError, BodyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
