"""JSON job runner: ``igusa run job.json`` (or ``-`` for stdin).

A job is one JSON object with a ``"kind"`` and its payload; the report is
printed as JSON, or as its text/LaTeX rendering with ``--format``.  Exit
status is 0 for ``ok``, 1 for a verification ``fail`` and 2 for ``error``.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

import jsonschema

from .fan import Cone, subdivision_subordinated
from .lattice import Facet, newton_polyhedron
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    CountTable,
    PolyMap,
    count_table,
    max_depth_table,
    verify,
)
from .ratfn import ZetaFunction
from .zeta import (
    CandidatePole,
    ChartDatum,
    MonomialAlgebraicSet,
    MonomialIntegralSpec,
    NormConstancyWarning,
    NumericalDatum,
    assemble_zeta,
    candidate_poles,
    monomial_integral,
    monomial_set_zeta,
    validate_norm_constancy,
)

__all__ = ["JobError", "run", "main", "parse_result", "SCHEMAS"]

EXIT = {"ok": 0, "fail": 1, "error": 2}

# integers travel as JSON numbers or as decimal strings of any length
_INT = {"type": ["integer", "string"], "pattern": r"^-?[0-9]+$"}
_NAT = {"type": ["integer", "string"], "pattern": r"^[0-9]+$", "minimum": 0}
_Q = {"type": ["integer", "string"], "pattern": r"^[0-9]+$", "minimum": 2}
_RAT = {"type": ["integer", "string"], "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_VEC = {"type": "array", "items": _NAT}
_MAT = {"type": "array", "minItems": 1, "items": _VEC}
_POLYS = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "minItems": 1,
        "items": {
            "type": "object",
            "required": ["c", "e"],
            "properties": {"c": _INT, "e": _VEC},
            "additionalProperties": False,
        },
    },
}
_SEED = _NAT
_ZETA = {
    "type": "object",
    "required": ["q", "num", "den"],
    "properties": {
        "q": _Q,
        "num": {"type": "array", "items": {"type": "array", "prefixItems": [_NAT, _RAT], "minItems": 2, "maxItems": 2}},
        "den": {"type": "array", "items": {"type": "array", "items": _NAT, "minItems": 2, "maxItems": 2}},
    },
}


def _obj(required: Sequence[str], **props: Any) -> dict:
    return {
        "type": "object",
        "required": ["kind", *required],
        "properties": {"kind": {"type": "string"}, **props},
        "additionalProperties": False,
    }


SCHEMAS: dict[str, dict] = {
    "newton": _obj(["N"], N=_MAT, n=_NAT),
    "fan": _obj(["N"], N=_MAT, n=_NAT, seed=_SEED),
    "integral": _obj(["q", "N", "v"], n=_NAT, q=_Q, N=_MAT, v=_VEC, cval=_VEC, e0=_NAT, seed=_SEED),
    "zeta-monomial": _obj(
        ["q", "N"],
        n=_NAT,
        q=_Q,
        N=_MAT,
        g_supports={"type": "array", "items": {"type": "array", "items": _VEC}},
        formula={"enum": ["corrected", "literal"]},
        polys=_POLYS,
        seed=_SEED,
    ),
    "candidate-poles": _obj(
        ["numerical_data"],
        q=_Q,
        numerical_data={
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["N", "v"],
                "properties": {"N": _MAT, "v": _VEC},
                "additionalProperties": False,
            },
        },
    ),
    "assemble": _obj(
        ["q", "p", "charts"],
        q=_Q,
        p=_Q,
        seed=_SEED,
        charts={
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["N", "v", "center"],
                "properties": {
                    "phi": _RAT,
                    "eta": _NAT,
                    "N": _MAT,
                    "v": _VEC,
                    "cval": _VEC,
                    "e0": _NAT,
                    "center": {"type": "array", "items": _INT},
                },
                "additionalProperties": False,
            },
        },
    ),
    "oracle": _obj(["p", "polys"], p=_Q, jmax=_NAT, polys=_POLYS, n=_NAT),
    "verify": _obj(
        ["p", "polys"],
        p=_Q,
        jmax=_NAT,
        polys=_POLYS,
        n=_NAT,
        engine={"type": "object", "required": ["kind"]},
        zeta=_ZETA,
    ),
}


class JobError(ValueError):
    """A job that does not match its schema; ``pointer`` locates the field."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer


def _pointer(path: Sequence) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def validate(job: Any, prefix: str = "") -> None:
    if not isinstance(job, dict):
        raise JobError("job must be a JSON object", prefix)
    kind = job.get("kind")
    if kind not in SCHEMAS:
        raise JobError(f"unknown kind {kind!r}", prefix + "/kind")
    v = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errs = sorted(v.iter_errors(job), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errs:
        e = errs[-1]
        raise JobError(e.message, prefix + _pointer(e.absolute_path))
    if kind == "verify":
        if ("engine" in job) == ("zeta" in job):
            raise JobError("verify needs exactly one of 'engine' or 'zeta'", prefix)
        if "engine" in job:
            validate(job["engine"], prefix + "/engine")
            if job["engine"]["kind"] not in ("integral", "zeta-monomial", "assemble"):
                raise JobError("engine job must produce a zeta function", prefix + "/engine/kind")


def _i(x: Any) -> int:
    return int(x)


def _mat(rows: Sequence[Sequence[Any]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(_i(x) for x in r) for r in rows)


def _polys(job: Mapping) -> PolyMap:
    n = _i(job["n"]) if "n" in job else None
    try:
        return PolyMap.from_json(job["polys"], n)
    except ValueError as e:
        raise JobError(str(e), "/polys") from None


def _dims(job: Mapping, N: Sequence[Sequence[int]], key: str = "N") -> int:
    n = _i(job["n"]) if "n" in job else len(N[0])
    for i, r in enumerate(N):
        if len(r) != n:
            raise JobError(f"expected {n} exponents", f"/{key}/{i}")
    return n


class _Ctx:
    def __init__(self, seed: int | None, budget: int, validate_depth: int | None):
        self.seed = seed
        self.budget = budget
        self.validate_depth = validate_depth
        self.warnings: list[str] = []
        self.status = "ok"

    def seed_for(self, job: Mapping) -> int:
        if self.seed is not None:
            return self.seed
        return _i(job.get("seed", 0))


def _zeta_payload(Z: ZetaFunction) -> tuple[dict, dict]:
    return Z.to_json(), {"text": Z.text(), "latex": Z.latex()}


def _run_newton(job: Mapping, ctx: _Ctx):
    N = _mat(job["N"])
    n = _dims(job, N)
    P = newton_polyhedron(N, n)
    res = {
        "n": n,
        "facets": [{"normal": list(f.normal), "offset": f.offset} for f in P.facets],
        "vertices": [list(v) for v in P.vertices],
    }
    lines = [" + ".join(f"{a}*x{j + 1}" for j, a in enumerate(f.normal) if a) + f" >= {f.offset}" for f in P.facets]
    latex = r" \\ ".join(
        " + ".join(f"{a} x_{{{j + 1}}}" for j, a in enumerate(f.normal) if a) + rf" \geq {f.offset}" for f in P.facets
    )
    return res, {"text": "\n".join(lines), "latex": latex}


def _run_fan(job: Mapping, ctx: _Ctx):
    N = _mat(job["N"])
    n = _dims(job, N)
    F = subdivision_subordinated(newton_polyhedron(N, n), ctx.seed_for(job))
    cones = []
    for c in F.cones:
        cones.append(
            {
                "generators": [list(g) for g in c.generators],
                "face": {
                    "generators": sorted(list(g) for g in c.face.generators_on_face),
                    "directions": sorted(c.face.directions),
                },
            }
        )
    res = {"n": n, "rays": [list(r) for r in F.rays()], "cones": cones}
    text = "\n".join("cone(" + ", ".join(str(tuple(g)) for g in c.generators) + ")" for c in F.cones)
    latex = r" \\ ".join(
        r"\langle " + ", ".join(str(tuple(g)) for g in c.generators) + r" \rangle" for c in F.cones
    )
    return res, {"text": text, "latex": latex}


def _run_integral(job: Mapping, ctx: _Ctx):
    N = _mat(job["N"])
    n = _dims(job, N)
    v = tuple(_i(x) for x in job["v"])
    if len(v) != n:
        raise JobError(f"expected {n} entries", "/v")
    cval = tuple(_i(x) for x in job.get("cval", ()))
    if cval and len(cval) != len(N):
        raise JobError("cval needs one entry per component", "/cval")
    spec = MonomialIntegralSpec(N, v, cval, _i(job.get("e0", 0)))
    return _zeta_payload(monomial_integral(spec, _i(job["q"]), ctx.seed_for(job)))


def _run_zeta_monomial(job: Mapping, ctx: _Ctx):
    N = _mat(job["N"])
    _dims(job, N)
    q = _i(job["q"])
    gs = tuple(tuple(tuple(_i(x) for x in m) for m in s) for s in job.get("g_supports", ()))
    V = MonomialAlgebraicSet(N, gs)
    validated = False
    if not V.is_pure and ctx.validate_depth is not None:
        if "polys" not in job:
            raise JobError("the norm-constancy validator needs 'polys'", "/polys")
        bad = validate_norm_constancy(_polys(job), N, q, ctx.validate_depth)
        if bad is not None:
            ctx.status = "fail"
            ctx.warnings.append(f"norm-constancy fails at x = {list(bad)} mod {q}^{ctx.validate_depth}")
        validated = True
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NormConstancyWarning)
        Z = monomial_set_zeta(V, q, job.get("formula", "corrected"), ctx.seed_for(job), validated)
    ctx.warnings.extend(str(w.message) for w in caught)
    return _zeta_payload(Z)


def _poles_json(cs: Sequence[CandidatePole]) -> list[dict]:
    return [{"realpart": str(c.realpart), "period": c.period} for c in cs]


def _run_candidate_poles(job: Mapping, ctx: _Ctx):
    data = []
    for i, d in enumerate(job["numerical_data"]):
        N = _mat(d["N"])
        v = tuple(_i(x) for x in d["v"])
        if any(len(r) != len(v) for r in N):
            raise JobError("N and v dimensions differ", f"/numerical_data/{i}")
        data.append(NumericalDatum(N, v))
    cs = candidate_poles(data, _i(job["q"]) if "q" in job else None)
    text = ", ".join(f"{c.realpart} (period {c.period})" for c in cs)
    latex = ", ".join(rf"{_latex_frac(c.realpart)} + \frac{{2\pi i}}{{{c.period}\log q}}\mathbb{{Z}}" for c in cs)
    return _poles_json(cs), {"text": text, "latex": latex}


def _latex_frac(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    sign = "-" if r < 0 else ""
    return rf"{sign}\frac{{{abs(r.numerator)}}}{{{r.denominator}}}"


def _run_assemble(job: Mapping, ctx: _Ctx):
    charts = []
    for i, ch in enumerate(job["charts"]):
        N = _mat(ch["N"])
        v = tuple(_i(x) for x in ch["v"])
        center = tuple(_i(x) for x in ch["center"])
        if any(len(r) != len(v) for r in N) or len(center) != len(v):
            raise JobError("inconsistent dimensions", f"/charts/{i}")
        cval = tuple(_i(x) for x in ch.get("cval", ()))
        spec = MonomialIntegralSpec(N, v, cval, _i(ch.get("e0", 0)))
        charts.append(ChartDatum(Fraction(ch.get("phi", 1)), _i(ch.get("eta", 0)), spec, center))
    Z = assemble_zeta(charts, _i(job["q"]), _i(job["p"]), ctx.seed_for(job))
    return _zeta_payload(Z)


def _table(job: Mapping, ctx: _Ctx) -> CountTable:
    f = _polys(job)
    p = _i(job["p"])
    if "jmax" in job:
        return count_table(f, p, _i(job["jmax"]), ctx.budget)
    return max_depth_table(f, p, ctx.budget)


def _run_oracle(job: Mapping, ctx: _Ctx):
    T = _table(job, ctx)
    res = {"p": T.p, "n": T.n, "counts": list(T.counts)}
    text = " ".join(f"N_{j}={c}" for j, c in enumerate(T.counts))
    latex = ", ".join(f"N_{{{j}}} = {c}" for j, c in enumerate(T.counts))
    return res, {"text": text, "latex": latex}


def _run_verify(job: Mapping, ctx: _Ctx):
    if "engine" in job:
        inner, _ = _RUNNERS[job["engine"]["kind"]](job["engine"], ctx)
        Z = ZetaFunction.from_json(inner)
    else:
        Z = ZetaFunction.from_json(job["zeta"])
    f = _polys(job)
    p = _i(job["p"])
    jmax = _i(job["jmax"]) if "jmax" in job else None
    rep = verify(Z, f, p, jmax, ctx.budget)
    if not rep.passed:
        ctx.status = "fail"
    res = rep.to_json()
    text = f"{rep.status} to order {rep.order}"
    if rep.first_mismatch is not None:
        i = rep.first_mismatch
        text += f"; t^{i}: engine {rep.engine[i]}, oracle {rep.oracle[i]}"
    return res, {"text": text, "latex": rf"\text{{{text}}}"}


_RUNNERS: dict[str, Callable[[Mapping, _Ctx], tuple[Any, dict]]] = {
    "newton": _run_newton,
    "fan": _run_fan,
    "integral": _run_integral,
    "zeta-monomial": _run_zeta_monomial,
    "candidate-poles": _run_candidate_poles,
    "assemble": _run_assemble,
    "oracle": _run_oracle,
    "verify": _run_verify,
}


def run(
    job: Any,
    seed: int | None = None,
    budget: int = DEFAULT_BUDGET,
    validate_depth: int | None = None,
) -> dict:
    """Validate and execute one job, returning the report document."""
    ctx = _Ctx(seed, budget, validate_depth)
    try:
        validate(job)
        result, render = _RUNNERS[job["kind"]](job, ctx)
    except JobError as e:
        return {"status": "error", "error": {"message": str(e), "pointer": e.pointer}, "warnings": ctx.warnings}
    except BudgetExceeded as e:
        return {
            "status": "error",
            "error": {"message": str(e), "pointer": "/jmax", "needed": e.needed, "budget": e.budget},
            "warnings": ctx.warnings,
        }
    except (ValueError, ZeroDivisionError) as e:
        return {"status": "error", "error": {"message": str(e), "pointer": ""}, "warnings": ctx.warnings}
    return {"status": ctx.status, "result": result, "render": render, "warnings": ctx.warnings}


def parse_result(kind: str, result: Any) -> Any:
    """Inverse of the report serialization for each job kind."""
    if kind in ("integral", "zeta-monomial", "assemble"):
        return ZetaFunction.from_json(result)
    if kind == "newton":
        return tuple(Facet(tuple(f["normal"]), f["offset"]) for f in result["facets"])
    if kind == "fan":
        return tuple(Cone(tuple(tuple(g) for g in c["generators"])) for c in result["cones"])
    if kind == "candidate-poles":
        return [CandidatePole(Fraction(c["realpart"]), int(c["period"])) for c in result]
    if kind == "oracle":
        return CountTable(int(result["p"]), int(result["n"]), tuple(int(c) for c in result["counts"]))
    if kind == "verify":
        return result
    raise ValueError(f"unknown kind {kind!r}")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="igusa", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="execute one JSON job")
    r.add_argument("job", nargs="?", default="-", help="job file, or - for stdin")
    r.add_argument("--format", choices=("json", "text", "latex"), default="json")
    r.add_argument("--seed", type=int, default=None, help="fan tie-break selector")
    r.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="residue evaluations allowed")
    r.add_argument("--validate-norm-constancy", type=int, metavar="DEPTH", default=None)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.job == "-":
            job = json.load(sys.stdin)
        else:
            with open(args.job, encoding="utf-8") as fh:
                job = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        report = {"status": "error", "error": {"message": str(e), "pointer": ""}, "warnings": []}
    else:
        report = run(job, args.seed, args.budget, args.validate_norm_constancy)
    if args.format == "json" or "render" not in report:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(report["render"][args.format] + "\n")
        for w in report["warnings"]:
            sys.stderr.write(f"warning: {w}\n")
    return EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
