"""Command line front end: ``epsdens <command> -i ideal.json``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .config import FitConfig, default_threads
from .core import MonomialIdeal, RingDescriptor, format_monomial, minimalize, parse_monomial
from .density import (
    closure_invariance_check,
    density_report,
    diagonal_multiplicity,
    epsilon_from,
    harvest_saturated_bidegrees,
    mixed_multiplicities,
    ordinary_run,
    saturated_run,
    value_json,
)
from .errors import EpsdensError, FitFailure, InputError, StructuralError, UnverifiedRegionError
from .hilbert import fit_binumerator
from .ideals import detect_saturation_stabilization, ordinary_spec
from .polys import format_fraction
from .vpf import VPMatrix, chambers, period, phi_table

DEFAULT_VPF_TABLE = (12, 6)

COMMANDS = (
    "density",
    "sat-density",
    "epsilon",
    "invariants",
    "diag",
    "mixed",
    "vpf",
    "series",
    "sample",
    "check-closure",
)


@dataclass
class JobSpec:
    command: str
    input: Optional[str] = None
    matrix: Optional[str] = None
    output: Optional[str] = None
    csv: Optional[str] = None
    n_max: int = 48
    k_max: int = 4
    degree: Optional[int] = None
    offset_kmax: int = 8
    direct_n_max: Optional[int] = None
    step: str = "1/20"
    to: Optional[str] = None
    function: str = "ord"
    p: Optional[int] = None
    q: Optional[int] = None
    at: Optional[tuple[int, int]] = None
    table: Optional[tuple[int, int]] = None
    box: Optional[tuple[int, int]] = None
    saturated: bool = False
    threads: int = 1
    verify: bool = False

    def config(self) -> FitConfig:
        return FitConfig(
            n_max=self.n_max,
            k_max=self.k_max,
            degree=self.degree,
            offset_kmax=self.offset_kmax,
            direct_n_max=self.direct_n_max,
            threads=self.threads,
        )

    def echo(self) -> dict:
        """The resolved job, minus settings that cannot change the result."""
        out = asdict(self)
        for key in ("threads", "output", "csv"):
            out.pop(key)
        return out


# -- parsing ------------------------------------------------------------------


def _monomials(texts, names, what: str):
    if not isinstance(texts, list):
        raise InputError(f"{what} must be a list of monomial strings")
    out = []
    for k, t in enumerate(texts):
        if not isinstance(t, str):
            raise InputError(f"{what}[{k}] is not a string")
        try:
            out.append(parse_monomial(t, names))
        except InputError as exc:
            raise InputError(f"{what}[{k}]: {exc}") from None
    return out


def parse_ideal(text: str) -> tuple[RingDescriptor, MonomialIdeal]:
    """Parse {"vars": [...], "gens": [...], "quotient": [...]} into ring and ideal."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError("the ideal file must hold a JSON object")
    names = data.get("vars")
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise InputError("'vars' must be a nonempty list of variable names")
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise InputError(f"duplicate variables: {dup}")
    gens = data.get("gens")
    if not gens:
        raise InputError("'gens' must be a nonempty list")
    poly = RingDescriptor(len(names), tuple(names))
    quotient = None
    if data.get("quotient"):
        quotient = minimalize(_monomials(data["quotient"], names, "quotient"), poly)
    ring = RingDescriptor(len(names), tuple(names), quotient)
    return ring, minimalize(_monomials(gens, names, "gens"), ring)


def format_ideal(ring: RingDescriptor, I: MonomialIdeal) -> str:
    data = {"vars": list(ring.names), "gens": [format_monomial(g, ring.names) for g in I.generators]}
    if ring.quotient is not None:
        data["quotient"] = [format_monomial(g, ring.names) for g in ring.quotient.generators]
    return json.dumps(data)


def parse_matrix(text: str) -> VPMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid matrix JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return VPMatrix(int(data["r"]), tuple(tuple(int(x) for x in c) for c in data["columns"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"matrix needs fields r and columns: {exc}") from None


# -- commands -------------------------------------------------------------------


def _load(job: JobSpec):
    if not job.input:
        raise InputError(f"command {job.command} needs -i/--input")
    try:
        with open(job.input, encoding="utf-8") as fh:
            return parse_ideal(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {job.input}: {exc.strerror}") from None


def _verify_density(run) -> dict:
    """Diagonal fits inside every bounded interval, compared with the pieces."""
    f, d = run.density, run.d
    from .hilbert import oracle_for
    from .qpfit import diagonal_fit

    checks = []
    bps = f.breakpoints
    for a, b in zip(bps, bps[1:]):
        x = (a + b) / 2
        fit = diagonal_fit(oracle_for(run.spec), x.numerator, x.denominator, d - 1)
        val = d * fit.value / Fraction(x.denominator) ** (d - 1)
        checks.append({"x": format_fraction(x), "piece": format_fraction(f(x)), "diagonal": format_fraction(val), "ok": val == f(x)})
    return {"interval_midpoints": checks, "continuity": f.provenance.get("continuity", [])}


def _density_payload(f) -> dict:
    out = f.to_json()
    out["provenance"] = f.provenance
    return out


def _cmd_density(job: JobSpec, saturated: bool) -> dict:
    ring, I = _load(job)
    run = (saturated_run if saturated else ordinary_run)(ring, I, job.config())
    out = _density_payload(run.density)
    if job.verify:
        out["verification"] = _verify_density(run)
    return out


def _cmd_epsilon(job: JobSpec) -> dict:
    ring, I = _load(job)
    cfg = job.config()
    sat = saturated_run(ring, I, cfg).density
    ordn = ordinary_run(ring, I, cfg).density
    f_eps, eps = epsilon_from(sat, ordn)
    out = {
        "epsilon": format_fraction(eps),
        "f_epsilon": f_eps.to_json(),
        "f_saturated": sat.to_json(),
        "f_ordinary": ordn.to_json(),
        "provenance": {"saturated": sat.provenance, "ordinary": ordn.provenance},
    }
    if job.verify:
        from .density import epsilon_sequence

        seq = epsilon_sequence(I, [12, 24])
        out["verification"] = {"direct_sequence": {str(n): format_fraction(v) for n, v in zip([12, 24], seq)}}
    return out


def _cmd_invariants(job: JobSpec) -> dict:
    ring, I = _load(job)
    return density_report(ring, I, job.config()).to_json()


def _cmd_diag(job: JobSpec) -> dict:
    if job.p is None or job.q is None:
        raise InputError("diag needs --p and --q")
    ring, I = _load(job)
    e = diagonal_multiplicity(ring, I, job.p, job.q, job.config())
    return {"p": job.p, "q": job.q, "e": format_fraction(e)}


def _cmd_mixed(job: JobSpec) -> dict:
    ring, I = _load(job)
    e, inter = mixed_multiplicities(ring, I, job.config())
    return {"mixed": e, "intersection_numbers": inter}


def _cmd_vpf(job: JobSpec) -> dict:
    if not job.matrix:
        raise InputError("vpf needs -m/--matrix")
    M = parse_matrix(job.matrix)
    out = {
        "matrix": M.to_json(),
        "period": period(M),
        "chambers": [{"index": c.index, "rays": [list(r) for r in c.rays], "slopes": c.interval_json()} for c in chambers(M)],
    }
    if job.at is not None:
        m, n = job.at
        out["value"] = int(phi_table(M, m, n)[m, n]) if m >= 0 and n >= 0 else 0
    tbl = job.table if job.table is not None or job.at is not None else DEFAULT_VPF_TABLE
    if tbl is not None:
        mm, nn = tbl
        T = phi_table(M, mm, nn)
        out["table"] = [[int(T[m, n]) for m in range(mm + 1)] for n in range(nn + 1)]
    return out


def _cmd_series(job: JobSpec) -> dict:
    ring, I = _load(job)
    box = job.box or (40, 10)
    if job.saturated:
        spec = detect_saturation_stabilization(I, job.n_max, job.direct_n_max)
        c = spec.stabilization.c if spec.stabilization else 1
        bideg = sorted(harvest_saturated_bidegrees(I, min(c * job.k_max, spec.window)))
    else:
        spec = ordinary_spec(I)
        bideg = sorted((g.degree, 1) for g in I.generators)
    return fit_binumerator(spec, bideg, ring.var_count, box).to_json()


def _sample_rows(job: JobSpec):
    ring, I = _load(job)
    cfg = job.config()
    if job.function == "ord":
        f = ordinary_run(ring, I, cfg).density
    elif job.function == "sat":
        f = saturated_run(ring, I, cfg).density
    elif job.function == "eps":
        f = epsilon_from(saturated_run(ring, I, cfg).density, ordinary_run(ring, I, cfg).density)[0]
    else:
        raise InputError(f"unknown function {job.function!r}")
    step = _fraction(job.step, "--step")
    if step <= 0:
        raise InputError("--step must be positive")
    to = _fraction(job.to, "--to") if job.to is not None else f.breakpoints[-1] + 1
    return f, f.samples(step, to)


def _fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{flag} expects a rational like 1/20, got {text!r}") from None


def _approx(x) -> str:
    return f"{float(x):.12g}"


def render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "f", "x_approx", "f_approx"])
    for x, v in rows:
        exact = value_json(v)
        if isinstance(exact, dict):
            exact = json.dumps(exact, sort_keys=True)
        w.writerow([format_fraction(x), exact, _approx(x), _approx(v)])
    return buf.getvalue()


def _cmd_check_closure(job: JobSpec) -> dict:
    ring, I = _load(job)
    return closure_invariance_check(ring, I, job.config()).to_json()


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, tuple):
        return list(x)
    return value_json(x)


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(job: JobSpec) -> int:
    """Execute a job; returns the process exit status."""
    try:
        if job.command == "sample":
            f, rows = _sample_rows(job)
            text = render_csv(rows)
            _write(job.csv or job.output, text)
            return 0
        handlers = {
            "density": lambda: _cmd_density(job, False),
            "sat-density": lambda: _cmd_density(job, True),
            "epsilon": lambda: _cmd_epsilon(job),
            "invariants": lambda: _cmd_invariants(job),
            "diag": lambda: _cmd_diag(job),
            "mixed": lambda: _cmd_mixed(job),
            "vpf": lambda: _cmd_vpf(job),
            "series": lambda: _cmd_series(job),
            "check-closure": lambda: _cmd_check_closure(job),
        }
        if job.command not in handlers:
            raise InputError(f"unknown command {job.command!r}")
        payload = handlers[job.command]()
        payload["job"] = job.echo()
        _write(job.output, dumps(payload))
        if job.csv and job.command in ("density", "sat-density"):
            ring, I = _load(job)
            f = (saturated_run if job.command == "sat-density" else ordinary_run)(ring, I, job.config()).density
            to = _fraction(job.to, "--to") if job.to else f.breakpoints[-1] + 1
            _write(job.csv, render_csv(f.samples(_fraction(job.step, "--step"), to)))
        return 0
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except UnverifiedRegionError as exc:
        _write(job.output, dumps({"error": "unverified_region", "message": str(exc), "verified_window": exc.window, "job": job.echo()}))
        return 2
    except (FitFailure, StructuralError) as exc:
        kind = "fit_failure" if isinstance(exc, FitFailure) else "structural_error"
        _write(job.output, dumps({"error": kind, "message": str(exc), "diagnostics": exc.diagnostics, "job": job.echo()}))
        return 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epsdens", description="Exact density functions of monomial ideals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("-i", "--input", help="ideal JSON file {vars, gens, quotient?}")
    p.add_argument("-m", "--matrix", help='matrix JSON for vpf, e.g. {"r":1,"columns":[[2,1]]}')
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--csv", help="CSV sample output file")
    p.add_argument("--n-max", type=int, default=48, help="saturation verification window")
    p.add_argument("--k-max", type=int, default=4, help="saturated generator harvest depth (times c)")
    p.add_argument("--degree", type=int, default=None, help="override the fitted degree")
    p.add_argument("--offset-kmax", type=int, default=8, help="largest offset multiple tried")
    p.add_argument("--direct-n-max", type=int, default=None, help="direct saturations past the window (0 disables)")
    p.add_argument("--step", default="1/20", help="sample step (rational)")
    p.add_argument("--to", default=None, help="sample up to this x (rational)")
    p.add_argument("--function", choices=("ord", "sat", "eps"), default="ord", help="density sampled by 'sample'")
    p.add_argument("--p", type=int, help="numerator of the diagonal slope")
    p.add_argument("--q", type=int, help="denominator of the diagonal slope")
    p.add_argument("--at", type=int, nargs=2, metavar=("M", "N"), help="evaluate phi at (M, N)")
    p.add_argument("--table", type=int, nargs=2, metavar=("M", "N"), help="phi table up to (M, N)")
    p.add_argument("--box", type=int, nargs=2, metavar=("M", "N"), help="box for 'series'")
    p.add_argument("--saturated", action="store_true", help="'series' of the saturated filtration")
    p.add_argument("--threads", type=int, default=None, help="worker threads (env EPSDENS_THREADS)")
    p.add_argument("--verify", action="store_true", help="add independent cross-checks to the output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(
        command=args.command,
        input=args.input,
        matrix=args.matrix,
        output=args.output,
        csv=args.csv,
        n_max=args.n_max,
        k_max=args.k_max,
        degree=args.degree,
        offset_kmax=args.offset_kmax,
        direct_n_max=args.direct_n_max,
        step=args.step,
        to=args.to,
        function=args.function,
        p=args.p,
        q=args.q,
        at=tuple(args.at) if args.at else None,
        table=tuple(args.table) if args.table else None,
        box=tuple(args.box) if args.box else None,
        saturated=args.saturated,
        threads=args.threads if args.threads is not None else default_threads(),
        verify=args.verify,
    )
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
