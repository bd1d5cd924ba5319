"""Command-line front end.

Every command prints either a short text report or a JSON document with
sorted keys (``--format structured``).  Errors map to distinct exit codes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .brieskorn import connection, eta_element, nabla_eta, reduce_n_form
from .errors import AffineHodgeError, ParseError
from .hodge import (
    compute_d_beta, compute_d_beta_with_retry, fermat_hodge_lattice, hodge_basis,
    hodge_cycle_criterion,
)
from .linalg import PolyElimination
from .milnor import milnor_data, milnor_summary
from .numeric import Q, qstr
from .parse import infer_variables, parse_form, parse_polynomial
from .picard_fuchs import picard_fuchs
from .polyforms import MPoly, Weights, eta_form

SCHEMA = "affinehodge-report/1"
COMMANDS = (
    "tame-check", "milnor", "connection", "hodge-basis", "hodge-criterion",
    "picard-fuchs", "fermat",
)


@dataclass
class JobSpec:
    command: str
    polynomial: str | None = None
    weights: tuple | None = None
    variables: tuple | None = None
    b: str | None = None
    form: str = "1"
    exponents: tuple | None = None
    symbolic_dbeta: bool = False


def _label(beta) -> str:
    return "".join(map(str, beta))


def _weights_for(f: MPoly, alphas) -> Weights:
    alphas = tuple(alphas) if alphas else (1,) * f.nvars
    if len(alphas) != f.nvars:
        raise ParseError(f"{len(alphas)} weights given for {f.nvars} variables")
    d = max(sum(a * e for a, e in zip(alphas, exp)) for exp in f.terms)
    return Weights(alphas, d)


def _parse_input(job: JobSpec):
    if job.polynomial is None:
        raise ParseError("a polynomial is required for this command")
    names = list(job.variables) if job.variables else infer_variables(job.polynomial)
    f = parse_polynomial(job.polynomial, names)
    if not f:
        raise ParseError("the polynomial is zero")
    return f, names


def _dbeta(data, job: JobSpec):
    if job.b is None:
        return compute_d_beta_with_retry(data, 1, symbolic=job.symbolic_dbeta)
    return compute_d_beta(data, Q(job.b), symbolic=job.symbolic_dbeta)


def _det_text(M) -> str:
    rows = [{j: x for j, x in enumerate(row) if x} for row in M]
    return str(PolyElimination(rows, len(M)).run().determinant())


def run(job: JobSpec) -> dict:
    """Execute a job and return the structured report (without the envelope)."""
    if job.command == "fermat":
        if not job.exponents:
            raise ParseError("fermat needs --exponents m1,m2,...")
        fp = fermat_hodge_lattice(job.exponents)
        out = fp.to_dict()
        out["verified"] = fp.verify()
        return {"result": out}

    f, names = _parse_input(job)
    w = _weights_for(f, job.weights)
    data = milnor_data(f, w)
    report = {
        "input": {
            "polynomial": f.to_str(names),
            "variables": names,
            "weights": list(w.alphas),
            "degree": w.degree_d,
        },
        "milnor": milnor_summary(data, names),
    }
    cmd = job.command
    if cmd == "tame-check":
        result = {"tame": True, "mu": data.mu, "S": str(data.S)}
    elif cmd == "milnor":
        result = milnor_summary(data, names)
        result["A_table"] = {_label(b): qstr(a) for b, a in zip(data.I, data.A)}
    elif cmd == "connection":
        conn = connection(data)
        result = conn.to_dict()
        result["det_M"] = _det_text(conn.M)
    elif cmd == "hodge-basis":
        dmap = _dbeta(data, job)
        rep = hodge_basis(data, connection(data), dmap)
        result = {"d_beta": dmap.to_dict(), **rep.to_dict()}
    elif cmd == "hodge-criterion":
        dmap = _dbeta(data, job)
        crit = hodge_cycle_criterion(data, connection(data), dmap)
        result = {"d_beta": dmap.to_dict(), **crit.to_dict(data)}
    elif cmd == "picard-fuchs":
        conn = connection(data)
        k, P = parse_form(job.form, names)
        e = reduce_n_form(eta_form(w).mul(P), data, conn)
        for _ in range(k):
            e = nabla_eta(e, conn)
        pf = picard_fuchs(e, data, conn)
        result = {"form": job.form, "element": eta_element(e).to_dict(), **pf.to_dict(),
                  "equation": pf.to_text()}
    else:
        raise ParseError(f"unknown command {cmd!r}")
    report["result"] = result
    return report


def envelope(job: JobSpec, body: dict) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": job.command, **body}


def render_text(job: JobSpec, rep: dict) -> str:
    lines = []
    r = rep["result"]
    if "milnor" in rep:
        m = rep["milnor"]
        lines.append(f"f = {rep['input']['polynomial']}  weights {rep['input']['weights']}")
        lines.append(f"mu = {m['mu']}  S(t) = {m['S']}")
    cmd = job.command
    if cmd == "tame-check":
        lines.append("tame: yes")
    elif cmd == "milnor":
        for b, a in r["A_table"].items():
            lines.append(f"  x^{b}  A = {a}")
        for i, p in enumerate(r["eta_f"], 1):
            lines.append(f"  p{i} = {p}")
    elif cmd == "connection":
        lines.append(f"det M(t) = {r['det_M']}")
        for i, row in enumerate(r["Nabla_eta"]):
            nz = [f"[{j}] {x}" for j, x in enumerate(row) if x != "0"]
            lines.append(f"  row {i}: " + ", ".join(nz))
    elif cmd == "hodge-basis":
        lines.append(f"d_beta at b = {r['d_beta']['b']}: sum {r['d_beta']['sum']}")
        for weight, byk in sorted(r["entries"].items(), reverse=True):
            for k, items in sorted(byk.items()):
                labels = " ".join(f"({it['beta']},{k})" for it in items)
                lines.append(f"  weight {weight}, k = {k}: {len(items)}  {labels}")
    elif cmd == "hodge-criterion":
        lines.append(f"I_h = {[(it['beta'], it['k']) for it in r['I_h']]}")
        for it in r["I_h"]:
            for b, p in it["cleared"].items():
                lines.append(f"  ({p}) * int x^{b} eta")
    elif cmd == "picard-fuchs":
        lines.append(f"form {r['form']}: order {r['order']}")
        lines.append("  " + r["equation"])
    elif cmd == "fermat":
        lines.append(f"m = {r['m']}  N = {r['N']}  mu = {r['mu']}  I_h = {r['I_h']}")
        lines.append(f"kernel dimension {r['kernel_dimension']}  verified {r['verified']}")
    return "\n".join(lines)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="affinehodge",
        description="Brieskorn modules, Gauss-Manin connections and Hodge data of tame polynomials",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("polynomial", nargs="?", help="e.g. 'x1^3+x2^3-x1'")
    p.add_argument("--weights", type=_int_list, help="a1,a2,... (default all 1)")
    p.add_argument("--vars", help="comma-separated variable names, e.g. x,y")
    p.add_argument("--b", help="rational value for the d_beta search (default 1, with retries)")
    p.add_argument("--form", default="1", help="P (meaning P*eta) or nabla^k(P)")
    p.add_argument("--exponents", type=_int_list, help="m1,m2,... for the fermat command")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--symbolic-dbeta", action="store_true",
                   help="also compute the exceptional polynomial over Q(t)")
    p.add_argument("--version", action="version", version=__version__)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(
        command=args.command,
        polynomial=args.polynomial,
        weights=args.weights,
        variables=tuple(v.strip() for v in args.vars.split(",")) if args.vars else None,
        b=args.b,
        form=args.form,
        exponents=args.exponents,
        symbolic_dbeta=args.symbolic_dbeta,
    )
    try:
        rep = run(job)
    except AffineHodgeError as exc:
        body = {"error": {"code": exc.code, "message": str(exc)}}
        if args.format == "structured":
            print(json.dumps(envelope(job, body), sort_keys=True, indent=2))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        body = {"error": {"code": "invalid-input", "message": str(exc)}}
        if args.format == "structured":
            print(json.dumps(envelope(job, body), sort_keys=True, indent=2))
        else:
            print(f"error [invalid-input]: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        print(json.dumps(envelope(job, rep), sort_keys=True, indent=2))
    else:
        print(render_text(job, rep))
    return 0


if __name__ == "__main__":
    sys.exit(main())
