"""Command-line front end.

Every command reads matrices as JSON (``{"field": ..., "rows": [...]}`` or
a bare list of rows together with ``--field``), from a path or ``-`` for
stdin, and prints exact results as JSON (default) or bracketed text.

Exit status: 0 on success, 1 when a proved claim shows violations
(``claims``, ``oracle``), 2 on parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .field import Field, FieldError
from .matrix import Matrix, ShapeError
from .oracle import DEFAULT_BUDGET, BudgetExceeded, claim_sweep, invariant_planes_bruteforce
from .poly import Poly, factor, super_char_poly
from .rmodule import det_test, hat, r_eigen_solve, tilde, x_matrix
from .supereig import (
    SuperEigenvalue,
    find_super_eigenvector,
    is_proper_super_eigenvalue,
    necessary_condition,
    primary_components,
    proper_super_eigenvalues,
    verify_invariant_subspace,
)


class UsageError(Exception):
    pass


def _load_json(source: str):
    try:
        if source == "-":
            return json.load(sys.stdin)
        stripped = source.lstrip()
        if stripped.startswith(("{", "[")):
            return json.loads(source)
        with open(source) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {source!r}: {exc}") from None


def _field_arg(args) -> Field | None:
    return Field.from_flag(args.field) if getattr(args, "field", None) else None


def load_matrix(source: str, field: Field | None) -> Matrix:
    obj = _load_json(source)
    if isinstance(obj, list):
        if field is None:
            raise UsageError("a bare list of rows needs --field")
        obj = {"rows": obj}
    if not isinstance(obj, dict):
        raise UsageError("matrix JSON must be an object or a list of rows")
    A = Matrix.from_json(obj, field)
    if not A.is_square():
        raise UsageError(f"expected a square matrix, got {A.nrows}x{A.ncols}")
    return A


def load_lambda(source: str, field: Field) -> SuperEigenvalue:
    obj = _load_json(source)
    if isinstance(obj, dict):
        obj = obj.get("lambda", obj.get("companion", obj.get("rows")))
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise UsageError("Lambda must be a 2x2 list of rows")
    return SuperEigenvalue.from_rows(field, [[str(x) for x in r] for r in obj])


def load_plane(source: str, field: Field):
    obj = _load_json(source)
    if isinstance(obj, dict) and "plane" in obj:
        obj = obj["plane"]
    if not (isinstance(obj, dict) and "u" in obj and "v" in obj):
        raise UsageError('plane JSON must look like {"u": [...], "v": [...]}')
    return [field(str(x)) for x in obj["u"]], [field(str(x)) for x in obj["v"]]


def _strs(v):
    return [str(x) for x in v]


def cmd_compute(args):
    A = load_matrix(args.matrix, _field_arg(args))
    cp = A.charpoly()
    classes = proper_super_eigenvalues(A, seed=args.seed)
    return {
        "field": A.field.to_json(),
        "n": A.nrows,
        "charpoly": str(cp),
        "factors": [r.to_json() for r in factor(cp, seed=args.seed)],
        "proper": [c.to_json() for c in classes],
        "bound": A.nrows // 2,
        "primary_components": [
            {"factor": str(c.factor), "multiplicity": c.multiplicity, "dim": c.dim, "basis": [_strs(v) for v in c.basis]}
            for c in primary_components(A, seed=args.seed)
        ],
    }, 0


def cmd_verify(args):
    A = load_matrix(args.matrix, _field_arg(args))
    u, v = load_plane(args.plane, A.field)
    if len(u) != A.nrows or len(v) != A.nrows:
        raise UsageError(f"plane vectors must have length {A.nrows}")
    L = verify_invariant_subspace(A, u, v)
    if L is None:
        return {"invariant": False, "lambda": None}, 0
    cls = L.similarity_class
    return {
        "invariant": True,
        "lambda": L.rows(),
        "class": cls.to_json(),
        "proper": cls.tag == "irreducible",
    }, 0


def cmd_test(args):
    A = load_matrix(args.matrix, _field_arg(args))
    L = load_lambda(args.lambda_, A.field)
    cls = L.similarity_class
    plane = find_super_eigenvector(A, L)
    if plane is None:
        verdict = "none"
    elif is_proper_super_eigenvalue(A, L):
        verdict = "proper"
    else:
        verdict = "improper"
    sol = r_eigen_solve(A, L)
    out = {
        "lambda": L.rows(),
        "class": cls.to_json(),
        "necessary_condition": str(necessary_condition(A, L)),
        "verdict": verdict,
        "certificate": None if plane is None else {"plane": plane.to_json(), "lambda": verify_invariant_subspace(A, plane.u, plane.v).rows()},
        "r_eigen": {
            "dim": sol.dim,
            "regular": sol.regular,
            "irregular_only": sol.irregular_only,
            "witness": None if sol.witness is None else sol.witness.to_json(),
        },
    }
    if A.nrows % 2 == 0:
        out["det_test"] = str(det_test(A, L))
    return out, 0


def cmd_superchar(args):
    A = load_matrix(args.matrix, _field_arg(args))
    F = super_char_poly(A)
    return {"field": A.field.to_json(), **F.to_json(), "text": str(F)}, 0


def cmd_tilde(args):
    A = load_matrix(args.matrix, _field_arg(args))
    return tilde(A).to_json(), 0


def cmd_hat(args):
    A = load_matrix(args.matrix, _field_arg(args))
    return hat(A).to_json(), 0


def cmd_xmatrix(args):
    A = load_matrix(args.matrix, _field_arg(args))
    return x_matrix(A).to_json(), 0


def cmd_factor(args):
    field = _field_arg(args)
    if field is None:
        raise UsageError("factor needs --field")
    f = Poly.parse(field, args.poly)
    if f.is_zero():
        raise UsageError("cannot factor the zero polynomial")
    return {
        "field": field.to_json(),
        "poly": str(f),
        "leading": str(f.lc),
        "factors": [r.to_json() for r in factor(f, seed=args.seed)],
    }, 0


def cmd_oracle(args):
    A = load_matrix(args.matrix, _field_arg(args))
    if A.field.kind != "gf":
        raise UsageError("oracle needs a prime field")
    planes = invariant_planes_bruteforce(A, args.budget)
    brute = sorted({r.similarity_class for r in planes if r.proper}, key=lambda c: (c.trace.value, c.det.value))
    algebraic = sorted(
        {c.similarity_class for c in proper_super_eigenvalues(A, seed=args.seed)},
        key=lambda c: (c.trace.value, c.det.value),
    )
    agree = brute == algebraic
    return {
        "field": A.field.to_json(),
        "n": A.nrows,
        "planes": [
            {"u": _strs(r.x), "v": _strs(r.y), "lambda": r.eigenvalue.rows(), "class": r.similarity_class.to_json(), "proper": r.proper}
            for r in planes
        ],
        "classes": _distinct_classes(r.similarity_class for r in planes),
        "proper_bruteforce": [c.to_json() for c in brute],
        "proper_factorization": [c.to_json() for c in algebraic],
        "agree": agree,
    }, 0 if agree else 1


def _distinct_classes(classes) -> list[dict]:
    seen = {}
    for c in classes:
        seen.setdefault(json.dumps(c.to_json(), sort_keys=True), c.to_json())
    return [seen[k] for k in sorted(seen)]


def cmd_claims(args):
    field = _field_arg(args)
    if field is None:
        raise UsageError("claims needs --field")
    matrices = [load_matrix(m, field) for m in args.matrix] if args.matrix else None
    report = claim_sweep(field, args.n, args.samples, args.seed, args.budget, matrices)
    return report.to_json(), 1 if report.proved_violations() else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invplanes", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, matrix=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--field", help="q | gf:<p> | qsqrt:<d>")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=0)
        if matrix:
            p.add_argument("matrix", help="matrix JSON path, inline JSON, or - for stdin")
        p.set_defaults(func=func)
        return p

    add("compute", cmd_compute, "charpoly, factors, proper super-eigenvalues and planes")
    add("verify", cmd_verify, "plane -> Lambda").add_argument("--plane", required=True)
    add("test", cmd_test, "Lambda -> proper / improper / none").add_argument("--lambda", dest="lambda_", required=True)
    add("superchar", cmd_superchar, "F(t, d) = det(A^2 - tA + dI)")
    add("tilde", cmd_tilde, "matrix over R of f_A")
    add("hat", cmd_hat, "alpha(tilde(A))")
    add("xmatrix", cmd_xmatrix, "matrix of f_A on F^n + F^n")
    add("factor", cmd_factor, "factor a polynomial", matrix=False).add_argument("poly")
    oracle = add("oracle", cmd_oracle, "brute-force invariant planes over GF(p)")
    oracle.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    claims = add("claims", cmd_claims, "claim-check sweep over GF(p)", matrix=False)
    claims.add_argument("--n", type=int, required=True)
    claims.add_argument("--samples", type=int, default=25)
    claims.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    claims.add_argument("--matrix", action="append", help="check these matrices instead of random samples")
    return parser


def _render_text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not _is_grid(v) and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_render_text(v, 0).strip()}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if _is_grid(obj):
            return pad + "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in obj) + "]"
        if _is_flat(obj):
            return pad + "[" + ", ".join(map(str, obj)) + "]"
        return "\n".join(f"{pad}-\n{_render_text(x, indent + 1)}" for x in obj)
    return pad + ("null" if obj is None else str(obj))


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (list, dict)) for x in v)


def _is_grid(v) -> bool:
    return isinstance(v, list) and bool(v) and all(_is_flat(r) and r for r in v)


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the command, return (exit status, rendered output)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        result, status = args.func(args)
    except (UsageError, FieldError, ShapeError, BudgetExceeded, ValueError, ZeroDivisionError) as exc:
        return 2, f"error: {exc}"
    if args.format == "text":
        return status, _render_text(result)
    return status, json.dumps(result, indent=2)


def main(argv=None) -> int:
    status, text = run(argv)
    stream = sys.stderr if status == 2 else sys.stdout
    print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
