"""``picode`` command-line interface.

JSON goes to standard output (or ``--out``), human-readable summaries to
standard error.  Exit codes: 0 ok, 1 I/O or parse error, 2 construction
precondition failed, 3 certification or check failed, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

from picode import klverify, oracle, polyid
from picode.codegen import PICode, build_theta_family, logical_overlap
from picode.errors import ConstructionError, DimensionCap
from picode.exactnum import format_rational, parse_rational
from picode.polyid import PartitionPolynomialTuple, RationalPolynomial
from picode.specfile import build_from_spec, example_specs

EXIT_OK, EXIT_IO, EXIT_CONSTRUCTION, EXIT_CHECK, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    """Bad input discovered after argument parsing (maps to exit 1)."""


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(obj, out: str | None = None) -> None:
    text = dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_code(path: str) -> PICode:
    try:
        return PICode.from_descriptor(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a valid code descriptor: {exc}") from exc


def cmd_build(args) -> int:
    data = _load_json(args.spec)
    try:
        code = build_from_spec(data)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"{args.spec} does not match the spec schema: {exc.message}") from exc
    except ConstructionError as exc:
        _emit(exc.to_json())
        _say(f"construction failed: {exc.kind}: {exc}")
        return EXIT_CONSTRUCTION
    _emit(code.to_descriptor(), args.out)
    _say(f"built {code.construction} code: q={code.q} N={code.N} d={code.d}")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _load_code(args.code)
    if args.distance_up_to is not None:
        if not 1 <= args.distance_up_to <= code.N:
            raise UsageError(f"--distance-up-to must lie in 1..{code.N}")
        report = klverify.certify_distance(code, args.distance_up_to, threads=args.threads)
        _emit(report.to_json(), args.out)
        _say(report.to_json()["statement"])
        ok = report.lower_bound >= 2 * code.t + 1
        return EXIT_OK if ok else EXIT_CHECK
    t = args.t if args.t is not None else code.t
    if not 1 <= 2 * t <= code.N:
        raise UsageError(f"--t must satisfy 1 <= 2t <= N = {code.N}")
    cert = klverify.kl_certify(code, t, threads=args.threads)
    _emit(cert.to_json(), args.out)
    if cert.ok:
        _say(f"certified: corrects {t} error(s) ({len(cert.classes)} classes at weight {cert.w})")
        return EXIT_OK
    w = cert.witness
    _say(f"NOT certified: {len(cert.violations)} violation(s); first at class {w.cls.to_json()} pair {w.pair}")
    return EXIT_CHECK


def _parse_coeffs(text: str) -> RationalPolynomial:
    try:
        return RationalPolynomial(parse_rational(tok) for tok in text.split(",") if tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse coefficients {text!r}: {exc}") from exc


def cmd_identities(args) -> int:
    f = _parse_coeffs(args.f)
    if args.d is not None:
        report = polyid.check_root_identities(f, args.d, args.m)
        kind = "root"
    else:
        report = polyid.check_moment_identities(f, args.m)
        kind = "moment"
    _emit({"f_coeffs": f.to_json(), "kind": kind, **report.to_json()})
    _say(f"{kind} identities: {'pass' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_oracle(args) -> int:
    code = _load_code(args.code)
    t = code.t
    oracle.check_dimension(code.q, code.N)
    delta = oracle.crosscheck_code(code, min(2 * t, code.N), args.trials, args.seed)
    rows = oracle.fidelity_table(code, t, range(args.seed, args.seed + args.channels), states=args.states)
    worst = min(r.min_fidelity for r in rows)
    ok = delta <= oracle.AGREEMENT_TOL and worst >= 1 - oracle.FIDELITY_TOL
    _emit(
        {
            "max_abs_delta": delta,
            "trials": args.trials,
            "seed": args.seed,
            "fidelity_table": [r.to_json() for r in rows],
        }
    )
    _say(f"max |delta| = {delta:.3e}, worst fidelity = {worst:.12f}: {'ok' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_examples(args) -> int:
    target = Path(args.dir)
    try:
        target.mkdir(parents=True, exist_ok=True)
        for name, spec in example_specs().items():
            (target / name).write_text(dumps(spec))
    except OSError as exc:
        raise UsageError(f"cannot write examples to {target}: {exc}") from exc
    _say(f"wrote {len(example_specs())} example specs to {target}")
    return EXIT_OK


def _parse_grid(text: str) -> list[Fraction]:
    try:
        if "," in text or "/" in text:
            return [parse_rational(tok) for tok in text.split(",") if tok.strip()]
        size = int(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc
    if size < 2:
        return [Fraction(0)] * max(size, 0)
    return [Fraction(k, size - 1) for k in range(size)]


def cmd_family(args) -> int:
    grid = _parse_grid(args.grid)
    if len(grid) < 2:
        raise UsageError("the grid needs at least two points")
    try:
        polys = tuple(RationalPolynomial(p) for p in json.loads(args.p))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot parse --p: {exc}") from exc
    n = args.m * (args.d - 1) + 1
    N = int(sum(poly(0) for poly in polys))
    p = PartitionPolynomialTuple(polys, N, n)
    try:
        codes = [build_theta_family(args.m, args.d, s, p, len(polys), N, args.t) for s in grid]
    except ConstructionError as exc:
        _emit(exc.to_json())
        _say(f"construction failed: {exc.kind}: {exc}")
        return EXIT_CONSTRUCTION
    table = [[logical_overlap(a.logical[0], b.logical[0]) for b in codes] for a in codes]
    diagonal_unit = all(table[i][i] == 1 for i in range(len(grid)))
    off_ok = all(
        table[i][j].sign() >= 0 and (table[i][j] * table[i][j]) < 1
        for i in range(len(grid))
        for j in range(len(grid))
        if i != j and grid[i] != grid[j]
    )
    ok = diagonal_unit and off_ok
    _emit(
        {
            "m": args.m,
            "d": args.d,
            "N": N,
            "grid": [format_rational(s) for s in grid],
            "overlaps": [[x.to_json() for x in row] for row in table],
            "overlaps_float": [[float(x) for x in row] for row in table],
            "diagonal_unit": diagonal_unit,
            "off_diagonal_in_unit_interval": off_ok,
            "ok": ok,
        }
    )
    _say(f"{len(grid)}x{len(grid)} overlap table: {'ok' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="picode", description="Permutation-invariant codes from polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a code descriptor from a spec file")
    p.add_argument("spec")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="certify a code descriptor exactly")
    p.add_argument("code")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--t", type=int)
    group.add_argument("--distance-up-to", type=int)
    p.add_argument("--threads", type=int, help="verifier threads (default: $PICODE_THREADS or CPU count)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identities", help="check coefficient identities of a polynomial")
    p.add_argument("--f", required=True, help="comma-separated coefficients, constant term first")
    p.add_argument("--d", type=int, help="check root-of-unity identities for this d")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("oracle", help="dense cross-check and recovery simulation")
    p.add_argument("code")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--channels", type=int, default=5)
    p.add_argument("--states", type=int, default=20)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("examples", help="write the worked-example spec files")
    p.add_argument("--dir", default="picode-examples")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("family", help="overlap table of the rational sin^2 theta family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", required=True, help='partition polynomials as JSON, e.g. [["0","3"],["12","-3"]]')
    p.add_argument("--grid", required=True, help="number of uniform points in [0,1], or a comma-separated list")
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_family)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_IO
    try:
        return args.func(args)
    except UsageError as exc:
        _say(f"error: {exc}")
        return EXIT_IO
    except DimensionCap as exc:
        _say(f"error: {exc}")
        return EXIT_CAP
    except ConstructionError as exc:
        _emit(exc.to_json())
        _say(f"construction failed: {exc.kind}: {exc}")
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
