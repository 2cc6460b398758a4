"""Command line front end.

Matrix files are either a JSON object with fields k, n, and C (row-major
list of criteria rows) or headerless CSV with one criteria row per line;
the format is sniffed from the file extension and can be forced with
--format.  Points and weights on the command line are comma-separated
numbers.  All indices printed or read are 1-based.

Exit codes: 0 success, 2 malformed input, 3 dimension mismatch, 4 solver
failure, 5 enumeration size cap exceeded.

Numbers are printed with 17 significant digits so every value round-trips
exactly; for fixed input and options the output is byte-identical across
runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from .core import (
    CriteriaMatrix,
    Deterministic,
    DimensionMismatchError,
    InputError,
    PartiallyRandomized,
    Randomized,
    SimplexPoint,
    SupportPattern,
    Tolerances,
    Verdict,
    vertex,
)
from .efficiency import EfficiencyAnalyzer, EfficiencyReport
from .enumeration import (
    EnumerationCapError,
    bicriterion_full_check,
    check_full,
    enumerate_faces,
    _scan_sizes,
)
from .lp import LpError
from .oracle import dominance_lp_verdict
from .scalarize import (
    FullSimplex,
    OpenFace,
    UniqueVertex,
    WeightVector,
    argmax_set,
    solution_set,
    weighted_objective,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_SOLVER = 4
EXIT_SIZE_CAP = 5

#: Schema of the JSON documents printed by the ``test`` command (one per point).
REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "class": {"enum": ["deterministic", "partial", "randomized"]},
        "support": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "verdict": {"enum": ["efficient", "dominated"]},
        "test": {"enum": ["T0", "T1", "T2", "closure"]},
        "value": {"type": "number"},
        "certificate": {
            "type": ["array", "null"],
            "items": {"type": "number"},
        },
        "face": {
            "type": ["object", "null"],
            "properties": {
                "kind": {"enum": ["all", "vertex", "open-face"]},
                "support": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
            "required": ["kind", "support"],
        },
    },
    "required": ["class", "support", "verdict", "test", "value", "certificate", "face"],
}


class CliParseError(Exception):
    """Unreadable or malformed command line input."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_text(value) -> str:
    """Serialize with fixed key order and 17-significant-digit floats."""
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_text(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _numbers(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise CliParseError(f"malformed {what} literal {text!r}: {exc}") from None


def load_matrix(path: str, fmt: str | None) -> CriteriaMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliParseError(f"cannot read {path}: {exc}") from None
    if fmt is None:
        fmt = "json" if path.lower().endswith(".json") else "csv"
    if fmt == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliParseError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(doc, dict) or "C" not in doc:
            raise CliParseError(f"{path}: expected an object with a 'C' field")
        rows = doc["C"]
        try:
            matrix = CriteriaMatrix(rows)
        except (InputError, ValueError) as exc:
            raise CliParseError(f"{path}: {exc}") from None
        for name, expected in (("k", matrix.k), ("n", matrix.n)):
            if name in doc and doc[name] != expected:
                raise CliParseError(
                    f"{path}: field {name}={doc[name]} disagrees with C ({expected})"
                )
        return matrix
    rows = []
    for record in csv.reader(io.StringIO(text)):
        if not record:
            continue
        try:
            rows.append([float(cell) for cell in record])
        except ValueError as exc:
            raise CliParseError(f"{path}: {exc}") from None
    try:
        return CriteriaMatrix(rows)
    except (InputError, ValueError) as exc:
        raise CliParseError(f"{path}: {exc}") from None


def _tolerances(args: argparse.Namespace) -> Tolerances:
    try:
        return Tolerances(x_zero=args.tol_x, tie=args.tol_d, lp=args.tol_lp)
    except InputError as exc:
        raise CliParseError(str(exc)) from None


def _parse_point(text: str, tol: Tolerances) -> SimplexPoint:
    values = _numbers(text, "point")
    return SimplexPoint(values, tol)


def _class_name(report: EfficiencyReport) -> str:
    if isinstance(report.point_class, Deterministic):
        return "deterministic"
    if isinstance(report.point_class, PartiallyRandomized):
        return "partial"
    return "randomized"


def _support_list(report: EfficiencyReport) -> list[int]:
    if isinstance(report.point_class, Randomized):
        return list(range(1, report.point.n + 1))
    return list(report.point_class.support)


def _face_payload(face) -> dict | None:
    if face is None:
        return None
    if isinstance(face, FullSimplex):
        return {"kind": "all", "support": []}
    if isinstance(face, UniqueVertex):
        return {"kind": "vertex", "support": [face.index]}
    return {"kind": "open-face", "support": list(face.support)}


def _report_payload(report: EfficiencyReport) -> dict:
    face = _face_payload(report.face)
    if face is not None and face["kind"] == "all":
        face["support"] = list(range(1, report.point.n + 1))
    return {
        "class": _class_name(report),
        "support": _support_list(report),
        "verdict": report.verdict.value,
        "test": report.test.value,
        "value": report.value,
        "certificate": None if report.certificate is None else [float(w) for w in report.certificate.weights],
        "face": face,
        "clamped": list(report.clamped),
    }


def _print_report_text(report: EfficiencyReport) -> None:
    payload = _report_payload(report)
    print(f"point: {', '.join(_fmt(c) for c in report.point.coords)}")
    print(f"class: {payload['class']}")
    print(f"support: {', '.join(str(j) for j in payload['support'])}")
    print(f"verdict: {payload['verdict']}")
    print(f"test: {payload['test']}  value: {_fmt(payload['value'])}")
    if payload["certificate"] is not None:
        print(f"certificate: {', '.join(_fmt(w) for w in payload['certificate'])}")
    if payload["face"] is not None:
        face = payload["face"]
        print(f"face: {face['kind']} {{{', '.join(str(j) for j in face['support'])}}}")
    if payload["clamped"]:
        print(f"clamped: {', '.join(str(j) for j in payload['clamped'])}")


def cmd_test(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    analyzer = EfficiencyAnalyzer(matrix, tol)
    first = True
    for literal in args.points:
        report = analyzer.decide(_parse_point(literal, tol))
        if args.json:
            print(_json_text(_report_payload(report)))
        else:
            if not first:
                print()
            _print_report_text(report)
        first = False
    return EXIT_OK


def cmd_check_full(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    full, certificate = check_full(matrix, tol)
    payload = {
        "full": full,
        "certificate": None if certificate is None else [float(w) for w in certificate.weights],
    }
    if args.json:
        print(_json_text(payload))
    else:
        print(f"full: {'yes' if full else 'no'}")
        if certificate is not None:
            print(f"certificate: {', '.join(_fmt(w) for w in certificate.weights)}")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    analyzer = EfficiencyAnalyzer(matrix, tol)
    structure = enumerate_faces(
        matrix, tol, max_support=args.max_support, allow_large=args.allow_large_n, analyzer=analyzer
    )
    vertices = sorted(structure.vertices)
    faces = sorted(structure.faces, key=lambda p: (len(p), p.indices))
    payload = {
        "full": structure.full,
        "vertices": vertices,
        "faces": [list(face) for face in faces],
        "exhaustive": structure.exhaustive,
        "warning": structure.warning,
    }
    agreement = None
    if args.oracle:
        agreement = []
        for j in range(1, matrix.n + 1):
            verdict = dominance_lp_verdict(matrix, vertex(j, matrix.n), tol)
            agreement.append(
                {"support": [j], "agrees": (j in structure.vertices) == (verdict is Verdict.EFFICIENT)}
            )
        for size in _scan_sizes(matrix.n, args.max_support):
            for combo in itertools.combinations(range(1, matrix.n + 1), size):
                pattern = SupportPattern(combo)
                coords = np.zeros(matrix.n)
                coords[[j - 1 for j in combo]] = 1.0 / size
                verdict = dominance_lp_verdict(matrix, SimplexPoint(coords, tol), tol)
                agreement.append(
                    {
                        "support": list(combo),
                        "agrees": (pattern in structure.faces) == (verdict is Verdict.EFFICIENT),
                    }
                )
        payload["oracle"] = agreement
    if args.json:
        print(_json_text(payload))
        return EXIT_OK
    print(f"full: {'yes' if structure.full else 'no'}")
    print(f"efficient vertices: {', '.join(str(j) for j in vertices) or '(none)'}")
    if faces:
        print("efficient faces: " + "; ".join("{" + ", ".join(str(j) for j in face) + "}" for face in faces))
    else:
        print("efficient faces: (none)")
    print(f"exhaustive: {'yes' if structure.exhaustive else 'no'}")
    if structure.warning:
        print(f"warning: {structure.warning}")
    if agreement is not None:
        for entry in agreement:
            label = ", ".join(str(j) for j in entry["support"])
            print(f"oracle {{{label}}}: {'agree' if entry['agrees'] else 'DISAGREE'}")
    return EXIT_OK


def cmd_scalarize(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    weights = WeightVector(_numbers(args.weights, "weights"))
    objective = weighted_objective(matrix, weights)
    tied = argmax_set(objective, tol)
    descriptor = solution_set(matrix, weights, tol)
    if isinstance(descriptor, FullSimplex):
        desc_payload = {"kind": "all", "support": list(range(1, matrix.n + 1))}
    elif isinstance(descriptor, UniqueVertex):
        desc_payload = {"kind": "vertex", "support": [descriptor.index]}
    else:
        desc_payload = {"kind": "open-face", "support": list(descriptor.support)}
    payload = {
        "coeffs": [float(c) for c in objective.coeffs],
        "dmax": objective.dmax,
        "argmax": list(tied),
        "solution_set": desc_payload,
    }
    if args.json:
        print(_json_text(payload))
    else:
        print(f"coeffs: {', '.join(_fmt(c) for c in objective.coeffs)}")
        print(f"dmax: {_fmt(objective.dmax)}")
        print(f"argmax: {', '.join(str(j) for j in tied)}")
        print(f"solution set: {desc_payload['kind']} {{{', '.join(str(j) for j in desc_payload['support'])}}}")
    return EXIT_OK


def cmd_bicheck(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    try:
        full = bicriterion_full_check(matrix, tol)
    except DimensionMismatchError:
        raise
    except InputError as exc:
        raise CliParseError(str(exc)) from None
    first, second = matrix.entries[0], matrix.entries[1]
    ratios = (second[1:] - second[:-1]) / (first[:-1] - first[1:])
    payload = {"full": full, "ratios": [float(r) for r in ratios]}
    if args.json:
        print(_json_text(payload))
    else:
        print(f"full: {'yes' if full else 'no'}")
        print(f"ratios: {', '.join(_fmt(r) for r in ratios)}")
    return EXIT_OK


def cmd_plot3(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    if matrix.n != 3:
        raise DimensionMismatchError(f"plot3 needs exactly 3 columns, matrix has {matrix.n}")
    if args.density < 1:
        raise CliParseError("density must be at least 1")
    analyzer = EfficiencyAnalyzer(matrix, tol)
    d = args.density
    rows = []
    for a in range(d + 1):
        for b in range(d - a + 1):
            c = d - a - b
            point = SimplexPoint((a / d, b / d, c / d), tol)
            report = analyzer.decide(point)
            rows.append(([a / d, b / d, c / d], report.verdict.value))
    if args.json:
        payload = {
            "density": d,
            "rows": [{"point": coords, "verdict": verdict} for coords, verdict in rows],
        }
        print(_json_text(payload))
    else:
        print("x1,x2,x3,verdict")
        for coords, verdict in rows:
            print(",".join(_fmt(c) for c in coords) + f",{verdict}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = load_matrix(args.matrix, args.format)
    first = True
    for literal in args.points:
        point = _parse_point(literal, tol)
        verdict = dominance_lp_verdict(matrix, point, tol)
        payload = {
            "point": [float(c) for c in point.coords],
            "verdict": verdict.value,
        }
        if args.json:
            print(_json_text(payload))
        else:
            if not first:
                print()
            print(f"point: {', '.join(_fmt(c) for c in point.coords)}")
            print(f"verdict: {verdict.value}")
        first = False
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-x", type=float, default=1e-9, help="zero threshold for point components")
    common.add_argument("--tol-d", type=float, default=1e-7, help="tie threshold for objective coefficients")
    common.add_argument("--tol-lp", type=float, default=1e-9, help="simplex pivot tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized operations (the shipped commands are deterministic)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--max-support", type=int, default=None, help="largest support size to scan when enumerating")
    common.add_argument("--allow-large-n", action="store_true", help="lift the enumeration column cap")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="matrix file format (default: sniff extension)")

    parser = argparse.ArgumentParser(
        prog="paretosimplex",
        description="Pareto efficiency tests and enumeration for linear criteria on the probability simplex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", parents=[common], help="decide efficiency of one or more points")
    p.add_argument("matrix", help="matrix file")
    p.add_argument("points", nargs="+", metavar="point", help="comma-separated coordinates")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate efficient vertices and faces")
    p.add_argument("matrix")
    p.add_argument("--oracle", action="store_true", help="cross-check each scanned support against the dominance oracle")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-full", parents=[common], help="decide whether every feasible point is efficient")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check_full)

    p = sub.add_parser("scalarize", parents=[common], help="collapse the criteria under weights and describe the maximizers")
    p.add_argument("matrix")
    p.add_argument("--weights", required=True, help="comma-separated weights, one per criterion")
    p.set_defaults(func=cmd_scalarize)

    p = sub.add_parser("bicheck", parents=[common], help="closed-form full-efficiency test for two criteria")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_bicheck)

    p = sub.add_parser("plot3", parents=[common], help="verdict grid over the 3-column simplex as plot data")
    p.add_argument("matrix")
    p.add_argument("--density", type=int, required=True, help="grid subdivisions per edge")
    p.set_defaults(func=cmd_plot3)

    p = sub.add_parser("oracle", parents=[common], help="dominance-LP verdict for one or more points")
    p.add_argument("matrix")
    p.add_argument("points", nargs="+", metavar="point")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except LpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
