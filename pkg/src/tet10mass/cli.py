"""Command line interface.

Subcommands::

    tables    print the regenerated constant coefficient tables
    mass      compute per-element mass matrices for a mesh file
    study     run the randomized accuracy study (CSV report + figures)
    validate  check tables and quadrature rules against frozen references

Exit codes: 0 success, 1 usage error, 2 parse/I-O error, 3 validation or
element failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .element import InvalidElementError
from .meshfile import MeshParseError, load_mesh
from .report import mass_csv, study_csv
from .schemes import (
    LM_SCALE,
    M0_SCALE,
    QM_SCALE,
    SCHEME_NAMES,
    compute_mass,
    generate_constant_tables,
)
from .study import (
    DEFAULT_DELTAS,
    DEFAULT_ELEMENTS,
    DEFAULT_SCHEMES,
    DEFAULT_SEED,
    StudyConfig,
    run_study,
)
from .validate import run_validation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_FAILURE = 3

TABLE_CHOICES = ("cm", "lm", "qm", "exact")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this CLI reserves 2 for I/O."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _comma_floats(raw: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {raw!r}")


def _comma_schemes(raw: str) -> tuple[str, ...]:
    schemes = tuple(tok.strip().lower() for tok in raw.split(",") if tok.strip())
    unknown = [s for s in schemes if s not in SCHEME_NAMES]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown scheme(s) {unknown}; choose from {SCHEME_NAMES}"
        )
    return schemes


def _render_int_tables(named_tables, denominator: int, fmt: str) -> str:
    lines = []
    if fmt == "csv":
        lines.append("table,i,j,value")
        for name, table in named_tables:
            for i in range(10):
                for j in range(10):
                    lines.append(f"{name},{i + 1},{j + 1},{table[i, j]}")
    else:
        width = max(len(str(t[i, j])) for _, t in named_tables for i in range(10) for j in range(10))
        for name, table in named_tables:
            lines.append(f"# table {name} (denominator {denominator})")
            for i in range(10):
                lines.append(" ".join(f"{table[i, j]:>{width}}" for j in range(10)))
    return "\n".join(lines) + "\n"


def _render_exact_tables(tables, fmt: str) -> str:
    lines = []
    if fmt == "csv":
        lines.append("i,j,w,numerator,denominator")
        for i in range(10):
            for j in range(10):
                for w, frac in enumerate(tables.exact_rational[i][j]):
                    lines.append(f"{i + 1},{j + 1},{w},{frac.numerator},{frac.denominator}")
    else:
        lines.append("# exact coefficient rows: entry (i,j), then the 20 cubic-metric")
        lines.append("# monomial coefficients as exact fractions")
        for i in range(10):
            for j in range(i, 10):
                row = " ".join(str(f) for f in tables.exact_rational[i][j])
                lines.append(f"({i + 1},{j + 1}) {row}")
    return "\n".join(lines) + "\n"


def _cmd_tables(args) -> int:
    tables = generate_constant_tables()
    if args.scheme == "cm":
        text = _render_int_tables([("m0", tables.m0)], M0_SCALE, args.format)
    elif args.scheme == "lm":
        named = [(f"m{k + 1}", tables.lm[k]) for k in range(4)]
        text = _render_int_tables(named, LM_SCALE, args.format)
    elif args.scheme == "qm":
        named = [(f"m{r + 1}", tables.qm[r]) for r in range(10)]
        text = _render_int_tables(named, QM_SCALE, args.format)
    else:
        text = _render_exact_tables(tables, args.format)
    _write_output(text, args.out)
    return EXIT_OK


def _cmd_mass(args) -> int:
    elements = load_mesh(args.mesh)
    results = []
    failed = False
    for elem in elements:
        rho0 = args.density if args.density is not None else (
            elem.density if elem.density is not None else 1.0
        )
        try:
            results.append((elem.elem_id, compute_mass(elem.nodes, args.scheme, rho0)))
        except InvalidElementError as exc:
            print(f"element {elem.elem_id}: {exc}", file=sys.stderr)
            failed = True
    density_note = repr(args.density) if args.density is not None else "per-element"
    _write_output(mass_csv(results, args.scheme, density_note), args.out)
    return EXIT_FAILURE if failed else EXIT_OK


def _cmd_study(args) -> int:
    config = StudyConfig(
        deltas=args.deltas,
        elements_per_delta=args.elements,
        schemes=args.schemes,
        seed=args.seed,
        rho0=args.density,
    )
    result = run_study(config, workers=args.workers)
    _write_output(study_csv(result), args.out)

    figure_dir = None
    if not args.no_figures:
        if args.figures:
            figure_dir = Path(args.figures)
        elif args.out:
            figure_dir = Path(args.out).resolve().parent
    if figure_dir is not None:
        from .plots import render_study_figures  # defers the matplotlib import

        for path in render_study_figures(result, figure_dir):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def _cmd_validate(args) -> int:
    results = run_validation()
    for check in results:
        print(check.line())
    return EXIT_OK if all(c.passed for c in results) else EXIT_FAILURE


def build_parser() -> _Parser:
    parser = _Parser(prog="tet10mass", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"tet10mass {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_tables = sub.add_parser("tables", help="print regenerated constant tables")
    p_tables.add_argument("--scheme", required=True, choices=TABLE_CHOICES)
    p_tables.add_argument("--format", choices=("text", "csv"), default="text")
    p_tables.add_argument("--out", help="output path (default stdout)")
    p_tables.set_defaults(func=_cmd_tables)

    p_mass = sub.add_parser("mass", help="per-element mass matrices for a mesh file")
    p_mass.add_argument("--mesh", required=True, help="mesh file path")
    p_mass.add_argument("--scheme", default="exact", choices=SCHEME_NAMES)
    p_mass.add_argument("--density", type=float, default=None,
                        help="override every element's density")
    p_mass.add_argument("--out", help="output CSV path (default stdout)")
    p_mass.set_defaults(func=_cmd_mass)

    p_study = sub.add_parser("study", help="randomized accuracy study")
    p_study.add_argument("--deltas", type=_comma_floats, default=DEFAULT_DELTAS,
                         help="comma-separated coarseness values")
    p_study.add_argument("--elements", type=int, default=DEFAULT_ELEMENTS,
                         help="elements per coarseness value")
    p_study.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_study.add_argument("--schemes", type=_comma_schemes, default=DEFAULT_SCHEMES,
                         help="comma-separated scheme names")
    p_study.add_argument("--density", type=float, default=1.0)
    p_study.add_argument("--workers", type=int, default=1,
                         help="parallel element evaluations (threads)")
    p_study.add_argument("--out", help="output CSV path (default stdout)")
    p_study.add_argument("--figures", help="directory for PNG figures "
                         "(default: next to --out)")
    p_study.add_argument("--no-figures", action="store_true",
                         help="skip figure rendering")
    p_study.set_defaults(func=_cmd_study)

    p_validate = sub.add_parser("validate", help="table and quadrature self-checks")
    p_validate.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MeshParseError, OSError) as exc:
        print(f"tet10mass: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"tet10mass: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
