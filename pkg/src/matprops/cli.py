"""Command-line front end: matrix ingestion, classification, compound and
spectrum computation, machine-readable JSON reports.

Exit codes: 0 for any decided run, 2 for parse/config errors, 3 when a
requested verdict came back unknown (or a spectrum failed to resolve).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import signs
from .classify import (
    ClassificationReport,
    ClassifyConfig,
    Status,
    Verdict,
    classify,
    compound_power_search,
    power_search,
)
from .core import Matrix, MatrixError
from .signs import default_zero_tolerance, detect_sjs
from .exterior import compound
from .spectral import spectrum_via_compounds


class ParseError(Exception):
    pass


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation's fully-validated settings."""

    backend: str = "float"
    tol: float = 1e-12
    sign_tol: float = 1e-9
    k_max: int = 64
    commands: tuple[str, ...] = ("classify",)
    output: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.sign_tol < 0:
            raise ConfigError("sign tolerance must be non-negative")
        if self.k_max < 2:
            raise ConfigError("kmax must be at least 2 (consecutive powers are needed)")

    def as_dict(self) -> dict:
        return {
            "backend": self.backend,
            "tol": self.tol,
            "sign_tol": self.sign_tol,
            "k_max": self.k_max,
            "seed": self.seed,
            "commands": list(self.commands),
        }


def _parse_token(token: object, backend: str, row: int, col: int):
    try:
        if backend == "exact":
            if isinstance(token, bool):
                raise ValueError("boolean entry")
            if isinstance(token, int):
                return token
            if isinstance(token, float):
                raise ValueError(
                    "bare JSON float in exact mode; quote the value as a string "
                    "to preserve its decimal meaning"
                )
            if isinstance(token, str):
                return Fraction(token.strip())
            raise ValueError(f"unsupported entry type {type(token).__name__}")
        if isinstance(token, bool):
            raise ValueError("boolean entry")
        if isinstance(token, (int, float)):
            return float(token)
        if isinstance(token, str):
            return float(Fraction(token.strip()))
        raise ValueError(f"unsupported entry type {type(token).__name__}")
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"row {row}, column {col}: cannot parse {token!r} ({exc})") from exc


def parse_matrix(path: str | Path, backend: str = "exact") -> Matrix:
    """Read a square matrix from CSV (rows of numbers) or JSON
    ({"rows": [[...], ...]}); decimal strings parse exactly in exact mode."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if isinstance(doc, dict):
            rows_raw = doc.get("rows")
            if rows_raw is None:
                raise ParseError('JSON matrix must be an object with a "rows" array')
        else:
            rows_raw = doc
        if not isinstance(rows_raw, list) or not all(isinstance(r, list) for r in rows_raw):
            raise ParseError('"rows" must be an array of arrays')
        raw = rows_raw
    else:
        raw = [
            [tok.strip() for tok in line.split(",")]
            for line in text.splitlines()
            if line.strip()
        ]
    if not raw:
        raise ParseError("empty matrix input")
    width = len(raw[0])
    for i, row in enumerate(raw, start=1):
        if len(row) != width:
            raise ParseError(f"ragged rows: row {i} has {len(row)} entries, expected {width}")
    entries = [
        [_parse_token(tok, backend, i, j) for j, tok in enumerate(row, start=1)]
        for i, row in enumerate(raw, start=1)
    ]
    matrix = Matrix.from_rows(entries, backend)
    if not matrix.is_square:
        raise ParseError(f"matrix must be square, got {matrix.n_rows}x{matrix.n_cols}")
    return matrix


def _entry_to_json(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def matrix_to_json(a: Matrix) -> dict:
    """Exact entries serialize as strings so that re-parsing is bit-exact."""
    return {"rows": [[_entry_to_json(x) for x in row] for row in a.entries]}


def _partition_summary(verdict: Verdict) -> Optional[list[str]]:
    if not verdict.partitions:
        return None
    return [str(p) if p is not None else "-" for p in verdict.partitions]


def _certificate_summary(verdict: Verdict) -> Optional[str]:
    parts = []
    for cert in verdict.certificates:
        value = getattr(cert, "value", None)
        residual = getattr(cert, "residual_x", None)
        if value is not None:
            parts.append(f"lambda={value:.9g}, residual={residual:.3g}")
    if verdict.partitions:
        parts.append("J: " + ", ".join(_partition_summary(verdict)))
    return "; ".join(parts) if parts else None


def verdict_to_json(verdict: Verdict) -> dict:
    return {
        "status": verdict.status.value,
        "power_index": verdict.power_index_observed,
        "theorem_basis": verdict.theorem_basis,
        "certificate_summary": _certificate_summary(verdict),
        "witness": verdict.witness,
        "notes": list(verdict.notes),
    }


def emit_report(report: ClassificationReport, config: dict) -> dict:
    return {
        "input": report.description,
        "config": config,
        "backend": report.backend,
        "verdicts": {name: verdict_to_json(v) for name, v in report.verdicts.items()},
        "cross_checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.cross_checks
        ],
        "warnings": report.warnings,
    }


def _positive_entries(m: Matrix) -> bool:
    tol = default_zero_tolerance(m)
    return all(x > tol for row in m.entries for x in row)


def _nonnegative_entries(m: Matrix) -> bool:
    tol = default_zero_tolerance(m)
    return all(x >= -tol for row in m.entries for x in row)


#: Plain power-sequence predicates; the totally-positive-flavoured ones run
#: per compound level instead (Cauchy-Binet) to dodge float underflow.
_PLAIN_PREDICATES = {
    "EP": lambda m: (_positive_entries(m), None),
    "EN": lambda m: (_nonnegative_entries(m), None),
    "ESJS": lambda m: (detect_sjs(m) is not None, None),
}
_LEVEL_PREDICATES = {
    "ESTP": lambda j, m: (_positive_entries(m), None),
    "ESTJS": lambda j, m: (detect_sjs(m) is not None, None),
    "P": lambda j, m: (
        all(m[i, i] > default_zero_tolerance(m) for i in range(m.n_rows)),
        None,
    ),
}


def _run_power_index(a: Matrix, prop: str, k_max: int) -> tuple[dict, bool]:
    name = prop.upper().replace("EVENTUALLY-", "")
    if name in _PLAIN_PREDICATES:
        result = power_search(a, _PLAIN_PREDICATES[name], k_max)
    elif name in _LEVEL_PREDICATES:
        result = compound_power_search(a, _LEVEL_PREDICATES[name], k_max)
    else:
        raise ConfigError(
            f"unknown property {prop!r}; choose from "
            f"{sorted(_PLAIN_PREDICATES | _LEVEL_PREDICATES)}"
        )
    found = result.found
    doc = {
        "property": name,
        "k_max": k_max,
        "power_index": result.first_persistent if found else None,
        "flicker": list(result.flicker),
        "proven": result.proven,
        "status": "yes" if found else ("no" if result.proven is False else "unknown"),
    }
    return doc, doc["status"] == "unknown"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matprops",
        description="Classify a real square matrix by its eventual properties.",
    )
    parser.add_argument("input", help="CSV or JSON matrix file")
    parser.add_argument("--backend", choices=["exact", "float"], default="float")
    parser.add_argument("--tol", type=float, default=1e-12,
                        help="power-iteration tolerance (default 1e-12)")
    parser.add_argument("--sign-tol", type=float, default=1e-9,
                        help="relative strictness threshold for float sign tests")
    parser.add_argument("--kmax", type=int, default=64,
                        help="power-search horizon (default 64, minimum 2)")
    parser.add_argument("--cmd", action="append", default=None, metavar="COMMAND",
                        help="classify | compound J | spectrum | power-index PROP "
                             "(repeatable; default: classify)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed recorded in the config block (reserved for "
                             "instance-generation workflows)")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    return parser


def _run_command(cmd: str, matrix: Matrix, config: RunConfig) -> tuple[dict, bool]:
    """Returns (document, any_unknown)."""
    words = cmd.strip().split()
    if not words:
        raise ConfigError("empty command")
    name = words[0].lower()
    if name == "classify":
        cfg = ClassifyConfig(tol=config.tol, k_max=config.k_max)
        report = classify(matrix, cfg)
        doc = emit_report(report, config.as_dict())
        unknown = any(
            v.status is Status.UNKNOWN for v in report.verdicts.values()
        )
        return doc, unknown
    if name == "compound":
        if len(words) != 2:
            raise ConfigError("usage: compound J")
        try:
            order = int(words[1])
        except ValueError as exc:
            raise ConfigError(f"compound order must be an integer, got {words[1]!r}") from exc
        try:
            return matrix_to_json(compound(matrix, order)), False
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if name == "spectrum":
        result = spectrum_via_compounds(matrix, config.tol)
        if result:
            doc = {
                "eigenvalues": list(result.eigenvalues),
                "method": result.method,
                "residuals": list(result.residuals),
            }
            return doc, False
        return {"error": result.reason, "failing_order": result.failing_order}, True
    if name == "power-index":
        if len(words) != 2:
            raise ConfigError("usage: power-index PROPERTY")
        return _run_power_index(matrix, words[1], config.k_max)
    raise ConfigError(f"unknown command {cmd!r}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        config = RunConfig(
            backend=args.backend,
            tol=args.tol,
            sign_tol=args.sign_tol,
            k_max=args.kmax,
            commands=tuple(args.cmd or ["classify"]),
            output=args.out,
            seed=args.seed,
        )
        matrix = parse_matrix(args.input, config.backend)
    except (ParseError, ConfigError, MatrixError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    # One run per invocation: the float strictness default is configured for
    # the whole process here.
    signs.SIGN_RTOL = config.sign_tol
    documents = []
    any_unknown = False
    try:
        for cmd in config.commands:
            doc, unknown = _run_command(cmd, matrix, config)
            documents.append(doc)
            any_unknown = any_unknown or unknown
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = documents[0] if len(documents) == 1 else {"results": documents}
    text = json.dumps(payload, indent=2)
    if config.output:
        try:
            Path(config.output).write_text(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {config.output}: {exc}", file=sys.stderr)
            return 2
    else:
        print(text)
    return 3 if any_unknown else 0


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
