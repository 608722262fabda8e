"""Identity entries, verification reports and grid sweeps."""
from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mpf

from ..classical import CLASSICAL_PRECISION
from ..numerics import DEFAULT_PRECISION, Precision, QParam, as_exact
from ..stuffle import FormalSum, Letter, format_weight, parse_letters

DEFAULT_SLACK = 10


class DomainError(ValueError):
    """A binding violates the declared domain of an identity."""


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # int | real | q | ints | reals | word
    doc: str = ""

    def coerce(self, value):
        """Normalise a user value (number or text) to the internal type."""
        try:
            if self.kind == "int":
                v = Fraction(str(value)) if isinstance(value, str) else Fraction(value)
                if v.denominator != 1:
                    raise DomainError(f"{self.name} must be an integer, got {value}")
                return int(v)
            if self.kind == "real":
                return as_exact(value)
            if self.kind == "q":
                return QParam(as_exact(value))
            if self.kind == "word":
                if isinstance(value, str):
                    return parse_letters(value)
                return tuple(l if isinstance(l, Letter) else Letter(*l) for l in value)
            if self.kind in ("ints", "reals"):
                items = value
                if isinstance(value, str):
                    items = [t for t in value.strip("()[] ").split(",") if t.strip()]
                inner = Param(self.name, self.kind[:-1])
                return tuple(inner.coerce(v) for v in items)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"bad value for {self.name}: {value!r} ({exc})") from None
        raise ValueError(f"unknown parameter kind {self.kind}")


def render_value(v) -> str:
    if isinstance(v, QParam):
        return render_value(v.q)
    if isinstance(v, tuple) and v and isinstance(v[0], Letter):
        return "".join(str(l) for l in v)
    if isinstance(v, tuple):
        return "(" + ",".join(render_value(x) for x in v) + ")"
    if isinstance(v, Fraction):
        return format_weight(v)
    if isinstance(v, mpf):
        return mpmath.nstr(v, 30)
    return str(v)


@dataclass(frozen=True)
class IdentityEntry:
    """One registered identity: lhs(binding, prec) == rhs(binding, prec)."""

    id: str
    params: tuple
    lhs: Callable
    rhs: Callable
    ref: str
    mode: str  # numeric-q | symbolic | classical
    domain: Callable = None
    default_grid: dict = field(default_factory=dict)
    smoke: dict = field(default_factory=dict)
    grid_filter: Callable = None

    def param_names(self):
        return [p.name for p in self.params]

    def bind(self, binding: dict) -> dict:
        """Coerce and validate a binding; raises DomainError naming the problem."""
        names = self.param_names()
        missing = [n for n in names if n not in binding]
        extra = [n for n in binding if n not in names]
        if missing:
            raise DomainError(f"{self.id}: missing parameter(s) {', '.join(missing)}")
        if extra:
            raise DomainError(f"{self.id}: unknown parameter(s) {', '.join(extra)}")
        out = {p.name: p.coerce(binding[p.name]) for p in self.params}
        if self.domain is not None:
            self.domain(out)
        return out

    def default_precision(self) -> Precision:
        return CLASSICAL_PRECISION if self.mode == "classical" else DEFAULT_PRECISION

    def grid_points(self, grid: dict | None = None, skip_invalid: bool = False):
        """Cartesian product of a grid (the default one when omitted)."""
        grid = self.default_grid if grid is None else grid
        names = self.param_names()
        if not names:
            return [{}]
        if not grid:
            return []
        unknown = [g for g in grid if g not in names]
        if unknown:
            raise DomainError(f"{self.id}: unknown grid parameter(s) {', '.join(unknown)}")
        missing = [n for n in names if n not in grid]
        if missing:
            raise DomainError(f"{self.id}: grid lacks parameter(s) {', '.join(missing)}")
        points = []
        for combo in itertools.product(*(grid[n] for n in names)):
            point = dict(zip(names, combo))
            if skip_invalid:
                try:
                    self.bind(point)
                except DomainError:
                    continue
                if self.grid_filter is not None and not self.grid_filter(self.bind(point)):
                    continue
            points.append(point)
        return points


@dataclass
class VerifyReport:
    identity: str
    params: dict
    lhs: object
    rhs: object
    residual: mpf
    bound: mpf
    slack: float
    passed: bool
    digits: int = 40

    @property
    def ratio(self):
        """residual / (slack * bound); at most 1 for a pass."""
        if self.bound == 0:
            return mpf(0) if self.residual == 0 else mpmath.inf
        return self.residual / (self.slack * self.bound)

    def record(self, digits: int | None = None) -> dict:
        digits = digits or self.digits

        def num(x):
            return str(x) if isinstance(x, FormalSum) else mpmath.nstr(x, digits)

        lhs_v = self.lhs if isinstance(self.lhs, FormalSum) else self.lhs.value
        rhs_v = self.rhs if isinstance(self.rhs, FormalSum) else self.rhs.value
        lb = mpf(0) if isinstance(self.lhs, FormalSum) else self.lhs.bound
        rb = mpf(0) if isinstance(self.rhs, FormalSum) else self.rhs.bound
        return {
            "identity": self.identity,
            "params": {k: render_value(v) for k, v in self.params.items()},
            "lhs": num(lhs_v),
            "lhs_bound": mpmath.nstr(lb, 6),
            "rhs": num(rhs_v),
            "rhs_bound": mpmath.nstr(rb, 6),
            "residual": mpmath.nstr(self.residual, 6),
            "bound": mpmath.nstr(self.bound, 6),
            "slack": self.slack,
            "pass": bool(self.passed),
        }


def _digits(prec: Precision) -> int:
    return int(prec.mantissa_bits * 0.30103)


def _residual(lhs, rhs):
    if isinstance(lhs, FormalSum) or isinstance(rhs, FormalSum):
        diff = FormalSum.of(lhs) - FormalSum.of(rhs)
        worst = max((abs(c) for _, c in diff.items()), default=Fraction(0))
        return mpf(worst.numerator) / worst.denominator, mpf(0)
    return abs(lhs.value - rhs.value), lhs.bound + rhs.bound


def verify_entry(entry: IdentityEntry, binding: dict, prec: Precision | None = None,
                 slack: float = DEFAULT_SLACK) -> VerifyReport:
    bound_binding = entry.bind(binding)
    prec = prec or entry.default_precision()
    with prec.workprec():
        lhs = entry.lhs(bound_binding, prec)
        rhs = entry.rhs(bound_binding, prec)
        residual, bound = _residual(lhs, rhs)
        passed = residual <= slack * bound
    return VerifyReport(entry.id, bound_binding, lhs, rhs, residual, bound, slack, passed,
                        _digits(prec))


@dataclass
class SweepResult:
    identity: str
    reports: list
    summary: dict

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)


def summarize(identity: str, reports: list) -> dict:
    if not reports:
        return {"identity": identity, "count": 0, "passed": 0, "failed": 0,
                "max_residual": None, "worst": None}
    worst = max(reports, key=lambda r: r.ratio)
    return {
        "identity": identity,
        "count": len(reports),
        "passed": sum(r.passed for r in reports),
        "failed": sum(not r.passed for r in reports),
        "max_residual": mpmath.nstr(max(r.residual for r in reports), 6),
        "worst": {k: render_value(v) for k, v in worst.params.items()},
        "worst_ratio": mpmath.nstr(worst.ratio, 6),
    }


def _point_key(report: VerifyReport):
    def key(v):
        if isinstance(v, QParam):
            return (0, v.q)
        if isinstance(v, Letter):
            return (2, str(v))
        if isinstance(v, tuple):
            return (1, tuple(key(x) for x in v))
        return (0, v)
    return tuple(key(report.params[k]) for k in sorted(report.params))


def _verify_point(args):
    from . import get
    entry_id, point, prec, slack = args
    return verify_entry(get(entry_id), point, prec, slack)


def sweep_entry(entry: IdentityEntry, grid: dict | None = None, prec: Precision | None = None,
                slack: float = DEFAULT_SLACK, jobs: int = 1) -> SweepResult:
    """Verify every point of a grid; the default grid skips inadmissible points."""
    points = entry.grid_points(grid, skip_invalid=grid is None)
    for p in points:
        entry.bind(p)
    tasks = [(entry.id, p, prec, slack) for p in points]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_point, tasks, chunksize=4))
    else:
        reports = [verify_entry(entry, p, prec, slack) for p in points]
    reports.sort(key=_point_key)
    return SweepResult(entry.id, reports, summarize(entry.id, reports))


# report serialisation --------------------------------------------------------

FIELDS = ["identity", "params", "lhs", "lhs_bound", "rhs", "rhs_bound",
          "residual", "bound", "slack", "pass"]


def to_json(reports: list, summary: dict | None = None, digits: int | None = None) -> str:
    records = [r.record(digits) for r in reports]
    if summary is not None:
        records.append({"summary": summary})
    return json.dumps(records, indent=1)


def to_csv(reports: list, digits: int | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        rec = r.record(digits)
        rec["params"] = ";".join(f"{k}={v}" for k, v in rec["params"].items())
        writer.writerow(rec)
    return buf.getvalue()


def to_pretty(reports: list, summary: dict | None = None) -> str:
    lines = []
    for r in reports:
        params = " ".join(f"{k}={render_value(v)}" for k, v in r.params.items())
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.identity} {params}  residual={mpmath.nstr(r.residual, 3)}"
                     f"  bound={mpmath.nstr(r.bound, 3)}")
    if summary is not None:
        lines.append(f"-- {summary['identity']}: {summary['passed']}/{summary['count']} passed"
                     + (f", max residual {summary['max_residual']}" if summary["count"] else ""))
    return "\n".join(lines)
