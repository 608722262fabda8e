"""Command-line front end.

Subcommands::

    qeuler eval OBJECT [SPEC] [key=value ...]
    qeuler verify ID [key=value ...] | --all
    qeuler sweep ID [key=v1,v2,...]
    qeuler stuffle "WORD WORD ..." (--symbolic | --numeric q=VALUE)
    qeuler limits

Exit codes: 0 success or all checks passed, 1 a verification failed,
2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

from . import classical, identities, numerics, qseries
from .stuffle import FormalSum, from_text, li_star, parse_letters, stuffle, to_text
from .numerics import Precision, QParam, QReal, as_exact

FORMATS = ("json", "csv", "pretty")
EVAL_OBJECTS = ("q-bracket", "zeta-partial", "q-polylog", "h-function", "s-sum", "q-harmonic",
                "li-star", "euler-sum", "zeta", "alt-zeta")


class UsageError(Exception):
    """Bad command-line input; reported on one line with exit code 2."""


@dataclass
class RunConfig:
    """Settings merged from the config file and the command line (flags win)."""

    precision_bits: int | None = None
    tol: float | None = None
    slack: float = identities.DEFAULT_SLACK
    format: str = "pretty"
    jobs: int = 1
    grids: dict = field(default_factory=dict)  # identity id -> {param: [values]}

    def precision(self, default: Precision) -> Precision:
        bits = self.precision_bits or default.mantissa_bits
        tol = self.tol if self.tol is not None else default.target_tol
        try:
            return Precision(bits, tol)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def read_config(path: str) -> RunConfig:
    """Flat ``key = value`` lines; ``#`` starts a comment.

    Recognised keys: precision-bits, tol, slack, format, jobs and
    ``grid.<identity>.<param> = v1,v2,...`` for default-grid overrides.
    """
    cfg = RunConfig()
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        try:
            if key == "precision-bits":
                cfg.precision_bits = int(value)
            elif key == "tol":
                cfg.tol = float(value)
            elif key == "slack":
                cfg.slack = float(value)
            elif key == "format":
                if value not in FORMATS:
                    raise ValueError(f"format must be one of {', '.join(FORMATS)}")
                cfg.format = value
            elif key == "jobs":
                cfg.jobs = int(value)
            elif key.startswith("grid."):
                ident, _, param = key[len("grid."):].rpartition(".")
                if not ident or not param:
                    raise ValueError(f"expected grid.<identity>.<param>, got {key!r}")
                cfg.grids.setdefault(ident, {})[param] = _split_values(value)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise UsageError(f"{path}:{n}: {exc}") from None
    return cfg


def _split_values(text: str) -> list:
    """Split 'a,b,(1,2),c' on top-level commas."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_bindings(tokens) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise UsageError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# series mini-syntax ------------------------------------------------------------

_POWER_RE = re.compile(r"^q(?:\^\(?\s*([^()]+?)\s*\)?)?$")


def parse_weight(text: str, q: Fraction, bits: int):
    """A weight token: a literal (0.5, -1/3), q, q^s or a '*'-product of these."""
    value = Fraction(1)
    for factor in text.replace(" ", "").split("*"):
        m = _POWER_RE.match(factor)
        if m:
            e = as_exact(m.group(1) or "1")
            if isinstance(e, Fraction) and e.denominator == 1:
                value *= q ** int(e)
            else:
                with mpmath.workprec(bits + 64):
                    value *= as_exact(mpmath.power(numerics.to_mpf(q), numerics.to_mpf(e)))
        else:
            try:
                value *= Fraction(factor)
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"malformed weight {text!r}") from None
    return value


_SERIES_RE = re.compile(r"^\s*S\s*\[(.*?)\|(.*?)\]\s*$")


def parse_series(text: str, q: Fraction, bits: int) -> qseries.SeriesSpec:
    """Parse 'S[k1,...,kn; x1,...,xn | k; x]' (inner part may be empty: 'S[ | 2; q]')."""
    m = _SERIES_RE.match(text)
    if not m:
        raise UsageError(f"malformed series {text!r}; expected S[k1,...; x1,... | k; x]")
    inner, outer = m.groups()

    def split(part, what):
        if not part.strip() or part.strip() == ";":
            return [], []
        if ";" not in part:
            raise UsageError(f"{what} part of {text!r} needs 'exponents; weights'")
        ks, xs = part.split(";", 1)
        ks = [t.strip() for t in ks.split(",") if t.strip()]
        xs = [t.strip() for t in xs.split(",") if t.strip()]
        try:
            kv = [int(k) for k in ks]
        except ValueError:
            raise UsageError(f"exponents must be integers in {text!r}") from None
        return kv, [parse_weight(x, q, bits) for x in xs]

    ik, ix = split(inner, "inner")
    ok, ox = split(outer, "outer")
    if len(ok) != 1 or len(ox) != 1:
        raise UsageError(f"the outer part of {text!r} needs exactly one exponent and one weight")
    try:
        return qseries.series(ik, ix, ok[0], ox[0], QParam(q))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# output ----------------------------------------------------------------------------

def _digits(prec: Precision) -> int:
    return int(prec.mantissa_bits * 0.30103)


def format_value(label: str, value: QReal, prec: Precision, fmt: str) -> str:
    v = mpmath.nstr(value.value, _digits(prec))
    b = mpmath.nstr(value.bound, 6)
    if fmt == "json":
        return json.dumps({"object": label, "value": v, "bound": b}, indent=1)
    if fmt == "csv":
        return f"object,value,bound\n\"{label}\",{v},{b}"
    return f"{label} = {v} ± {b}"


# subcommands -------------------------------------------------------------------------

def _need(b: dict, *names):
    missing = [n for n in names if n not in b]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join(missing)}")
    extra = [n for n in b if n not in names]
    if extra:
        raise UsageError(f"unknown parameter(s): {', '.join(extra)}")
    return [b[n] for n in names]


def _int(v, name):
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {v!r}") from None


def evaluate(obj: str, spec: str | None, b: dict, cfg: RunConfig):
    """Return (label, QReal, precision) for an eval request."""
    classical_obj = obj in ("euler-sum", "zeta", "alt-zeta")
    prec = cfg.precision(classical.CLASSICAL_PRECISION if classical_obj else numerics.DEFAULT_PRECISION)
    bits = prec.mantissa_bits
    if obj == "euler-sum":
        if spec is None:
            spec = b.pop("spec", None)
        _need(b)
        if spec is None:
            raise UsageError("euler-sum needs a spec such as 'S(1;2)'")
        return spec, classical.euler_sum(classical.parse_euler_sum(spec), prec), prec
    if obj in ("zeta", "alt-zeta"):
        (k,) = _need(b, "k")
        fn = classical.zeta_value if obj == "zeta" else classical.alt_zeta_value
        return f"{obj}({k})", fn(_int(k, "k"), prec), prec

    if "q" not in b:
        raise UsageError(f"{obj} needs q=VALUE")
    q = as_exact(b["q"])
    if not 0 < q < 1:
        raise UsageError("q must lie in (0, 1)")
    qp = QParam(q)

    def w(name):
        return parse_weight(b[name], q, bits)

    label = f"{obj} " + " ".join(f"{k}={v}" for k, v in b.items())
    if obj == "q-bracket":
        _need(b, "m", "q")
        with prec.workprec():
            return label, numerics.q_bracket(as_exact(b["m"]), qp), prec
    if obj == "zeta-partial":
        _need(b, "m", "k", "x", "q")
        return label, qseries.zeta_partial(_int(b["m"], "m"), _int(b["k"], "k"), w("x"), qp, prec), prec
    if obj == "q-polylog":
        _need(b, "k", "x", "q")
        return label, qseries.q_polylog(_int(b["k"], "k"), w("x"), qp, prec), prec
    if obj == "h-function":
        _need(b, "k", "x", "a", "q")
        return label, qseries.h_function(qseries.HSpec(_int(b["k"], "k"), w("x"), as_exact(b["a"]), qp),
                                         prec), prec
    if obj == "q-harmonic":
        _need(b, "m", "k", "q")
        return label, qseries.q_harmonic(_int(b["m"], "m"), _int(b["k"], "k"), qp, prec), prec
    if obj == "s-sum":
        if spec is None:
            spec = b.pop("spec", None)
        _need(b, "q")
        if spec is None:
            raise UsageError("s-sum needs a series such as 'S[1; 1 | 2; q]'")
        return spec, qseries.s_sum(parse_series(spec, q, bits), prec), prec
    if obj == "li-star":
        if spec is None:
            spec = b.pop("word", None)
        _need(b, "q")
        if spec is None:
            raise UsageError("li-star needs a word such as '[1;0.5][2;0.3]'")
        return spec, li_star(from_text(spec), qp, prec), prec
    raise UsageError(f"unknown object {obj!r}")


def _grid_from(entry, overrides: dict) -> dict | None:
    if not overrides:
        return None
    grid = dict(entry.default_grid)
    grid.update(overrides)
    return grid


def _emit(reports, summary, fmt, digits):
    if fmt == "json":
        return identities.to_json(reports, summary, digits)
    if fmt == "csv":
        return identities.to_csv(reports, digits).rstrip("\n")
    return identities.to_pretty(reports, summary)


def cmd_eval(args, cfg):
    b = parse_bindings(args.params)
    label, value, prec = evaluate(args.object, args.spec, b, cfg)
    print(format_value(label, value, prec, cfg.format))
    return 0


def _prec_for(entry, cfg):
    return cfg.precision(entry.default_precision())


def cmd_verify(args, cfg):
    if args.all:
        if args.id or args.params:
            raise UsageError("--all takes no identity or bindings")
        results = []
        for entry in identities.registry():
            grid = cfg.grids.get(entry.id)
            prec = _prec_for(entry, cfg)
            results.append((identities.sweep(entry.id, _grid_from(entry, grid), prec, cfg.slack, cfg.jobs),
                            prec))
        return _emit_sweeps(results, cfg)
    if not args.id:
        raise UsageError("verify needs an identity id or --all")
    entry = _lookup(args.id)
    prec = _prec_for(entry, cfg)
    report = identities.verify(entry.id, parse_bindings(args.params), prec, cfg.slack)
    print(_emit([report], None, cfg.format, _digits(prec)))
    return 0 if report.passed else 1


def _emit_sweeps(results, cfg):
    if cfg.format == "json":
        records = []
        for res, prec in results:
            records.extend(r.record(_digits(prec)) for r in res.reports)
            records.append({"summary": res.summary})
        print(json.dumps(records, indent=1))
    elif cfg.format == "csv":
        chunks = [identities.to_csv(res.reports, _digits(prec)).rstrip("\n") for res, prec in results]
        head = chunks[0].split("\n", 1)[0] if chunks else ",".join(identities.FIELDS)
        body = [c.split("\n", 1)[1] for c in chunks if "\n" in c]
        print("\n".join([head] + body))
    else:
        print("\n".join(identities.to_pretty(res.reports, res.summary) for res, _ in results))
    return 0 if all(res.all_passed for res, _ in results) else 1


def _lookup(ident):
    try:
        return identities.get(ident)
    except KeyError:
        raise UsageError(f"unknown identity {ident!r}") from None


def cmd_sweep(args, cfg):
    entry = _lookup(args.id)
    overrides = dict(cfg.grids.get(entry.id, {}))
    overrides.update({k: _split_values(v) for k, v in parse_bindings(args.params).items()})
    prec = _prec_for(entry, cfg)
    res = identities.sweep(entry.id, _grid_from(entry, overrides), prec, cfg.slack, cfg.jobs)
    return _emit_sweeps([(res, prec)], cfg)


def cmd_stuffle(args, cfg):
    try:
        words = [parse_letters(tok) for tok in " ".join(args.letters).split()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not words:
        raise UsageError("need at least one letter")
    product = FormalSum.of(words[0])
    for w in words[1:]:
        product = stuffle(product, w)
    if args.numeric is None:
        text = to_text(product)
        if cfg.format == "json":
            text = json.dumps({"product": text})
        print(text)
        return 0
    b = parse_bindings([args.numeric])
    _need(b, "q")
    prec = cfg.precision(numerics.DEFAULT_PRECISION)
    value = li_star(product, QParam(as_exact(b["q"])), prec)
    print(format_value(to_text(product), value, prec, cfg.format))
    return 0


LIMIT_QS = ("0.9", "0.99", "0.999")


def cmd_limits(args, cfg):
    """Table of q-analogues next to their q -> 1 limits."""
    prec = cfg.precision(Precision(128, 1e-20))
    cprec = classical.CLASSICAL_PRECISION
    m = args.m
    rows = []
    with prec.workprec():
        z2 = classical.zeta_value(2, cprec).value
        z3 = classical.zeta_value(3, cprec).value
        for qs in LIMIT_QS:
            qp = QParam(as_exact(qs))
            br = numerics.q_bracket(m, qp).value
            li2 = qseries.q_polylog(2, qp.q, qp, prec).value
            s12 = qseries.s_sum(qseries.series([1], [1], 2, qp.q, qp), prec).value
            rows.append({"q": qs, f"[{m}]": br, "Li_2[q]": li2, "S[1;1|2;q]": s12})
        limit = {"q": "1 (limit)", f"[{m}]": mpmath.mpf(m), "Li_2[q]": z2, "S[1;1|2;q]": 2 * z3}
    rows.append(limit)
    cols = list(rows[0])
    if cfg.format == "json":
        print(json.dumps([{c: (r[c] if c == "q" else mpmath.nstr(r[c], 20)) for c in cols} for r in rows],
                         indent=1))
    elif cfg.format == "csv":
        print(",".join(cols))
        for r in rows:
            print(",".join(r[c] if c == "q" else mpmath.nstr(r[c], 20) for c in cols))
    else:
        print("  ".join(f"{c:>24}" for c in cols))
        for r in rows:
            print("  ".join(f"{(r[c] if c == 'q' else mpmath.nstr(r[c], 18)):>24}" for c in cols))
    return 0


# argument parsing -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=argparse.SUPPRESS,
                        help="mantissa bits (default 256, 128 for classical sums)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="target absolute tolerance")
    common.add_argument("--slack", type=float, default=argparse.SUPPRESS,
                        help="pass if residual <= slack * bound (default 10)")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS, help="flat key = value settings file")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for sweeps")

    p = argparse.ArgumentParser(prog="qeuler", parents=[common],
                                description="Certified q-Euler sums, stuffle products and identity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate one series object")
    e.add_argument("object", choices=EVAL_OBJECTS)
    e.add_argument("spec", nargs="?", help="series 'S[...]', Euler sum 'S(...)' or word for li-star")
    e.add_argument("params", nargs="*", help="key=value parameters")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", parents=[common], help="verify one binding, or every default grid")
    v.add_argument("id", nargs="?")
    v.add_argument("params", nargs="*", help="key=value binding")
    v.add_argument("--all", action="store_true", help="sweep every registry entry on its default grid")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="verify an identity over a grid")
    s.add_argument("id")
    s.add_argument("params", nargs="*", help="key=v1,v2,... grid axes overriding the default grid")
    s.set_defaults(func=cmd_sweep)

    st = sub.add_parser("stuffle", parents=[common], help="stuffle product of words")
    st.add_argument("letters", nargs="+", help="words separated by spaces, e.g. '[2;a] [3;b]'")
    mode = st.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", help="print the canonical expansion (default)")
    mode.add_argument("--numeric", metavar="q=VALUE", help="print Li* of the product at this q")
    st.set_defaults(func=cmd_stuffle)

    lim = sub.add_parser("limits", parents=[common], help="q -> 1 diagnostic table")
    lim.add_argument("--m", type=int, default=3, help="bracket argument (default 3)")
    lim.set_defaults(func=cmd_limits)
    return p


def _config_from(ns) -> RunConfig:
    cfg = read_config(ns.config) if getattr(ns, "config", None) else RunConfig()
    updates = {}
    for attr in ("precision_bits", "tol", "slack", "format", "jobs"):
        if hasattr(ns, attr):
            updates[attr] = getattr(ns, attr)
    cfg = replace(cfg, **updates)
    if cfg.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return cfg


def _fix_eval_positionals(ns):
    # a bare key=value in the optional spec slot is really a parameter
    if ns.command == "eval" and ns.spec is not None and "=" in ns.spec and not ns.spec.lstrip().startswith("S"):
        ns.params = [ns.spec] + ns.params
        ns.spec = None
    if ns.command == "verify" and ns.id and "=" in ns.id:
        ns.params = [ns.id] + ns.params
        ns.id = None


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    _fix_eval_positionals(ns)
    try:
        cfg = _config_from(ns)
        return ns.func(ns, cfg)
    except (UsageError, identities.DomainError, ValueError, TypeError, ZeroDivisionError,
            numerics.TruncationError) as exc:
        print(f"qeuler: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
