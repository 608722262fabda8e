import json

import mpmath
import pytest

from qeuler.identities import (
    FIELDS,
    DomainError,
    get,
    registry,
    sweep,
    to_csv,
    to_json,
    to_pretty,
    verify,
)
from qeuler.identities.qentries import x1_boundary_term, x1_rhs_printed, cor_rhs_printed
from qeuler.numerics import Precision
from qeuler.stuffle import FormalSum, Letter, li_star, subsequence_expansion

REQUIRED = [
    "thm1.1", "thm1.1-special", "lemma2.1", "thm1.2", "thm1.2-x1", "thm-mul-li-zeta",
    "cor-mul-li-zeta", "eq-sum-zeta", "eq-double-sum", "eq-li-li-2", "eq-li-li-3", "eq-li-s",
    "thm1.3", "thm1.4", "thm1.4-symbolic", "cor4.1", "cor4.2", "cor4.3", "cor4.4", "cor4.5",
    "zeta-poly-l", "ex-s231bar", "ex-s2bar3bar1bar", "euler-linear",
]


def test_registry_contents():
    ids = [e.id for e in registry()]
    assert len(ids) >= 22
    assert len(set(ids)) == len(ids)
    for i in REQUIRED:
        assert i in ids
    for e in registry():
        assert e.mode in ("numeric-q", "symbolic", "classical")
        assert e.ref and "§" not in e.ref and "Eq." not in e.ref
    with pytest.raises(KeyError):
        get("no-such-identity")


@pytest.mark.parametrize("entry", registry(), ids=lambda e: e.id)
def test_smoke_binding(entry):
    r = verify(entry.id, entry.smoke)
    assert r.passed
    for side in (r.lhs, r.rhs):
        if isinstance(side, FormalSum):
            continue
        assert mpmath.isfinite(side.value) and mpmath.isfinite(side.bound)


def test_verify_examples():
    r = verify("thm1.4", {"n": 2, "k": "(1,1)", "x": "(0.5,0.3)", "q": "0.5"})
    assert r.passed
    r = verify("euler-linear", {"k": 2})
    assert r.passed and r.residual <= 1e-10
    r = verify("thm1.1", {"k": 1, "l": 1, "a": "0.5", "b": "0.25", "x": "0.5", "q": "0.5"})
    assert r.passed


def test_sweep_thm12_grid():
    grid = {"k": [2, 3], "l": [2, 3], "s": [0, 1], "h": [0, 1], "x": ["0.3", "0.6"], "q": ["0.3", "0.7"]}
    res = sweep("thm1.2", grid)
    assert len(res.reports) == 64
    assert res.all_passed
    assert res.summary["failed"] == 0


def test_sweep_li_li_2():
    grid = {"k1": [1, 2, 3], "k2": [1, 2, 3], "x": ["0.5", "-0.5"], "y": ["0.5", "-0.5"], "q": ["0.5"]}
    res = sweep("eq-li-li-2", grid)
    assert len(res.reports) == 36 and res.all_passed


def test_empty_grid():
    res = sweep("thm1.2", {})
    assert res.reports == []
    assert res.summary["count"] == 0 and res.summary["worst"] is None
    assert res.all_passed


def test_parameterless_entry_has_one_point():
    res = sweep("ex-s231bar")
    assert len(res.reports) == 1 and res.all_passed


@pytest.mark.parametrize("ident,binding,needle", [
    ("thm1.2", {"k": 2, "l": 2, "s": 3, "h": 0, "x": "0.3", "q": "0.5"}, "s"),
    ("thm1.1", {"k": 1, "l": 1, "a": "0.5", "b": "0.25", "x": "1.5", "q": "0.5"}, "x"),
    ("thm1.1", {"k": 1, "l": 1, "a": "0.5", "b": "0.25", "x": "0.5", "q": "1"}, "q"),
    ("thm1.4", {"n": 3, "k": "(1,1)", "x": "(0.5,0.3)", "q": "0.5"}, "n"),
    ("cor-mul-li-zeta", {"k": 3, "l": 2, "s": 0, "h": "0.5", "q": "0.5"}, "s"),
    ("euler-linear", {"k": 1}, "k"),
])
def test_domain_errors_name_constraint(ident, binding, needle):
    with pytest.raises((DomainError, ValueError)) as exc:
        verify(ident, binding)
    assert needle in str(exc.value)


def test_missing_and_unknown_parameters():
    with pytest.raises(DomainError, match="missing"):
        verify("euler-linear", {})
    with pytest.raises(DomainError, match="unknown"):
        verify("euler-linear", {"k": 2, "z": 1})


def test_x1_printed_form_differs_by_boundary_term():
    # the printed x -> 1 display omits a term that vanishes only when s = h
    prec = Precision(256, 1e-40)
    for binding in ({"k": 3, "l": 2, "s": 1, "h": "0.5", "q": "0.5"},
                    {"k": 3, "l": 3, "s": "0.5", "h": "0.5", "q": "0.7"},
                    {"k": 2, "l": 3, "s": 2, "h": 1, "q": "0.3"}):
        e = get("thm1.2-x1")
        b = e.bind(binding)
        with prec.workprec():
            lhs = e.lhs(b, prec)
            printed = x1_rhs_printed(b, prec)
            extra = x1_boundary_term(b["k"], b["l"], b["s"], b["h"], b["q"], prec)
            gap = (lhs.value - printed.value) - extra.value
            assert abs(gap) <= 10 * (lhs.bound + printed.bound + extra.bound)
            if b["s"] == b["h"]:
                assert abs(extra.value) <= extra.bound
            else:
                assert abs(extra.value) > 1e-6


def test_cor_printed_form_differs_by_boundary_term():
    prec = Precision(256, 1e-40)
    e = get("cor-mul-li-zeta")
    b = e.bind({"k": 3, "l": 2, "s": 1, "h": "0.5", "q": "0.5"})
    with prec.workprec():
        lhs = e.lhs(b, prec)
        printed = cor_rhs_printed(b, prec)
        extra = x1_boundary_term(b["k"], b["l"], b["s"], b["h"], b["q"], prec)
        assert abs(lhs.value - printed.value - extra.value) <= 10 * (lhs.bound + printed.bound + extra.bound)


@pytest.mark.parametrize("ks,xs", [((1, 2), ("0.5", "-0.3")), ((1, 2, 1), ("0.5", "-0.3", "0.6")),
                                   ((2, 1, 3), ("-0.6", "0.3", "0.5"))])
def test_symbolic_and_numeric_thm14_agree(ks, xs):
    prec = Precision(256, 1e-40)
    n = len(ks)
    binding = {"n": n, "k": "(" + ",".join(map(str, ks)) + ")", "x": "(" + ",".join(xs) + ")", "q": "0.5"}
    numeric = verify("thm1.4", binding, prec)
    assert numeric.passed
    expr = subsequence_expansion([Letter(k, x) for k, x in zip(ks, xs)])
    val = li_star(expr, "0.5", prec)
    with prec.workprec():
        assert abs(val.value - numeric.rhs.value) <= 10 * (val.bound + numeric.rhs.bound)


SCALING = ["thm1.1", "thm1.2", "eq-li-li-2", "thm1.3", "thm1.4", "lemma3.1", "euler-linear",
           "cor4.1", "zeta-poly-l"]


@pytest.mark.parametrize("ident", SCALING)
def test_residual_scaling(ident):
    e = get(ident)
    base = e.default_precision()
    a = verify(ident, e.smoke, base)
    b = verify(ident, e.smoke, base.doubled())
    assert a.passed and b.passed
    # doubling the mantissa must not worsen residual / bound; 1e-9 absorbs
    # rounding noise in the ratio itself
    assert b.ratio <= a.ratio + 1e-9


def test_report_serialisation():
    res = sweep("eq-li-li-2", {"k1": [1], "k2": [1, 2], "x": ["0.5"], "y": ["-0.5"], "q": ["0.5"]})
    records = json.loads(to_json(res.reports, res.summary))
    assert len(records) == 3
    for rec in records[:2]:
        assert list(rec) == FIELDS
        assert rec["pass"] is True
        assert rec["params"]["x"] == "0.5" and rec["params"]["q"] == "0.5"
    assert records[-1]["summary"]["count"] == 2
    csv_text = to_csv(res.reports)
    assert csv_text.splitlines()[0] == ",".join(FIELDS)
    assert len(csv_text.splitlines()) == 3
    pretty = to_pretty(res.reports, res.summary)
    assert pretty.count("PASS") == 2 and "2/2 passed" in pretty


def test_symbolic_report_record():
    r = verify("thm1.4-symbolic", {"k": "(1,2)"})
    rec = r.record()
    assert rec["lhs"] == rec["rhs"] and rec["residual"] == "0.0"


def test_parallel_sweep_matches_serial():
    grid = {"k": [1, 2], "l": [1, 2], "a": ["0", "0.5"], "b": ["0.25"], "x": ["0.5"], "q": ["0.5"]}
    one = sweep("thm1.1", grid, jobs=1)
    two = sweep("thm1.1", grid, jobs=2)
    assert to_json(one.reports, one.summary) == to_json(two.reports, two.summary)
