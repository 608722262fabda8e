"""Registry entries for the stuffle algebra and the polylogarithm product."""
from __future__ import annotations

from itertools import combinations

from ..numerics import QReal, qsum
from ..qseries import q_polylog, s_sum, series
from ..stuffle import FormalSum, Letter, Monomial, li_star, stuffle, stuffle_all, subsequence_expansion
from .core import DomainError, IdentityEntry, Param
from .qentries import Q_GRID


def _prod(vals, one=1):
    acc = one
    for v in vals:
        acc = acc * v
    return acc


def _thm14_dom(b):
    n, ks, xs = b["n"], b["k"], b["x"]
    if n < 1:
        raise DomainError("n must be a positive integer")
    if len(ks) != n or len(xs) != n:
        raise DomainError(f"k and x must both have n = {n} entries")
    if any(k < 1 for k in ks):
        raise DomainError("every k_j must be a positive integer")
    if any(not abs(x) < 1 for x in xs):
        raise DomainError("every |x_j| < 1 required")


def _thm14_lhs(b, prec):
    return _prod((q_polylog(k, x, b["q"], prec) for k, x in zip(b["k"], b["x"])), QReal(1))


def _thm14_rhs(b, prec):
    n, ks, xs, q = b["n"], b["k"], b["x"], b["q"]
    wt = sum(ks)
    parts = []
    for m in range(n):
        sign = -1 if (n - m - 1) % 2 else 1
        for idx in combinations(range(n), m):
            lk = [ks[i] for i in idx]
            lx = [xs[i] for i in idx]
            rest = _prod(xs[i] for i in range(n) if i not in idx)
            outer = wt - sum(lk)
            term = q_polylog(outer, rest, q, prec) if not idx else s_sum(series(lk, lx, outer, rest, q), prec)
            parts.append(term * sign)
    return qsum(parts)


def _symbolic_letters(ks):
    return tuple(Letter(k, Monomial((f"x{i + 1}",))) for i, k in enumerate(ks))


def _sym_dom(b):
    if not 1 <= len(b["k"]) <= 6:
        raise DomainError("between 1 and 6 letters are supported")
    if any(k < 1 for k in b["k"]):
        raise DomainError("every k_j must be a positive integer")


def _sym_lhs(b, prec):
    return stuffle_all(_symbolic_letters(b["k"]))


def _sym_rhs(b, prec):
    return subsequence_expansion(_symbolic_letters(b["k"]))


def _lemma31_dom(b):
    for name in ("u", "v"):
        if any(l.symbolic for l in b[name]):
            raise DomainError(f"{name} needs concrete weights")
        if any(not abs(l.x) < 1 for l in b[name]):
            raise DomainError(f"every weight of {name} must lie strictly inside (-1, 1)")


def _lemma31_lhs(b, prec):
    return li_star(stuffle(b["u"], b["v"]), b["q"], prec)


def _lemma31_rhs(b, prec):
    return li_star(FormalSum.of(b["u"]), b["q"], prec) * li_star(FormalSum.of(b["v"]), b["q"], prec)


P = Param


def entries() -> list:
    return [
        IdentityEntry(
            "thm1.4",
            (P("n", "int"), P("k", "ints"), P("x", "reals"), P("q", "q")),
            _thm14_lhs, _thm14_rhs,
            "product of n q-polylogarithms as a signed sum of S-sums over proper subsequences",
            "numeric-q", _thm14_dom,
            {"n": [1, 2, 3],
             "k": ["(1)", "(3)", "(1,1)", "(1,2)", "(2,3)", "(1,1,1)", "(1,2,3)"],
             "x": ["(0.5)", "(-0.3)", "(0.5,0.3)", "(0.6,-0.3)", "(0.5,0.3,-0.6)", "(-0.3,0.6,0.3)"],
             "q": Q_GRID},
            {"n": 2, "k": "(1,1)", "x": "(0.5,0.3)", "q": "0.5"},
        ),
        IdentityEntry(
            "thm1.4-symbolic",
            (P("k", "ints"),),
            _sym_lhs, _sym_rhs,
            "iterated stuffle of one-letter words equals the subsequence expansion, as exact formal sums",
            "symbolic", _sym_dom,
            {"k": ["(1)", "(2)", "(1,2)", "(2,2)", "(1,2,3)", "(2,2,2)", "(1,1,2,3)", "(2,3,1,2)"]},
            {"k": "(1,2,3)"},
        ),
        IdentityEntry(
            "lemma3.1",
            (P("u", "word"), P("v", "word"), P("q", "q")),
            _lemma31_lhs, _lemma31_rhs,
            "the nested-sum evaluation map is multiplicative for the stuffle product",
            "numeric-q", _lemma31_dom,
            {"u": ["[1;0.5]", "[2;-0.3][1;0.6]", "[1;0.3][1;0.5][2;-0.5]"],
             "v": ["[1;0.6]", "[3;0.5][1;-0.3]"],
             "q": Q_GRID},
            {"u": "[2;0.5][1;-0.3]", "v": "[1;0.6]", "q": "0.5"},
        ),
    ]
