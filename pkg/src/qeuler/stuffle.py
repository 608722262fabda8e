"""Words over the alphabet of letters [k; x] and their stuffle algebra.

A letter carries a positive integer ``k`` and a weight that is either a
concrete number or a symbolic monomial.  Words are tuples of letters and a
:class:`FormalSum` is a finite rational combination of words.  The
stuffle product is

    au * bv = a(u * bv) + b(au * v) - (a o b)(u * v),
    [k; x] o [l; y] = [k + l; xy],

and :func:`li_star` evaluates words as non-strict nested q-sums.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import mpmath
from mpmath import mpf

from .numerics import (
    DEFAULT_PRECISION,
    MAX_TERMS,
    Precision,
    QReal,
    TruncationError,
    as_exact,
    as_qparam,
    fixed_rounding_bound,
    from_fixed,
    inverse_brackets,
    qsum,
    to_fixed,
    to_mpf,
)
from .qseries import CHECK_EVERY, SeriesSpec

VAR_RE = re.compile(r"[a-zA-Z][0-9_]*")


@dataclass(frozen=True, order=True)
class Monomial:
    """A commutative product of symbolic variables, kept as a sorted tuple."""

    vars: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(sorted(self.vars)))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip()
        if text == "1":
            return cls()
        names = VAR_RE.findall(text)
        if "".join(names) != text.replace("*", ""):
            raise ValueError(f"malformed monomial {text!r}")
        return cls(tuple(names))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            raise TypeError("symbolic and concrete weights cannot be mixed")
        return Monomial(self.vars + other.vars)

    def __str__(self):
        return "".join(self.vars) or "1"


def _is_symbolic(w) -> bool:
    return isinstance(w, Monomial)


def _weight(x):
    if isinstance(x, Monomial):
        return x
    if isinstance(x, str) and VAR_RE.match(x.strip()):
        return Monomial.parse(x)
    return as_exact(x)


def format_weight(w) -> str:
    if isinstance(w, Monomial):
        return str(w)
    if isinstance(w, Fraction):
        if w.denominator == 1:
            return str(w.numerator)
        d = w.denominator
        while d % 2 == 0:
            d //= 2
        while d % 5 == 0:
            d //= 5
        if d == 1:
            # terminating decimal: print it exactly
            digits = 0
            while (w * 10 ** digits).denominator != 1:
                digits += 1
            return f"{float(w):.{digits}f}" if digits <= 15 else str(w)
        return str(w)
    return mpmath.nstr(w, 30)


@dataclass(frozen=True)
class Letter:
    """The letter [k; x]."""

    k: int
    x: object

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"letter exponent must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        w = _weight(self.x)
        if not _is_symbolic(w) and abs(w) > 1:
            raise ValueError(f"letter weight must satisfy |x| <= 1, got {w}")
        object.__setattr__(self, "x", w)

    @property
    def symbolic(self) -> bool:
        return _is_symbolic(self.x)

    def sort_key(self):
        if self.symbolic:
            return (self.k, 1, self.x.vars, 0)
        return (self.k, 0, (), self.x)

    def __str__(self):
        return f"[{self.k};{format_weight(self.x)}]"


def circ(a: Letter, b: Letter) -> Letter:
    """[k; x] o [l; y] = [k + l; xy]."""
    if a.symbolic != b.symbolic:
        raise TypeError("symbolic and concrete weights cannot be mixed")
    return Letter(a.k + b.k, a.x * b.x)


def word(*letters) -> tuple:
    """Build a word from Letters or (k, x) pairs."""
    return tuple(l if isinstance(l, Letter) else Letter(*l) for l in letters)


def _word_key(w: tuple):
    # longer words first, then letter by letter
    return (-len(w), tuple(l.sort_key() for l in w))


class FormalSum:
    """A finite Q-linear combination of words (an element of h^1)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        mode = None
        for w, c in dict(terms or {}).items():
            w = tuple(w)
            c = Fraction(c)
            for l in w:
                if mode is None:
                    mode = l.symbolic
                elif mode != l.symbolic:
                    raise TypeError("symbolic and concrete weights cannot be mixed")
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
                if not clean[w]:
                    del clean[w]
        self._terms = clean
        self._hash = None

    @classmethod
    def of(cls, w) -> "FormalSum":
        if isinstance(w, FormalSum):
            return w
        if isinstance(w, Letter):
            w = (w,)
        return cls({tuple(w): 1})

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _word_key(kv[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def coefficient(self, w) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    @property
    def symbolic(self) -> bool | None:
        for w in self._terms:
            for l in w:
                return l.symbolic
        return None

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            other = FormalSum.of(other)
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self._terms)
        for w, c in FormalSum.of(other)._terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return FormalSum(out)

    def __neg__(self):
        return FormalSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-FormalSum.of(other))

    def scale(self, c) -> "FormalSum":
        c = Fraction(c)
        return FormalSum({w: c * v for w, v in self._terms.items()})

    def prepend(self, letter: Letter) -> "FormalSum":
        """Left concatenation letter * w for every word w."""
        return FormalSum({(letter,) + w: c for w, c in self._terms.items()})

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"FormalSum({to_text(self)!r})"


ONE = FormalSum({(): 1})


def _coef_text(c: Fraction) -> str:
    if c.denominator == 1:
        return "" if c == 1 else f"{c.numerator}"
    return f"({c})"


def to_text(s: FormalSum) -> str:
    """Canonical text: terms in canonical word order, ASCII signs."""
    items = s.items()
    if not items:
        return "0"
    out = []
    for i, (w, c) in enumerate(items):
        body = "".join(str(l) for l in w) or "1"
        mag = _coef_text(abs(c))
        term = f"{mag}*{body}" if mag else body
        if i == 0:
            out.append(("-" if c < 0 else "") + term)
        else:
            out.append(("- " if c < 0 else "+ ") + term)
    return " ".join(out)


_LETTER_RE = re.compile(r"\[\s*(\d+)\s*;\s*([^\]]+?)\s*\]")
_TERM_RE = re.compile(r"([+-])?\s*(?:\(?\s*(\d+(?:/\d+)?)\s*\)?\s*\*?)?\s*((?:\[[^\]]*\]\s*)+|1)")


def parse_letters(text: str) -> tuple:
    """Parse '[2;a] [3;b]' or '[1;0.5][2;-1/3]' into a word."""
    found = _LETTER_RE.findall(text)
    leftover = _LETTER_RE.sub("", text).strip()
    if not found or leftover:
        raise ValueError(f"malformed letters: {text!r}")
    return tuple(Letter(int(k), x) for k, x in found)


def from_text(text: str) -> FormalSum:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if text == "0":
        return FormalSum()
    total, pos = FormalSum(), 0
    for m in _TERM_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"malformed formal sum near {text[pos:m.start()]!r}")
        pos = m.end()
        sign, coef, body = m.groups()
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        w = () if body.strip() == "1" else parse_letters(body)
        total = total + FormalSum({w: c})
    if text[pos:].strip():
        raise ValueError(f"malformed formal sum near {text[pos:]!r}")
    return total


# the product ---------------------------------------------------------------

@lru_cache(maxsize=200_000)
def _stuffle_words(u: tuple, v: tuple) -> FormalSum:
    if not u:
        return FormalSum({v: 1})
    if not v:
        return FormalSum({u: 1})
    a, b = u[0], v[0]
    first = _stuffle_words(u[1:], v).prepend(a)
    second = _stuffle_words(u, v[1:]).prepend(b)
    third = _stuffle_words(u[1:], v[1:]).prepend(circ(a, b))
    return first + second - third


def stuffle(u, v) -> FormalSum:
    """The stuffle product, extended bilinearly to formal sums."""
    U, V = FormalSum.of(u), FormalSum.of(v)
    mu, mv = U.symbolic, V.symbolic
    if mu is not None and mv is not None and mu != mv:
        raise TypeError("symbolic and concrete weights cannot be mixed")
    out = {}
    for wu, cu in U._terms.items():
        for wv, cv in V._terms.items():
            for w, c in _stuffle_words(wu, wv)._terms.items():
                out[w] = out.get(w, Fraction(0)) + cu * cv * c
    return FormalSum(out)


def stuffle_all(letters) -> FormalSum:
    """w_1 * w_2 * ... * w_n for one-letter words (1 for n = 0)."""
    acc = ONE
    for l in letters:
        acc = stuffle(acc, (l,))
    return acc


def _product(ws):
    acc = None
    for w in ws:
        acc = w if acc is None else acc * w
    return acc


@lru_cache(maxsize=4096)
def _expansion(letters: tuple) -> FormalSum:
    n = len(letters)
    if n == 0:
        return ONE
    if n == 1:
        return FormalSum({letters: 1})
    total_k = sum(l.k for l in letters)
    out = FormalSum()
    for m in range(n):
        sign = (-1) ** (n - m - 1)
        for idx in combinations(range(n), m):
            chosen = tuple(letters[i] for i in idx)
            rest = [letters[i].x for i in range(n) if i not in idx]
            head = Letter(total_k - sum(l.k for l in chosen), _product(rest))
            out = out + _expansion(chosen).prepend(head).scale(sign)
    return out


def subsequence_expansion(letters) -> FormalSum:
    """w_1 * ... * w_n written as a signed sum over proper subsequences:
    sum_l (-1)^(n-dep(l)-1) [wt(k)-wt(l); |x|/|x_l|] (product over l).

    The product over the subsequence is expanded by this same recursion.
    """
    letters = tuple(l if isinstance(l, Letter) else Letter(*l) for l in letters)
    if not letters:
        raise ValueError("need at least one letter")
    modes = {l.symbolic for l in letters}
    if len(modes) > 1:
        raise TypeError("symbolic and concrete weights cannot be mixed")
    return _expansion(letters)


# evaluation ----------------------------------------------------------------

def li_star(s, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """Li*[w] = sum over m_1 >= ... >= m_n >= 1 of prod x_i^m_i / [m_i]^k_i,
    extended linearly to formal sums (Li*[1] = 1)."""
    S = FormalSum.of(s) if not isinstance(s, FormalSum) else s
    if S.symbolic:
        raise TypeError("li_star needs concrete weights")
    qp = as_qparam(q)
    parts = []
    with prec.workprec():
        for w, c in S.items():
            parts.append(_li_star_word(w, qp, prec) * QReal(mpf(c.numerator) / c.denominator))
        return qsum(parts)


@lru_cache(maxsize=16384)
def _li_star_word(w: tuple, qp, prec: Precision) -> QReal:
    with prec.workprec():
        if not w:
            return QReal(mpf(1))
        xs = [to_mpf(l.x) for l in w]
        if any(abs(x) >= 1 for x in xs):
            raise ValueError("li_star needs every letter weight strictly inside (-1, 1)")
        if any(x == 0 for x in xs):
            return QReal(mpf(0))
        n = len(w)
        P = prec.fixed_bits
        tab = inverse_brackets(qp, P)
        ks = [l.k for l in w]
        axs = [abs(x) for x in xs]
        xf = [to_fixed(l.x, P) for l in w]
        tol = mpf(prec.target_tol) / 2
        one = 1 << P
        rows = [tab.row(k, 512) for k in ks]
        acc = [0] * n      # acc[i]: nested sum over m_i..m_n with m_i <= m
        mass = [0] * n
        xp = [one] * n
        m = 0
        while True:
            m += 1
            if m + 1 >= len(rows[0]):
                rows = [tab.row(k, 2 * m) for k in ks]
            inner, inner_abs = one, one
            for i in range(n - 1, -1, -1):
                xp[i] = (xp[i] * xf[i]) >> P
                t = (xp[i] * rows[i][m]) >> P
                acc[i] += (t * inner) >> P
                mass[i] += (abs(t) * inner_abs) >> P
                inner, inner_abs = acc[i], mass[i]
            if m % CHECK_EVERY == 0:
                tail = _li_star_tail(m, mass, axs, [from_fixed(r[m + 1], P) for r in rows], P)
                if tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError(f"Li* of {w} not certified within {MAX_TERMS} terms")
        mag = mpf(1)
        for i in range(n):
            mag *= 1 + from_fixed(mass[i], P)
        rnd = fixed_rounding_bound(P, m, 2 * n + 2, qp, mag)
        return QReal(from_fixed(acc[0], P), tail * (1 + mpmath.ldexp(1, 40 - P)) + rnd)


def _li_star_tail(M, mass, axs, invs, P) -> mpf:
    """Bound on the part of the nested sum with m_1 > M.

    Working from the innermost letter outward, B_i bounds |acc_i(m)| for
    every m: the absolute mass up to M plus a geometric remainder scaled by
    the bound of the next block.
    """
    n = len(axs)
    B = mpf(1)
    rem = mpf(0)
    for i in range(n - 1, -1, -1):
        rem = B * axs[i] ** (M + 1) * invs[i] / (1 - axs[i])
        B = from_fixed(mass[i], P) + rem
    return rem


def s_as_li_star(spec: SeriesSpec, prec: Precision = DEFAULT_PRECISION):
    """S[k_1..k_n; x_1..x_n | k; x] as Li*[w (w_1 * ... * w_n)].

    Returns the formal sum and its value.  Only weights strictly inside
    (-1, 1) are admissible here.
    """
    if spec.depth < 1:
        raise ValueError("need at least one inner letter")
    letters = [Letter(k, x) for k, x in zip(spec.inner_k, spec.inner_x)]
    head = Letter(spec.outer_k, spec.outer_x)
    expr = stuffle_all(letters).prepend(head)
    return expr, li_star(expr, spec.q, prec)
