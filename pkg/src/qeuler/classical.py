"""Classical (q -> 1) objects: harmonic numbers, zeta values and Euler sums.

Euler sums are written S(k_1, ..., k_n; k) with a negative inner entry -l
standing for the alternating harmonic number and ``alternating_outer``
adding the factor (-1)^(m-1).  They are summed directly up to N, and the
remainder is split as A(m) + (-1)^(m-1) B(m) with A, B smooth in m:

* A is handled by Euler-Maclaurin on the analytic continuation of the
  harmonic numbers (via Hurwitz zeta and digamma);
* B is an alternating tail, accelerated with the Euler transform.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .numerics import Precision, QReal, qsum

CLASSICAL_PRECISION = Precision(128, 1e-30)
DEFAULT_N = 128
EM_ORDER = 3
EULER_COLUMNS = 64
ASYM_MIN = 24


def harmonic(m: int, k: int, signed: bool = False) -> Fraction:
    """H_m^(k) or, with ``signed``, the alternating version sum (-1)^(j-1)/j^k."""
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    total = Fraction(0)
    for j in range(1, m + 1):
        t = Fraction(1, j ** k)
        total += -t if signed and j % 2 == 0 else t
    return total


# zeta-type constants -------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_coeffs(prec_bits: int, count: int) -> tuple:
    with mpmath.workprec(prec_bits + 20):
        return tuple(mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) for j in range(1, count + 1))


def _hurwitz_asym(s: int, a: mpf):
    """Asymptotic expansion of zeta(s, a) for large a, with an error bound.

    zeta(s,a) ~ a^(1-s)/(s-1) + a^(-s)/2 + sum_j B_2j/(2j)! (s)_(2j-1) a^(-s-2j+1);
    the series is summed while its terms decrease and the first omitted
    term (doubled) is the bound.
    """
    prec = mpmath.mp.prec
    coeffs = _bernoulli_coeffs(prec, 60)
    a_s = a ** (-s)
    total = a * a_s / (s - 1) + a_s / 2
    inv2 = 1 / (a * a)
    poch = mpf(s)          # (s)_(2j-1)
    power = a_s / a        # a^(-s-2j+1) at j = 1
    eps = mpmath.ldexp(abs(total), -prec - 4)
    prev = None
    for j, c in enumerate(coeffs, start=1):
        term = c * poch * power
        if prev is not None and abs(term) >= abs(prev):
            return total, 2 * abs(prev)
        if abs(term) < eps:
            return total, 2 * abs(term)
        total += term
        prev = term
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        power *= inv2
    return total, 2 * abs(prev)


def hurwitz_zeta(s: int, a) -> mpf:
    """zeta(s, a) for integer s >= 2 and a > 0 at the current precision."""
    a = mpf(a)
    if a >= ASYM_MIN:
        return _hurwitz_asym(s, a)[0]
    return mpmath.zeta(s, a)


def zeta_value(k: int, prec: Precision = CLASSICAL_PRECISION) -> QReal:
    """zeta(k) by direct summation to N = 32 plus the Euler-Maclaurin tail."""
    if k < 2:
        raise ValueError("zeta(k) needs k >= 2")
    return _zeta_value(int(k), prec)


@lru_cache(maxsize=None)
def _zeta_value(k, prec):
    with prec.workprec():
        N = 32
        head = mpmath.fsum(mpf(n) ** -k for n in range(1, N))
        tail, err = _hurwitz_asym(k, mpf(N))
        v = head + tail
        return QReal(v, err + 4 * N * abs(v) * mpmath.eps)


def _euler_transform(b, columns: int):
    """sum_{j>=0} (-1)^j b_j by the Euler transform; returns (value, bound)."""
    row = list(b)
    total, last = mpf(0), mpf(0)
    for n in range(columns):
        last = row[0] / mpf(2) ** (n + 1)
        total += -last if n % 2 else last
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return total, 4 * abs(last)


def alt_zeta_value(k: int, prec: Precision = CLASSICAL_PRECISION) -> QReal:
    """zeta-bar(k) = sum (-1)^(m-1)/m^k, summed with the Euler transform.

    This route is independent of :func:`zeta_value`; k = 1 gives ln 2.
    """
    if k < 1:
        raise ValueError("alternating zeta needs k >= 1")
    return _alt_zeta(int(k), prec)


@lru_cache(maxsize=None)
def _alt_zeta(k, prec):
    with prec.workprec():
        cols = prec.mantissa_bits + 16
        with mpmath.workprec(2 * prec.mantissa_bits + 32):
            v, err = _euler_transform([mpf(j + 1) ** -k for j in range(cols + 1)], cols)
        return QReal(v, err + 8 * abs(v) * mpmath.eps)


def _geometric_series(term, ratio, prec: Precision) -> QReal:
    """sum_{n>=1} term(n) with |term(n+1)/term(n)| <= ratio < 1."""
    with prec.workprec():
        tol = mpf(prec.target_tol) / 4
        total, n = mpf(0), 0
        while True:
            n += 1
            t = term(n)
            total += t
            tail = abs(t) * ratio / (1 - ratio)
            if tail < tol:
                return QReal(total, tail + 4 * n * abs(total) * mpmath.eps)


@lru_cache(maxsize=None)
def ln2(prec: Precision = CLASSICAL_PRECISION) -> QReal:
    """ln 2 = sum 1/(n 2^n)."""
    return _geometric_series(lambda n: 1 / (n * mpf(2) ** n), mpf(1) / 2, prec)


@lru_cache(maxsize=None)
def li4_half(prec: Precision = CLASSICAL_PRECISION) -> QReal:
    """Li_4(1/2) = sum 1/(2^n n^4)."""
    return _geometric_series(lambda n: 1 / (mpf(2) ** n * mpf(n) ** 4), mpf(1) / 2, prec)


@dataclass(frozen=True)
class Constants:
    """zeta(2..12), zeta-bar(1..12), ln 2, Li_4(1/2) and Euler's gamma."""

    zeta: dict = field(default_factory=dict)
    alt_zeta: dict = field(default_factory=dict)
    ln2: QReal = None
    li4_half: QReal = None
    euler_gamma: QReal = None


@lru_cache(maxsize=None)
def constants(prec: Precision = CLASSICAL_PRECISION) -> Constants:
    """The table of constants, computed once per precision."""
    with prec.workprec():
        gamma = QReal(+mpmath.euler, 2 * mpmath.eps)
    return Constants(
        zeta={k: zeta_value(k, prec) for k in range(2, 13)},
        alt_zeta={k: alt_zeta_value(k, prec) for k in range(1, 13)},
        ln2=ln2(prec),
        li4_half=li4_half(prec),
        euler_gamma=gamma,
    )


def zeta_bar(k: int, prec: Precision = CLASSICAL_PRECISION) -> QReal:
    return alt_zeta_value(k, prec)


# Euler sums ------------------------------------------------------------------

@dataclass(frozen=True)
class EulerSumSpec:
    """S(k_1, ..., k_n; k) with signed inner entries (negative = alternating
    harmonic number) and an optional alternating outer factor."""

    inner: tuple
    outer_k: int
    alternating_outer: bool = False

    def __post_init__(self):
        inner = tuple(int(k) for k in self.inner)
        object.__setattr__(self, "inner", inner)
        if any(k == 0 for k in inner):
            raise ValueError("inner entries must be nonzero integers")
        if int(self.outer_k) != self.outer_k or self.outer_k < 1:
            raise ValueError("outer exponent must be a positive integer")
        if not self.alternating_outer and self.outer_k < 2:
            raise ValueError("S(...;1) diverges; the outer exponent must be >= 2 unless alternating")

    @property
    def weight(self) -> int:
        return sum(abs(k) for k in self.inner) + self.outer_k

    def __str__(self):
        outer = f"-{self.outer_k}" if self.alternating_outer else str(self.outer_k)
        return f"S({','.join(str(k) for k in self.inner)};{outer})"


_ES_RE = re.compile(r"^\s*S\s*\(\s*(.*?)\s*;\s*(.+?)\s*\)\s*$")
_ENTRY_RE = re.compile(r"^(-)?(\d+)(̄)?$")


def _entry(tok: str):
    tok = tok.strip().replace("bar", "̄")
    if tok.startswith("̄"):
        tok = tok[1:] + "̄"
    m = _ENTRY_RE.match(tok)
    if not m:
        raise ValueError(f"malformed Euler-sum entry {tok!r}")
    neg, digits, bar = m.groups()
    if neg and bar:
        raise ValueError(f"entry {tok!r} is barred twice")
    return int(digits), bool(neg or bar)


def parse_euler_sum(text: str) -> EulerSumSpec:
    """Parse 'S(2,3;-1)', 'S(2,3;1̄)' or 'S(;3)'.

    A minus sign or a combining macron marks a bar: on an inner entry it
    selects the alternating harmonic number, on the outer one the factor
    (-1)^(m-1).
    """
    m = _ES_RE.match(text)
    if not m:
        raise ValueError(f"malformed Euler sum {text!r}; expected S(k1,...;k)")
    inner_txt, outer_txt = m.groups()
    inner = []
    if inner_txt:
        for tok in inner_txt.split(","):
            k, bar = _entry(tok)
            inner.append(-k if bar else k)
    k, bar = _entry(outer_txt)
    return EulerSumSpec(tuple(inner), k, bar)


def _factor(k: int, zbar):
    """Continuation t -> (c, d) with X(t) = c + s d, s = (-1)^(t-1) at integers."""
    if k >= 2:
        zk = mpmath.zeta(k)
        return lambda t: (zk - hurwitz_zeta(k, t + 1), 0)
    if k == 1:
        g = +mpmath.euler
        return lambda t: (mpmath.digamma(t + 1) + g, 0)
    l = -k
    zl = zbar[l]
    if l == 1:
        return lambda t: (zl, (mpmath.digamma((t + 2) / 2) - mpmath.digamma((t + 1) / 2)) / 2)
    scale = mpf(2) ** -l
    return lambda t: (zl, scale * (hurwitz_zeta(l, (t + 1) / 2) - hurwitz_zeta(l, (t + 2) / 2)))


def _parts(spec: EulerSumSpec, zbar):
    """t -> (A(t), B(t)) with term(m) = A(m) + (-1)^(m-1) B(m)."""
    fs = [_factor(k, zbar) for k in spec.inner]
    k, alt = spec.outer_k, spec.alternating_outer

    def AB(t):
        c, d = mpf(1), mpf(0)
        for f in fs:
            c2, d2 = f(t)
            c, d = c * c2 + d * d2, c * d2 + d * c2
        tk = t ** k
        c, d = c / tk, d / tk
        return (d, c) if alt else (c, d)

    return AB


def _em_tail(A, N: int, order: int):
    """Euler-Maclaurin sum_{m>N} A(m) at two consecutive orders."""
    integral, qerr = mpmath.quad(A, [N, 2 * N, 8 * N, mpmath.inf], error=True)
    base = integral - A(mpf(N)) / 2
    corr = []
    for j in range(1, order + 2):
        b = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j)
        corr.append(b * mpmath.diff(A, mpf(N), 2 * j - 1))
    low = base - mpmath.fsum(corr[:order])
    high = low - corr[order]
    return high, 4 * abs(high - low) + abs(qerr)


def euler_sum(spec, prec: Precision = CLASSICAL_PRECISION, N: int = DEFAULT_N) -> QReal:
    """Value of a classical Euler sum with an error estimate.

    ``spec`` may be an :class:`EulerSumSpec` or text accepted by
    :func:`parse_euler_sum`.
    """
    if isinstance(spec, str):
        spec = parse_euler_sum(spec)
    return _euler_sum(spec, prec, int(N))


@lru_cache(maxsize=4096)
def _euler_sum(spec: EulerSumSpec, prec: Precision, N: int) -> QReal:
    consts = constants(prec)
    with prec.workprec():
        zbar = {l: consts.alt_zeta[l].value if l <= 12 else alt_zeta_value(l, prec).value
                for l in {-k for k in spec.inner if k < 0}}
        # direct part, plus the exact (c, d) split for the next terms
        h = [mpf(0)] * len(spec.inner)
        total = mpf(0)
        bvals = []
        for m in range(1, N + EULER_COLUMNS + 2):
            s = 1 if m % 2 else -1
            c, d = mpf(1), mpf(0)
            for i, k in enumerate(spec.inner):
                if k > 0:
                    h[i] += mpf(m) ** -k
                    c2, d2 = h[i], 0
                else:
                    h[i] += s * mpf(m) ** k
                    c2, d2 = zbar[-k], s * (h[i] - zbar[-k])
                c, d = c * c2 + d * d2, c * d2 + d * c2
            mk = mpf(m) ** spec.outer_k
            a_m, b_m = (d / mk, c / mk) if spec.alternating_outer else (c / mk, d / mk)
            if m <= N:
                total += a_m + s * b_m
            else:
                bvals.append(b_m)
        AB = _parts(spec, zbar)
        A = lambda t: AB(t)[0]
        if any(k < 0 for k in spec.inner) or spec.alternating_outer:
            sign = -1 if N % 2 else 1
            et, eerr = _euler_transform(bvals, EULER_COLUMNS)
            et *= sign
        else:
            et, eerr = mpf(0), mpf(0)
        if spec.alternating_outer and not any(k < 0 for k in spec.inner):
            at, aerr = mpf(0), mpf(0)
        else:
            at, aerr = _em_tail(A, N, EM_ORDER)
        v = total + at + et
        return QReal(v, aerr + eerr + 16 * N * (abs(v) + 1) * mpmath.eps)


def euler_linear_closed(k: int, prec: Precision = CLASSICAL_PRECISION) -> QReal:
    """Euler's closed form S(1;k) = ((k+2) zeta(k+1) - sum_{i=1}^{k-2} zeta(k-i) zeta(i+1)) / 2."""
    if k < 2:
        raise ValueError("need k >= 2")
    with prec.workprec():
        z = lambda j: zeta_value(j, prec)
        inner = qsum([z(k - i) * z(i + 1) for i in range(1, k - 1)])
        return (z(k + 1) * (k + 2) - inner) * QReal(mpf(1) / 2)
