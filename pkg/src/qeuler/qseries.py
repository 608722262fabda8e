"""q-polylogarithms, partial sums, H-functions and nested S-sums.

All infinite series are summed adaptively until a certified tail bound
drops below half the requested tolerance.  The loops run in fixed point
(``Precision.fixed_bits`` fractional bits); a single rounding term covers
the whole loop.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .numerics import (
    DEFAULT_PRECISION,
    MAX_TERMS,
    Precision,
    QParam,
    QReal,
    TruncationError,
    as_exact,
    as_qparam,
    fixed_rounding_bound,
    from_fixed,
    geometric_tail_bound,
    inverse_brackets,
    poly_geometric_sum,
    to_fixed,
    to_mpf,
)

CHECK_EVERY = 8


def _is_int(a) -> bool:
    return getattr(a, "denominator", None) == 1 or (isinstance(a, mpf) and a == int(a))


@dataclass(frozen=True)
class SeriesSpec:
    """S[k_1..k_n; x_1..x_n | k; x] with base q."""

    inner_k: tuple
    inner_x: tuple
    outer_k: int
    outer_x: object
    q: QParam

    def __post_init__(self):
        ks = tuple(int(k) for k in self.inner_k)
        xs = tuple(as_exact(x) for x in self.inner_x)
        object.__setattr__(self, "inner_k", ks)
        object.__setattr__(self, "inner_x", xs)
        object.__setattr__(self, "outer_x", as_exact(self.outer_x))
        object.__setattr__(self, "q", as_qparam(self.q))
        if len(ks) != len(xs):
            raise ValueError("inner exponents and weights must have the same length")
        if any(k < 1 for k in ks) or int(self.outer_k) != self.outer_k or self.outer_k < 1:
            raise ValueError("exponents must be positive integers")
        if any(abs(x) > 1 for x in xs):
            raise ValueError("inner weights must satisfy |x_i| <= 1")
        if not abs(self.outer_x) < 1:
            raise ValueError("outer weight must satisfy |x| < 1")

    @property
    def depth(self) -> int:
        return len(self.inner_k)

    @property
    def weight(self) -> int:
        return sum(self.inner_k) + self.outer_k


def series(inner_k, inner_x, k, x, q) -> SeriesSpec:
    return SeriesSpec(tuple(inner_k), tuple(inner_x), k, x, q)


@dataclass(frozen=True)
class HSpec:
    """Parameters of H_k[x, a] = sum_{m>=1} x^(m+a) / [m+a]^k."""

    k: int
    x: object
    a: object
    q: QParam

    def __post_init__(self):
        object.__setattr__(self, "x", as_exact(self.x))
        object.__setattr__(self, "a", as_exact(self.a))
        object.__setattr__(self, "q", as_qparam(self.q))
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("k must be a positive integer")
        if not abs(self.x) < 1:
            raise ValueError("H_k[x, a] needs |x| < 1")
        if _is_int(self.a) and self.a < 0:
            raise ValueError("a must avoid the negative integers")
        if not _is_int(self.a) and self.x < 0:
            raise ValueError("x^(m+a) is not real for x < 0 and non-integer a")
        if self.x == 0 and self.a < -1:
            raise ValueError("x = 0 with m + a < 0 gives an infinite term")


def _tol(prec: Precision) -> mpf:
    return mpf(prec.target_tol) / 2


def ulp_at(prec: Precision) -> mpf:
    return mpmath.ldexp(mpf(1), 1 - prec.mantissa_bits)


def _abs_fx(n: int, P: int) -> mpf:
    return from_fixed(abs(n), P)


def zeta_partial(m: int, k: int, x, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """Finite sum zeta_m[k, x] = sum_{j=1..m} x^j / [j]^k."""
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    xk = as_exact(x)
    if abs(xk) > 1:
        raise ValueError("need |x| <= 1")
    return _zeta_partial(m, k, xk, as_qparam(q), prec)


@lru_cache(maxsize=4096)
def _zeta_partial(m, k, x, qp, prec):
    with prec.workprec():
        if m == 0:
            return QReal(mpf(0))
        P = prec.fixed_bits
        row = inverse_brackets(qp, P).row(k, m)
        xf = to_fixed(x, P)
        xm, total, mass = 1 << P, 0, 0
        for j in range(1, m + 1):
            xm = (xm * xf) >> P
            t = (xm * row[j]) >> P
            total += t
            mass += abs(t)
        mag = from_fixed(mass, P)
        return QReal(from_fixed(total, P), fixed_rounding_bound(P, m, k + 1, qp, mag))


def q_harmonic(m: int, k: int, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """The q-harmonic number zeta_m[k, q]."""
    qp = as_qparam(q)
    return zeta_partial(m, k, qp.q, qp, prec)


def q_polylog(k: int, x, q, prec: Precision = DEFAULT_PRECISION, terms: int | None = None) -> QReal:
    """Li_k[x] = sum_{m>=1} x^m / [m]^k for |x| < 1.

    With ``terms`` the sum is cut at that many terms and the certified tail
    is folded into the bound instead of adapting to the tolerance.
    """
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer")
    xk = as_exact(x)
    if not abs(xk) < 1:
        raise ValueError(f"Li_k[x] needs |x| < 1, got x={x}")
    return _polylog(int(k), xk, as_qparam(q), prec, terms)


@lru_cache(maxsize=8192)
def _polylog(k, x, qp, prec, terms):
    with prec.workprec():
        xv = to_mpf(x)
        if xv == 0:
            return QReal(mpf(0))
        P = prec.fixed_bits
        tab = inverse_brackets(qp, P)
        row = tab.row(k, 512)
        ax = abs(xv)
        xf = to_fixed(x, P)
        tol = _tol(prec)
        xm, total, m = 1 << P, 0, 0
        while True:
            m += 1
            if m + 1 >= len(row):
                row = tab.row(k, 2 * m)
            xm = (xm * xf) >> P
            total += (xm * row[m]) >> P
            if (terms is None and m % CHECK_EVERY == 0) or m == terms:
                first = _abs_fx(xm, P) * ax * from_fixed(row[m + 1], P)
                tail = geometric_tail_bound(first * (1 + mpmath.ldexp(1, 40 - P)), ax).upper
                if m == terms or tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError(f"Li_{k}[{x}] not certified within {MAX_TERMS} terms")
        rnd = fixed_rounding_bound(P, m, k + 1, qp, ax / (1 - ax))
        return QReal(from_fixed(total, P), tail + rnd)


def q_log(x, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """The q-logarithm ln[1 - x] = -Li_1[x]."""
    return -q_polylog(1, x, q, prec)


def h_function(spec: HSpec, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """H_k[x, a] = sum_{m>=1} x^(m+a) / [m+a]^k."""
    if not isinstance(spec, HSpec):
        raise TypeError("h_function expects an HSpec")
    return _hfunc(spec, prec)


def hurwitz(k, x, a, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """Shorthand for ``h_function(HSpec(k, x, a, q), prec)``."""
    return _hfunc(HSpec(k, x, a, q), prec)


@lru_cache(maxsize=16384)
def _hfunc(spec: HSpec, prec: Precision) -> QReal:
    k, a, qp = spec.k, spec.a, spec.q
    if spec.x == 0:
        return QReal(mpf(0))
    if _is_int(a):
        a = int(a)
        # integer shift: the tail of the polylog past index a
        li = _polylog(k, spec.x, qp, prec, None)
        if a == 0:
            return li
        head = _zeta_partial(a, k, spec.x, qp, prec)
        with prec.workprec():
            return li - head
    with prec.workprec():
        P = prec.fixed_bits
        one = 1 << P
        qv, xv, av = qp.value(), to_mpf(spec.x), to_mpf(a)
        tol = _tol(prec)
        xf = to_fixed(spec.x, P)
        qf = to_fixed(qp.q, P)
        with mpmath.workprec(P + 16):
            omq = to_fixed(1 - qp.q if isinstance(qp.q, Fraction) else 1 - qp.value(), P) << P
            # x^(1+a), x > 0 here
            xm = to_fixed(mpmath.power(to_mpf(spec.x), 1 + to_mpf(a)), P)
            qm = to_fixed(mpmath.power(qp.value(), 1 + to_mpf(a)), P)
        total, mass, peak, m = 0, 0, mpf(1), 0
        while True:
            m += 1
            if m > 1:
                xm = (xm * xf) >> P
                qm = (qm * qf) >> P
            inv = omq // (one - qm)
            t = xm
            for _ in range(k):
                t = (t * inv) >> P
            total += t
            mass += abs(t)
            if m + av <= 1:
                peak = max(peak, abs(from_fixed(inv, P)) ** k)
            if m + av > 0 and m % CHECK_EVERY == 0:
                # terms decrease with ratio <= x once m + a > 0
                nb = (1 - qv * from_fixed(qm, P)) / (1 - qv)
                first = from_fixed(abs(xm), P) * xv / nb ** k
                tail = geometric_tail_bound(first * (1 + mpmath.ldexp(1, 40 - P)), xv).upper
                if tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError(f"H_{k}[{spec.x},{a}] not certified within {MAX_TERMS} terms")
        mag = from_fixed(mass, P) + peak
        rnd = fixed_rounding_bound(P, m, k + 3, qp, mag) * (1 + abs(av) + 1 / min(abs(1 - qv ** (1 + av)), 1))
        return QReal(from_fixed(total, P), tail + rnd)


def s_sum(spec: SeriesSpec, prec: Precision = DEFAULT_PRECISION, terms: int | None = None) -> QReal:
    """The nested q-Euler sum

        S[k_1..k_n; x_1..x_n | k; x] = sum_m zeta_m[k_1,x_1]...zeta_m[k_n,x_n] x^m / [m]^k.

    An empty inner list gives Li_k[x].  Inner partial sums are carried
    along the outer loop, one new term per step.
    """
    if not isinstance(spec, SeriesSpec):
        raise TypeError("s_sum expects a SeriesSpec")
    if spec.depth == 0:
        return q_polylog(spec.outer_k, spec.outer_x, spec.q, prec, terms)
    return _s_sum(spec, prec, terms)


@lru_cache(maxsize=16384)
def _s_sum(spec: SeriesSpec, prec: Precision, terms):
    with prec.workprec():
        y = to_mpf(spec.outer_x)
        if y == 0:
            return QReal(mpf(0))
        P = prec.fixed_bits
        one = 1 << P
        n, k, qp = spec.depth, spec.outer_k, spec.q
        tab = inverse_brackets(qp, P)
        ks = spec.inner_k
        xs = [to_mpf(x) for x in spec.inner_x]
        axs = [abs(x) for x in xs]
        unit = [ax == 1 for ax in axs]
        p = sum(unit)
        xf = [to_fixed(x, P) for x in spec.inner_x]
        yf, ay = to_fixed(spec.outer_x, P), abs(y)
        tol = _tol(prec)
        poly = poly_geometric_sum(p, ay)
        slack = 1 + mpmath.ldexp(1, 40 - P)

        def rows(upto):
            return [tab.row(kk, upto) for kk in ks], tab.row(k, upto)

        inner_rows, outer_row = rows(512)
        z = [0] * n
        absz = [0] * n
        xp = [one] * n
        ym, total, m = one, 0, 0
        rng = range(n)
        while True:
            m += 1
            if m + 1 >= len(outer_row):
                inner_rows, outer_row = rows(2 * m)
            ym = (ym * yf) >> P
            prod = (ym * outer_row[m]) >> P
            for i in rng:
                xp[i] = (xp[i] * xf[i]) >> P
                t = (xp[i] * inner_rows[i][m]) >> P
                z[i] += t
                absz[i] += abs(t)
                prod = (prod * z[i]) >> P
            total += prod
            if (terms is None and m % CHECK_EVERY == 0) or m == terms:
                tail = _s_tail(m, absz, axs, unit, ay, from_fixed(outer_row[m + 1], P), poly, P) * slack
                if m == terms or tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError(f"{spec} not certified within {MAX_TERMS} terms")
        mag = mpf(1)
        for i in rng:
            mag *= from_fixed(absz[i], P) + 1
        rnd = fixed_rounding_bound(P, m, n + k + 1, qp, mag)
        return QReal(from_fixed(total, P), tail + rnd)


def _s_tail(M, absz, axs, unit, ay, inv_next, poly, P) -> mpf:
    """Bound on the S-sum tail beyond M.

    |zeta_m| <= A + |x|^(M+1)/(1-|x|) for |x| < 1, and <= (A + 1)(m - M)
    for unit weights, where A is the absolute partial sum at M.
    """
    c = inv_next  # 1/[M+1]^k bounds 1/[m]^k for m > M
    for A, ax, u in zip(absz, axs, unit):
        Av = from_fixed(A, P)
        c *= (Av + 1) if u else (Av + ax ** (M + 1) / (1 - ax))
    return c * ay ** M * poly


@dataclass(frozen=True)
class ShiftedSumSpec:
    """sum_{m>=1} prod_i Z_i(m) * y^(m+d) / prod_j [m+e_j]^(p_j), where
    Z_i(m) = sum_{j=1..m} x_i^(j+c_i) / [j+c_i]^(k_i).

    ``inner`` holds (k_i, x_i, c_i) triples, ``denoms`` holds (e_j, p_j)
    pairs.  This covers the Hurwitz-type double sums of the identities and
    the S-sums with shifted brackets.
    """

    inner: tuple
    y: object
    d: object
    denoms: tuple
    q: QParam

    def __post_init__(self):
        inner = tuple((int(k), as_exact(x), as_exact(c)) for k, x, c in self.inner)
        denoms = tuple((as_exact(e), int(p)) for e, p in self.denoms)
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "denoms", denoms)
        object.__setattr__(self, "y", as_exact(self.y))
        object.__setattr__(self, "d", as_exact(self.d))
        object.__setattr__(self, "q", as_qparam(self.q))
        if not abs(self.y) < 1:
            raise ValueError("outer weight must satisfy |y| < 1")
        for k, x, c in inner:
            if k < 1 or abs(x) > 1:
                raise ValueError("inner entries need k >= 1 and |x| <= 1")
            if c <= -1:
                raise ValueError("inner shifts must exceed -1")
            if x < 0 and not _is_int(c):
                raise ValueError("negative inner weight needs an integer shift")
        for e, p in denoms:
            if e <= -1 or p < 0:
                raise ValueError("denominator shifts must exceed -1 with p >= 0")
        if self.y < 0 and not _is_int(self.d):
            raise ValueError("negative outer weight needs an integer exponent shift")


def shifted_sum(spec: ShiftedSumSpec, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """Certified value of a :class:`ShiftedSumSpec` series."""
    if not isinstance(spec, ShiftedSumSpec):
        raise TypeError("shifted_sum expects a ShiftedSumSpec")
    return _shifted_sum(spec, prec)


def _real_power(x: mpf, e: mpf) -> mpf:
    if x < 0:
        return mpmath.power(x, int(e))
    return mpmath.power(x, e)


@lru_cache(maxsize=8192)
def _shifted_sum(spec: ShiftedSumSpec, prec: Precision) -> QReal:
    with prec.workprec():
        qv = spec.q.value()
        y = to_mpf(spec.y)
        if y == 0:
            return QReal(mpf(0))
        ay, omq = abs(y), 1 - qv
        tol = _tol(prec)
        xs = [to_mpf(x) for _, x, _ in spec.inner]
        cs = [to_mpf(c) for _, _, c in spec.inner]
        ks = [k for k, _, _ in spec.inner]
        unit = [abs(x) == 1 for x in xs]
        # running powers x^(j+c) and q^(j+c), and q^(m+e) for the outer brackets
        xp = [_real_power(x, c) for x, c in zip(xs, cs)]
        qp = [mpmath.power(qv, c) for c in cs]
        es = [to_mpf(e) for e, _ in spec.denoms]
        ps = [p for _, p in spec.denoms]
        qe = [mpmath.power(qv, e) for e in es]
        ym = _real_power(y, to_mpf(spec.d))
        z = [mpf(0)] * len(xs)
        absz = [mpf(0)] * len(xs)
        poly = poly_geometric_sum(sum(unit), ay)
        total, mass, m = mpf(0), mpf(0), 0
        depth = sum(ks) + sum(ps) + len(xs) + 4
        while True:
            m += 1
            ym *= y
            t = ym
            for i in range(len(xs)):
                xp[i] *= xs[i]
                qp[i] *= qv
                u = xp[i] / ((1 - qp[i]) / omq) ** ks[i]
                z[i] += u
                absz[i] += abs(u)
                t *= z[i]
            for j in range(len(es)):
                qe[j] *= qv
                t /= ((1 - qe[j]) / omq) ** ps[j]
            total += t
            mass += abs(t)
            if m % CHECK_EVERY == 0:
                tail = _shifted_tail(m, absz, xs, cs, ks, unit, qv, es, ps, ay, poly)
                tail *= ay ** to_mpf(spec.d)
                if tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError(f"{spec} not certified within {MAX_TERMS} terms")
        # each term carries O(m + depth) roundings relative to the running mass
        brk = 1 + 1 / min([1 - mpmath.power(qv, 1 + c) for c in cs + es] + [omq])
        rnd = 8 * (m + depth) * brk * (mass + 1) * ulp_at(prec)
        return QReal(total, tail * (1 + mpmath.ldexp(1, 40 - prec.mantissa_bits)) + rnd)


def _shifted_tail(M, absz, xs, cs, ks, unit, qv, es, ps, ay, poly) -> mpf:
    """Bound on the tail beyond M of a shifted sum (without the y^d factor).

    Brackets [m+e] increase in m, so their values at M+1 bound every later
    reciprocal; inner sums are bounded as in the S-sum tail.
    """
    c = mpf(1)
    for e, p in zip(es, ps):
        c /= ((1 - mpmath.power(qv, M + 1 + e)) / (1 - qv)) ** p
    for A, x, cc, k, u in zip(absz, xs, cs, ks, unit):
        inv = 1 / ((1 - mpmath.power(qv, M + 1 + cc)) / (1 - qv)) ** k
        if u:
            c *= A + inv
        else:
            ax = abs(x)
            c *= A + ax ** (M + 1 + cc) * inv / (1 - ax)
    return c * ay ** M * poly
