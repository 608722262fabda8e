"""Jackson q-integral and q-derivative.

Two flavours live here.  The numeric operators work on :class:`QFunction`
objects and return certified :class:`QReal` values.  The exact operators
act on polynomials with :class:`fractions.Fraction` coefficients (lists,
constant term first) and exist so the calculus rules can be checked as
exact equalities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mpf

from .numerics import (
    DEFAULT_PRECISION,
    MAX_TERMS,
    Precision,
    QReal,
    as_exact,
    as_qparam,
    q_bracket,
    q_power,
    qsum,
    to_mpf,
)
from .qseries import HSpec, h_function

PROBES = 16
PROBE_SAFETY = 2


@dataclass(frozen=True)
class QFunction:
    """A real function t -> QReal with an optional domain and sup bound.

    ``fn`` receives an mpf and may return a QReal or any plain number.
    ``sup`` is a caller-certified bound on |f| over the integration orbits;
    without it :func:`q_integral` probes the orbit.
    """

    fn: Callable
    lower: object = None
    upper: object = None
    sup: object = None
    name: str = "f"

    def __call__(self, t) -> QReal:
        tv = to_mpf(t)
        if self.lower is not None and tv < to_mpf(self.lower):
            raise ValueError(f"{self.name} is undefined at {tv} (below {self.lower})")
        if self.upper is not None and tv > to_mpf(self.upper):
            raise ValueError(f"{self.name} is undefined at {tv} (above {self.upper})")
        v = self.fn(tv)
        return v if isinstance(v, QReal) else QReal(to_mpf(v))


def monomial(n: int) -> QFunction:
    """t -> t**n for a nonnegative integer n."""
    return QFunction(lambda t: t ** n, name=f"t^{n}")


def constant(c) -> QFunction:
    cv = as_exact(c)
    return QFunction(lambda t: to_mpf(cv), name=f"{cv}")


def hurwitz_function(k: int, a, q, prec: Precision = DEFAULT_PRECISION) -> QFunction:
    """t -> H_k[t, a] on (-1, 1) (t > 0 when a is not an integer)."""
    ae = as_exact(a)
    qp = as_qparam(q)

    def fn(t):
        return h_function(HSpec(k, t, ae, qp), prec)

    return QFunction(fn, lower=-1, upper=1, name=f"H_{k}[t,{ae}]")


def _orbit_sup(f: QFunction, x: mpf, qv: mpf) -> mpf:
    if x == 0:
        return mpf(0)
    vals = [f(x * qv ** i).magnitude() for i in range(PROBES)]
    head, tail = max(vals[: PROBES // 2]), max(vals[PROBES // 2:])
    # a bounded integrand cannot keep growing toward the origin
    if tail > PROBE_SAFETY * head and vals[-1] > vals[-2] > vals[-3]:
        raise ValueError(f"{f.name} appears unbounded near 0; the q-integral is not certifiable")
    return PROBE_SAFETY * max(vals)


def q_integral(f: QFunction, a, x, q, prec: Precision = DEFAULT_PRECISION, sup=None) -> QReal:
    """Jackson integral (1-q) sum_{i>=0} q^i [x f(q^i x) - a f(q^i a)].

    The neglected part after I steps is at most q^I (|x| + |a|) sup|f|, with
    sup|f| supplied (argument or ``f.sup``) or probed on the first orbit
    points with a safety factor of 2.
    """
    qp = as_qparam(q)
    with prec.workprec():
        qv = qp.value()
        xv, av = to_mpf(x), to_mpf(a)
        M = sup if sup is not None else f.sup
        if M is None:
            M = max(_orbit_sup(f, xv, qv), _orbit_sup(f, av, qv))
        M = to_mpf(M)
        span = abs(xv) + abs(av)
        tol = mpf(prec.target_tol) / 2
        terms, qi, i = [], mpf(1), 0
        while qi * span * M > tol:
            for end, sign in ((xv, 1), (av, -1)):
                if end != 0:
                    terms.append(f(end * qi) * (sign * qi * end))
            qi *= qv
            i += 1
            if i > MAX_TERMS:
                raise ValueError("q-integral did not converge within the term cap")
        body = qsum(terms) * QReal(1 - qv)
        return body.widen(qi * span * M)


def q_derivative(f: QFunction, x, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """Jackson derivative (f(qx) - f(x)) / (qx - x), defined for x != 0."""
    qp = as_qparam(q)
    with prec.workprec():
        xv = to_mpf(x)
        if xv == 0:
            raise ValueError("the q-derivative is taken at x != 0 only")
        qv = qp.value()
        return (f(qv * xv) - f(xv)) / QReal(qv * xv - xv)


def lemma21_rhs(m: int, k: int, a, b, x, q, prec: Precision = DEFAULT_PRECISION) -> QReal:
    """Closed form of int_0^x H_k[t,a] t^(m+b-1) d_q t in terms of H-functions."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive integers")
    qp = as_qparam(q)
    ae, be = as_exact(a), as_exact(b)
    for name, v in (("a", ae), ("b", be), ("a+b", ae + be)):
        if v == int(v) and v < 0:
            raise ValueError(f"{name} must avoid the negative integers")
    with prec.workprec():
        xv = to_mpf(x)
        if xv == 0:
            return QReal(mpf(0))
        mb = m + be
        br = q_bracket(mb, qp)
        xmb = QReal(mpmath.power(xv, to_mpf(mb)))
        xmb = xmb.widen(abs(xmb.value) * 8 * mpmath.ldexp(1, -prec.mantissa_bits))
        qmb = q_power(qp, mb)

        def H(kk, aa):
            return h_function(HSpec(kk, x, aa, qp), prec)

        parts = []
        for j in range(1, k):
            sign = (-1) ** (j - 1)
            parts.append(sign * q_power(qp, mb * (j - 1)) * xmb / br ** j * H(k + 1 - j, ae))
        sign = (-1) ** (k - 1)
        lead = sign * q_power(qp, mb * (k - 1)) / br ** k
        parts.append(lead * (xmb * H(1, ae) - qmb * H(1, ae + be)))
        finite = qsum(
            QReal(mpmath.power(xv, to_mpf(j + ae + be))) / q_bracket(j + ae + be, qp)
            for j in range(1, m + 1)
        )
        parts.append(sign * q_power(qp, mb * k) / br ** k * finite)
        return qsum(parts)


def lemma21_integrand(m: int, k: int, a, b, q, prec: Precision = DEFAULT_PRECISION) -> QFunction:
    """t -> H_k[t,a] t^(m+b-1), the integrand of the closed form above."""
    H = hurwitz_function(k, a, q, prec)
    e = as_exact(m) + as_exact(b) - 1

    def fn(t):
        if t == 0:
            return QReal(mpf(0))
        return H(t) * QReal(mpmath.power(t, to_mpf(e)))

    return QFunction(fn, lower=-1, upper=1, name=f"H_{k}[t,{as_exact(a)}]t^{e}")


# exact polynomial calculus ---------------------------------------------------

def _trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def bracket_exact(n: int, q: Fraction) -> Fraction:
    """[n] = 1 + q + ... + q^(n-1) for a nonnegative integer n."""
    return sum((q ** i for i in range(n)), Fraction(0))


def poly_q_derivative(p, q) -> list:
    """D_q of a polynomial: t^n -> [n] t^(n-1)."""
    qf = Fraction(q)
    p = _trim(p)
    return _trim([bracket_exact(n, qf) * c for n, c in enumerate(p)][1:])


def poly_q_antiderivative(p, q) -> list:
    """The polynomial P with P(0) = 0 and D_q P = p."""
    qf = Fraction(q)
    return _trim([Fraction(0)] + [c / bracket_exact(n + 1, qf) for n, c in enumerate(_trim(p))])


def poly_q_integral(p, a, x, q) -> Fraction:
    """Exact Jackson integral of a polynomial from a to x.

    The defining series is geometric term by term, giving
    int_a^x t^n d_q t = (x^(n+1) - a^(n+1)) / [n+1].
    """
    P = poly_q_antiderivative(p, q)
    return poly_eval(P, Fraction(x)) - poly_eval(P, Fraction(a))


def poly_mul(p, r) -> list:
    out = [Fraction(0)] * (len(p) + len(r) + 1)
    for i, c in enumerate(p):
        for j, d in enumerate(r):
            out[i + j] += Fraction(c) * d
    return _trim(out)


def poly_dilate(p, q) -> list:
    """t -> p(q t)."""
    qf = Fraction(q)
    return _trim([Fraction(c) * qf ** n for n, c in enumerate(p)])


def poly_q_derivative_at(p, x, q) -> Fraction:
    """Two-point formula (p(qx) - p(x)) / (qx - x) in exact arithmetic."""
    xf, qf = Fraction(x), Fraction(q)
    if xf == 0:
        raise ValueError("the q-derivative is taken at x != 0 only")
    return (poly_eval(p, qf * xf) - poly_eval(p, xf)) / (qf * xf - xf)


def poly_q_integral_series(p, a, x, q) -> Fraction:
    """The Jackson integral summed straight from its series definition.

    Each monomial contributes a geometric series in q^(n+1) with an exact
    rational sum, so no truncation takes place.
    """
    qf, xf, af = Fraction(q), Fraction(x), Fraction(a)
    total = Fraction(0)
    for n, c in enumerate(_trim(p)):
        geo = 1 / (1 - qf ** (n + 1))  # sum_i q^(i(n+1))
        total += c * (1 - qf) * geo * (xf ** (n + 1) - af ** (n + 1))
    return total
