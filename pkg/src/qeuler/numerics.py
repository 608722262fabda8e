"""Precision policy, q-brackets and certified truncation bounds.

Everything numeric in the package goes through :class:`QReal`, a
high-precision value carrying an absolute error bound.  Series are summed
in fixed-point integer arithmetic (see :func:`to_fixed`) and converted back
to :class:`QReal` once, with the rounding of the whole loop accounted for
in a single conservative term.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import from_man_exp, mpf_abs, mpf_neg, to_fixed as _libmp_to_fixed

DEFAULT_BITS = 256
DEFAULT_TOL = 1e-40
MAX_TERMS = 10**6
GUARD_BITS = 32


class TruncationError(ArithmeticError):
    """A series could not be certified within the term cap."""


@dataclass(frozen=True)
class Precision:
    """Working precision and requested absolute accuracy of series values."""

    mantissa_bits: int = DEFAULT_BITS
    target_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if int(self.mantissa_bits) != self.mantissa_bits or self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be an integer >= 64")
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.target_tol < 2.0 ** (16 - self.mantissa_bits):
            raise ValueError(
                f"target_tol={self.target_tol!r} leaves fewer than 16 guard bits "
                f"at {self.mantissa_bits} bits"
            )

    def workprec(self):
        """Context manager setting mpmath's working precision."""
        return mp.workprec(self.mantissa_bits)

    @property
    def fixed_bits(self) -> int:
        return self.mantissa_bits + GUARD_BITS

    def tightened(self, factor: float) -> "Precision":
        """Same bits, tolerance divided by ``factor`` (clamped to the guard limit)."""
        floor = 2.0 ** (16 - self.mantissa_bits)
        return Precision(self.mantissa_bits, max(self.target_tol / factor, floor))

    def doubled(self) -> "Precision":
        return Precision(2 * self.mantissa_bits, self.target_tol)


DEFAULT_PRECISION = Precision()


def ulp() -> mpf:
    """Relative rounding unit at the current mpmath precision."""
    return mpmath.ldexp(mpf(1), 1 - mp.prec)


def to_mpf(x) -> mpf:
    """Convert an input number to mpf at the current precision.

    Floats are read through their shortest repr, so ``0.7`` means the
    decimal 0.7 rather than the nearest double.
    """
    if isinstance(x, QReal):
        return x.value
    if isinstance(x, mpf):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return mpf(x)
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, float):
        return mpf(repr(x))
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            return to_mpf(Fraction(s))
        return mpf(s)
    return mpf(x)


def as_exact(x):
    """Hashable, precision-independent key for an input number.

    Rationals (including decimal floats and strings) become Fractions;
    anything else stays an mpf.
    """
    if isinstance(x, QReal):
        x = x.value
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            return mpf(x)
    if isinstance(x, mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"not a finite number: {x}")
        sign, man, exp, _ = x._mpf_
        man = -int(man) if sign else int(man)
        if exp >= 0:
            return Fraction(man << exp)
        return Fraction(man, 1 << -exp)
    return mpf(x)


def to_fixed(x, P: int) -> int:
    """Truncate ``x`` to a fixed-point integer with ``P`` fractional bits.

    Rationals are converted exactly; anything else is read at the current
    precision first, so pass exact values when they are available.
    """
    if isinstance(x, int) and not isinstance(x, bool):
        return x << P
    if isinstance(x, Fraction):
        return (x.numerator << P) // x.denominator
    return _libmp_to_fixed(to_mpf(x)._mpf_, P)


def from_fixed(n: int, P: int) -> mpf:
    """Exact value n / 2**P; no rounding to the working precision."""
    return mp.make_mpf(from_man_exp(n, -P))


@dataclass(frozen=True)
class QReal:
    """A value together with a nonnegative bound on its absolute error."""

    value: mpf
    bound: mpf = mpf(0)

    def __post_init__(self):
        if not isinstance(self.value, mpf):
            object.__setattr__(self, "value", to_mpf(self.value))
        b = self.bound if isinstance(self.bound, mpf) else to_mpf(self.bound)
        if b < 0:
            raise ValueError("error bound must be nonnegative")
        object.__setattr__(self, "bound", b)

    @classmethod
    def exact(cls, x) -> "QReal":
        return cls(to_mpf(x), mpf(0))

    @property
    def lower(self) -> mpf:
        return self.value - self.bound

    @property
    def upper(self) -> mpf:
        return self.value + self.bound

    def magnitude(self) -> mpf:
        """Upper bound on the absolute value of the true quantity."""
        return abs(self.value) + self.bound

    def contains(self, x) -> bool:
        return abs(to_mpf(x) - self.value) <= self.bound

    def widen(self, extra) -> "QReal":
        return QReal(self.value, self.bound + abs(to_mpf(extra)))

    def __neg__(self):
        # sign flips are exact; avoid re-rounding to the ambient precision
        return QReal(mp.make_mpf(mpf_neg(self.value._mpf_)), self.bound)

    def __pos__(self):
        return self

    def __abs__(self):
        return QReal(mp.make_mpf(mpf_abs(self.value._mpf_)), self.bound)

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        v = self.value + o.value
        return QReal(v, self.bound + o.bound + abs(v) * ulp())

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        v = self.value - o.value
        return QReal(v, self.bound + o.bound + abs(v) * ulp())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        v = self.value * o.value
        b = (abs(self.value) * o.bound + abs(o.value) * self.bound
             + self.bound * o.bound + abs(v) * ulp())
        return QReal(v, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        d = abs(o.value)
        if d <= o.bound:
            raise ZeroDivisionError("denominator interval contains zero")
        v = self.value / o.value
        b = (abs(self.value) * o.bound + d * self.bound) / (d * (d - o.bound))
        return QReal(v, b + abs(v) * ulp())

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = QReal(mpf(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"QReal({mpmath.nstr(self.value, 25)} ± {mpmath.nstr(self.bound, 3)})"


def _coerce(x):
    if isinstance(x, QReal):
        return x
    if isinstance(x, (int, float, Fraction, mpf, str)) and not isinstance(x, bool):
        return QReal(to_mpf(x))
    return NotImplemented


def qsum(items) -> QReal:
    """Sum of QReals with one rounding term for the whole accumulation."""
    items = list(items)
    if not items:
        return QReal(mpf(0))
    total = mpmath.fsum(it.value for it in items)
    bound = mpmath.fsum(it.bound for it in items)
    mass = mpmath.fsum(abs(it.value) for it in items)
    return QReal(total, bound + 2 * mass * ulp())


@dataclass(frozen=True)
class QParam:
    """The base q with 0 < q < 1, stored exactly when rational."""

    q: object

    def __post_init__(self):
        q = self.q.q if isinstance(self.q, QParam) else as_exact(self.q)
        object.__setattr__(self, "q", q)
        if not 0 < q < 1:
            raise ValueError(f"q must satisfy 0 < q < 1, got {q}")

    def value(self) -> mpf:
        return to_mpf(self.q)

    def __str__(self):
        return str(self.q) if isinstance(self.q, Fraction) else mpmath.nstr(self.q, 20)


def as_qparam(q) -> QParam:
    return q if isinstance(q, QParam) else QParam(q)


def _is_integer(b) -> bool:
    if isinstance(b, int) and not isinstance(b, bool):
        return True
    if isinstance(b, Fraction):
        return b.denominator == 1
    if isinstance(b, float):
        return b.is_integer()
    if isinstance(b, mpf):
        return b == int(b)
    return False


def q_power(q, b) -> QReal:
    """q**b for real b; integer exponents use exact repeated squaring."""
    qv = as_qparam(q).value()
    if _is_integer(b):
        n = int(b)
        v = qv ** n
        rel = 2 * max(n.bit_length(), 1) + 2
        return QReal(v, abs(v) * rel * ulp())
    bv = to_mpf(b)
    t = bv * mpmath.log(qv)
    v = mpmath.exp(t)
    # exp amplifies the relative error of its argument by |t|
    return QReal(v, abs(v) * (8 + 4 * abs(t)) * ulp())


def q_bracket(b, q) -> QReal:
    """The q-number [b] = (1 - q**b) / (1 - q) for any real b."""
    qp = as_qparam(q)
    if _is_integer(b) and int(b) == 0:
        return QReal(mpf(0))
    qv = qp.value()
    qb = q_power(qp, b)
    return (1 - qb) / QReal(1 - qv, abs(1 - qv) * ulp())


def geometric_tail_bound(first_neglected, ratio) -> QReal:
    """Bound on a tail whose first term is at most ``first_neglected`` in
    absolute value and whose term ratios stay at most ``ratio``."""
    r = to_mpf(ratio)
    if r < 0 or r >= 1:
        raise ValueError(f"geometric tail bound needs 0 <= ratio < 1, got {ratio}")
    f = first_neglected.upper if isinstance(first_neglected, QReal) else to_mpf(first_neglected)
    if f < 0:
        raise ValueError("first_neglected must be an upper bound on an absolute value")
    if f == 0:
        return QReal(mpf(0))
    v = f / (1 - r)
    return QReal(v, 4 * v * ulp())


def poly_geometric_tail_bound(M: int, n: int, y) -> QReal:
    """Bound on sum_{m > M} m**n * y**m for 0 <= y < 1.

    Term ratios beyond M are at most ((M + 2) / (M + 1))**n * y; the bound
    is refused when that ratio is not below one.
    """
    yv = to_mpf(y)
    if yv < 0 or yv >= 1:
        raise ValueError(f"need 0 <= y < 1, got {y}")
    if M < 0 or n < 0:
        raise ValueError("M and n must be nonnegative")
    if yv == 0:
        return QReal(mpf(0))
    r = (mpf(M + 2) / (M + 1)) ** n * yv
    if r >= 1:
        raise ValueError(
            f"terms m^{n} y^m are not certifiably decreasing beyond M={M} (ratio {mpmath.nstr(r, 5)})"
        )
    first = mpf(M + 1) ** n * yv ** (M + 1)
    return geometric_tail_bound(first * (1 + 8 * ulp()), r)


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple:
    """Eulerian numbers A(n, 0..n-1)."""
    row = [1]
    for i in range(2, n + 1):
        row = [
            (k + 1) * (row[k] if k < len(row) else 0) + (i - k) * (row[k - 1] if k >= 1 else 0)
            for k in range(i)
        ]
    return tuple(row)


def poly_geometric_sum(n: int, y) -> mpf:
    """Closed form of sum_{j >= 1} j**n y**j for 0 <= y < 1 (Eulerian polynomials)."""
    yv = to_mpf(y)
    if yv < 0 or yv >= 1:
        raise ValueError(f"need 0 <= y < 1, got {y}")
    if n == 0:
        return yv / (1 - yv)
    coeffs = _eulerian_row(n)
    poly = mpmath.fsum(c * yv ** k for k, c in enumerate(coeffs))
    return yv * poly / (1 - yv) ** (n + 1)


class InverseBrackets:
    """Fixed-point table of 1/[m]**k for m = 0, 1, 2, ... (index 0 unused).

    Rows are lists that grow in place; a row fetched once stays valid.
    """

    def __init__(self, q: QParam, P: int):
        self.P = P
        self.q = q
        one = 1 << P
        if isinstance(q.q, Fraction):
            a, b = q.q.numerator, q.q.denominator
            self._q_fx = (a << P) // b
            self._omq = ((b - a) << P) // b
        else:
            with mp.workprec(P + 16):
                qv = q.value()
                self._q_fx = to_fixed(qv, P)
                self._omq = to_fixed(1 - qv, P)
        self._one = one
        self._qm = one
        self._rows = {1: [0]}

    def _extend(self, upto: int):
        inv = self._rows[1]
        P, one, qf = self.P, self._one, self._q_fx
        num = self._omq << P
        qm = self._qm
        for _ in range(len(inv), upto + 1):
            qm = (qm * qf) >> P
            inv.append(num // (one - qm))
        self._qm = qm
        for k in sorted(self._rows)[1:]:
            row, prev = self._rows[k], self._rows[k - 1]
            row.extend((prev[m] * inv[m]) >> P for m in range(len(row), len(inv)))

    def row(self, k: int, upto: int) -> list:
        """The list of 1/[m]**k, guaranteed to reach index ``upto``."""
        if k < 1:
            raise ValueError("exponent must be positive")
        inv = self._rows[1]
        if upto >= len(inv):
            self._extend(max(upto, 2 * len(inv), 64))
        for j in range(2, k + 1):
            if j not in self._rows:
                prev = self._rows[j - 1]
                self._rows[j] = [(a * b) >> self.P for a, b in zip(prev, inv)]
        return self._rows[k]


def fixed_rounding_bound(P: int, terms: int, depth: int, q: QParam, magnitude=1) -> mpf:
    """Conservative absolute error of a fixed-point series loop.

    ``terms`` loop iterations with ``depth`` truncating multiplications per
    term; ``magnitude`` bounds the product of the absolute partial sums that
    multiply each term.  Every table entry 1/[m] is off by at most
    2 + 1/(1-q)**2 units, incremental powers by at most ``terms`` units.
    """
    omq = 1 - q.value()
    per_entry = 2 + 1 / omq ** 2
    units = 16 * (terms + 2) ** 2 * (depth + 4) * per_entry * (1 + abs(to_mpf(magnitude)))
    return mpmath.ldexp(units, -P)


@lru_cache(maxsize=64)
def inverse_brackets(q: QParam, P: int) -> InverseBrackets:
    return InverseBrackets(q, P)
