"""Registry entries for the q-series identities."""
from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mpf

from ..jackson import lemma21_integrand, lemma21_rhs, q_integral
from ..numerics import (
    MAX_TERMS,
    Precision,
    QParam,
    QReal,
    TruncationError,
    as_exact,
    poly_geometric_tail_bound,
    q_bracket,
    qsum,
    to_mpf,
)
from ..qseries import (
    HSpec,
    ShiftedSumSpec,
    h_function,
    q_harmonic,
    q_log,
    q_polylog,
    s_sum,
    series,
    shifted_sum,
)
from ..stuffle import Letter, li_star
from .core import DomainError, IdentityEntry, Param

K_GRID = [1, 2, 3]
SHIFT_GRID = ["0", "0.5", "0.25"]
X_GRID = ["-0.3", "0.3", "0.6"]
Q_GRID = ["0.3", "0.7"]
POS_SHIFT_GRID = ["0.5", "1", "1.5"]


# small helpers -----------------------------------------------------------------

def qpow(q: QParam, e, prec: Precision):
    """q^e as an exact weight; non-integer powers are rounded 64 bits below
    the working precision, far under every tolerance in use."""
    e = as_exact(e)
    if isinstance(e, Fraction) and e.denominator == 1 and isinstance(q.q, Fraction):
        return q.q ** int(e)
    with mpmath.workprec(prec.mantissa_bits + 64):
        return as_exact(mpmath.power(q.value(), to_mpf(e)))


def _is_int(v) -> bool:
    return isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def Li(k, x, q, prec):
    return q_polylog(k, x, q, prec)


def S(ks, xs, k, x, q, prec):
    return s_sum(series(ks, xs, k, x, q), prec)


def H(k, x, a, q, prec):
    return h_function(HSpec(k, x, a, q), prec)


def _need(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _not_neg_int(name, v):
    _need(not (_is_int(v) and v < 0), f"{name} must avoid -1, -2, ... (got {v})")


def _weight_ok(name, x, shifts=()):
    _need(abs(x) < 1, f"|{name}| < 1 required (got {x})")
    if x < 0:
        _need(all(_is_int(s) for s in shifts),
              f"{name} < 0 needs integer shifts so that powers stay real")


# the Li-zeta mixed sum and its companions -----------------------------------------

def mixed_li_zeta_sum(k, x, l, y, z, q, prec: Precision) -> QReal:
    """sum_m (Li_k[x] zeta_m[l,y] - Li_l[y] zeta_m[k,x]) z^m / [m] for |x|,|y| < 1, |z| <= 1.

    Each term equals Li_l[y] T_k(m) - Li_k[x] T_l(m) with T the polylog
    tails, which gives a geometric bound on the remainder.  The Li values
    are computed to a tolerance 10^6 times tighter and their errors are
    carried through every term.
    """
    tight = prec.tightened(1e6)
    with prec.workprec():
        Lk, Ll = Li(k, x, q, tight), Li(l, y, q, tight)
        xv, yv, zv = to_mpf(x), to_mpf(y), to_mpf(z)
        ax, ay, az = abs(xv), abs(yv), abs(zv)
        qv = q.value()
        tol = mpf(prec.target_tol) / 2
        zk = zl = mpf(0)
        xm = ym = zm = qm = mpf(1)
        total, mass, harm, m = mpf(0), mpf(0), mpf(0), 0
        while True:
            m += 1
            xm *= xv
            ym *= yv
            zm *= zv
            qm *= qv
            br = (1 - qm) / (1 - qv)
            zk += xm / br ** k
            zl += ym / br ** l
            t = (Lk.value * zl - Ll.value * zk) * zm / br
            total += t
            mass += abs(t)
            harm += az ** m / br
            if m % 8 == 0:
                nb = (1 - qm * qv) / (1 - qv)
                tail = ((Ll.magnitude() * ax / (1 - ax) * (ax * az) ** (m + 1) / (1 - ax * az)
                         + Lk.magnitude() * ay / (1 - ay) * (ay * az) ** (m + 1) / (1 - ay * az)) / nb)
                if tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError("mixed Li-zeta sum not certified")
        # errors of the Li values enter every term through |zeta_m| <= |x|/(1-|x|)
        carried = (Lk.bound * ay / (1 - ay) + Ll.bound * ax / (1 - ax)) * harm
        rnd = 16 * (m + k + l + 8) * (mass + 1) * mpmath.eps
        return QReal(total, tail + carried + rnd)


def weighted_polylog(l, y, q, prec: Precision) -> QReal:
    """E_l[y] = sum_m m y^m / [m]^l for 0 <= y < 1."""
    with prec.workprec():
        yv, qv = to_mpf(y), q.value()
        tol = mpf(prec.target_tol) / 2
        total, ym, qm, m = mpf(0), mpf(1), mpf(1), 0
        while True:
            m += 1
            ym *= yv
            qm *= qv
            total += m * ym / ((1 - qm) / (1 - qv)) ** l
            if m % 8 == 0 and (m + 2) * yv < m + 1:
                tail = poly_geometric_tail_bound(m, 1, yv).upper
                if tail <= tol:
                    break
            if m > MAX_TERMS:
                raise TruncationError("E_l sum not certified")
        return QReal(total, tail + 8 * (m + l + 4) * total * mpmath.eps)


def x1_boundary_term(k, l, s, h, q, prec) -> QReal:
    """-(1-q) (Li_k[q^h] E_l[q^s] - Li_l[q^s] E_k[q^h]).

    The x -> 1 limit of the j = 1 terms leaves this remainder behind; it
    vanishes as q -> 1.
    """
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    inner = Li(k, qh, q, prec) * weighted_polylog(l, qs, q, prec) \
        - Li(l, qs, q, prec) * weighted_polylog(k, qh, q, prec)
    return -(QReal(1 - q.value()) * inner)


# shifted double sums and H-functions --------------------------------------------------

def _hurwitz_dom(b):
    for name in ("a", "b"):
        _not_neg_int(name, b[name])
    _not_neg_int("a+b", b["a"] + b["b"])
    _need(b["k"] >= 1 and b["l"] >= 1, "k, l must be positive")
    _weight_ok("x", b["x"], (b["a"], b["b"]))


def _thm11_lhs(b, prec):
    k, l, a, bb, x, q = b["k"], b["l"], b["a"], b["b"], b["x"], b["q"]
    inner = ((1, x, a + bb),)
    first = shifted_sum(ShiftedSumSpec(inner, qpow(q, k, prec), bb, ((bb, k + l),), q), prec)
    second = shifted_sum(ShiftedSumSpec(inner, qpow(q, l, prec), a, ((a, k + l),), q), prec)
    return first * _sign(k - 1) - second * _sign(l - 1)


def _thm11_rhs(b, prec):
    k, l, a, bb, x, q = b["k"], b["l"], b["a"], b["b"], b["x"], b["q"]
    qq = q.q
    parts = []
    for j in range(1, l):
        parts.append(H(k + j, qpow(q, j - 1, prec) * x, a, q, prec) * H(l + 1 - j, x, bb, q, prec)
                     * _sign(j - 1))
    for j in range(1, k):
        parts.append(-(H(l + j, qpow(q, j - 1, prec) * x, bb, q, prec) * H(k + 1 - j, x, a, q, prec))
                     * _sign(j - 1))
    parts.append((H(1, x, bb, q, prec) * H(k + l, qpow(q, l - 1, prec) * x, a, q, prec)
                   - H(1, x, a + bb, q, prec) * H(k + l, qpow(q, l, prec), a, q, prec)) * _sign(l - 1))
    parts.append(-(H(1, x, a, q, prec) * H(k + l, qpow(q, k - 1, prec) * x, bb, q, prec)
                   - H(1, x, a + bb, q, prec) * H(k + l, qpow(q, k, prec), bb, q, prec)) * _sign(k - 1))
    del qq
    return qsum(parts)


def _special_dom(b):
    for name in ("a", "b"):
        _not_neg_int(name, b[name])
    _not_neg_int("a+b", b["a"] + b["b"])
    # [a] H_2[q,a] and [b] H_2[q,b]: a, b = 0 is fine since H_2 is finite there
    _need(b["a"] > -1 and b["b"] > -1 and b["a"] + b["b"] > -1,
          "shifts must exceed -1 for the bracket sums")


def _special_lhs(b, prec):
    a, bb, q = b["a"], b["b"], b["q"]
    qv = qpow(q, 1, prec)
    inner = ((1, qv, a + bb),)
    first = shifted_sum(ShiftedSumSpec(inner, qv, bb, ((bb, 2),), q), prec)
    second = shifted_sum(ShiftedSumSpec(inner, qv, a, ((a, 2),), q), prec)
    return first - second


def _special_rhs(b, prec):
    a, bb, q = b["a"], b["b"], b["q"]
    qv = qpow(q, 1, prec)
    s1 = shifted_sum(ShiftedSumSpec((), qv, bb, ((bb, 1), (a + bb, 1)), q), prec)
    s2 = shifted_sum(ShiftedSumSpec((), qv, a, ((a, 1), (a + bb, 1)), q), prec)
    return (q_bracket(a, q) * H(2, qv, a, q, prec) * s1
            - q_bracket(bb, q) * H(2, qv, bb, q, prec) * s2)


# Jackson integral of H-functions ------------------------------------------------------

def _lemma_dom(b):
    _need(b["m"] >= 1 and b["k"] >= 1, "m, k must be positive")
    for name in ("a", "b"):
        _not_neg_int(name, b[name])
    _not_neg_int("a+b", b["a"] + b["b"])
    _weight_ok("x", b["x"], (b["a"], b["b"]))


def _lemma_lhs(b, prec):
    f = lemma21_integrand(b["m"], b["k"], b["a"], b["b"], b["q"], prec)
    return q_integral(f, 0, b["x"], b["q"], prec)


def _lemma_rhs(b, prec):
    return lemma21_rhs(b["m"], b["k"], b["a"], b["b"], b["x"], b["q"], prec)


# depth-two combinations and their x -> 1 forms ----------------------------------------

def _thm12_dom(b):
    k, l, s, h = b["k"], b["l"], b["s"], b["h"]
    _need(k >= 1 and l >= 1, "k, l must be positive")
    _need(l > s >= 0, f"need l > s >= 0 (got l={l}, s={s})")
    _need(k > h >= 0, f"need k > h >= 0 (got k={k}, h={h})")
    _need(abs(b["x"]) < 1, "|x| < 1 required")


def _thm12_lhs(b, prec):
    k, l, s, h, x, q = b["k"], b["l"], b["s"], b["h"], b["x"], b["q"]
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    first = S([l, 1], [qs, qh * x], k, qpow(q, k - h, prec), q, prec)
    second = S([k, 1], [qh, qs * x], l, qpow(q, l - s, prec), q, prec)
    return first * _sign(k - 1) - second * _sign(l - 1)


def _thm12_rhs(b, prec):
    k, l, s, h, x, q = b["k"], b["l"], b["s"], b["h"], b["x"], b["q"]
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    parts = []
    for j in range(1, l):
        parts.append(Li(l + 1 - j, qs * x, q, prec) * S([k], [qh], j, qpow(q, j - 1, prec) * x, q, prec)
                     * _sign(j - 1))
    for j in range(1, k):
        parts.append(-(Li(k + 1 - j, qh * x, q, prec) * S([l], [qs], j, qpow(q, j - 1, prec) * x, q, prec))
                     * _sign(j - 1))
    parts.append(q_log(qs * x, q, prec) * (S([k], [qh], l, qpow(q, l - s, prec), q, prec)
                                          - S([k], [qh], l, qpow(q, l - 1, prec) * x, q, prec)) * _sign(l - 1))
    parts.append(-(q_log(qh * x, q, prec) * (S([l], [qs], k, qpow(q, k - h, prec), q, prec)
                                            - S([l], [qs], k, qpow(q, k - 1, prec) * x, q, prec))) * _sign(k - 1))
    return qsum(parts)


def _x1_dom(b):
    k, l, s, h = b["k"], b["l"], b["s"], b["h"]
    _need(k >= 2 and l >= 2, "k, l >= 2 required (the j-sums and q^(l-1) weights need it)")
    _need(l > s > 0, f"need l > s > 0 (got l={l}, s={s})")
    _need(k > h > 0, f"need k > h > 0 (got k={k}, h={h})")


def _x1_lhs(b, prec):
    k, l, s, h, q = b["k"], b["l"], b["s"], b["h"], b["q"]
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    first = S([l, 1], [qs, qh], k, qpow(q, k - h, prec), q, prec)
    second = S([k, 1], [qh, qs], l, qpow(q, l - s, prec), q, prec)
    return first * _sign(k - 1) - second * _sign(l - 1)


def _x1_common(b, prec):
    """The j >= 2 sums and the two logarithmic terms shared by both x -> 1 forms."""
    k, l, s, h, q = b["k"], b["l"], b["s"], b["h"], b["q"]
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    parts = []
    for j in range(2, l):
        parts.append(Li(l + 1 - j, qs, q, prec) * S([k], [qh], j, qpow(q, j - 1, prec), q, prec) * _sign(j - 1))
    for j in range(2, k):
        parts.append(-(Li(k + 1 - j, qh, q, prec) * S([l], [qs], j, qpow(q, j - 1, prec), q, prec)) * _sign(j - 1))
    parts.append(q_log(qs, q, prec) * (S([k], [qh], l, qpow(q, l - s, prec), q, prec)
                                      - S([k], [qh], l, qpow(q, l - 1, prec), q, prec)) * _sign(l - 1))
    parts.append(-(q_log(qh, q, prec) * (S([l], [qs], k, qpow(q, k - h, prec), q, prec)
                                        - S([l], [qs], k, qpow(q, k - 1, prec), q, prec))) * _sign(k - 1))
    return parts


def x1_rhs_printed(b, prec):
    """Right side of the x -> 1 form exactly as printed, without the boundary term."""
    k, l, s, h, q = b["k"], b["l"], b["s"], b["h"], b["q"]
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    last = mixed_li_zeta_sum(l, qs, k, qh, 1, q, prec)
    return qsum(_x1_common(b, prec) + [last])


def _x1_rhs(b, prec):
    return x1_rhs_printed(b, prec) + x1_boundary_term(b["k"], b["l"], b["s"], b["h"], b["q"], prec)


def cor_rhs_printed(b, prec):
    """Right side of the closed x, z -> 1 form as printed (no boundary term)."""
    k, l, s, h, q = b["k"], b["l"], b["s"], b["h"], b["q"]
    qs, qh = qpow(q, s, prec), qpow(q, h, prec)
    Lk, Ll = Li(k, qh, q, prec), Li(l, qs, q, prec)
    parts = _x1_common(b, prec)
    parts.append(Lk * S([1], [1], l, qs, q, prec))
    parts.append(-(Ll * S([1], [1], k, qh, q, prec)))
    parts.append(Ll * Li(k + 1, qh, q, prec))
    parts.append(-(Lk * Li(l + 1, qs, q, prec)))
    return qsum(parts)


def _cor_dom(b):
    k, l, s, h = b["k"], b["l"], b["s"], b["h"]
    _need(s > 0 and h > 0, "s, h must be positive")
    _need(l > max(s, 1), f"need l > max(s, 1) (got l={l}, s={s})")
    _need(k > max(h, 1), f"need k > max(h, 1) (got k={k}, h={h})")


def _cor_rhs(b, prec):
    return cor_rhs_printed(b, prec) + x1_boundary_term(b["k"], b["l"], b["s"], b["h"], b["q"], prec)


# mixed Li-zeta products ------------------------------------------------------------------

def _mlz_dom(b):
    _need(b["k"] >= 1 and b["l"] >= 1, "k, l must be positive")
    for name in ("x", "y", "z"):
        _need(abs(b[name]) < 1, f"|{name}| < 1 required")


def _mlz_lhs(b, prec):
    return mixed_li_zeta_sum(b["k"], b["x"], b["l"], b["y"], b["z"], b["q"], prec)


def _mlz_rhs(b, prec):
    k, l, x, y, z, q = b["k"], b["l"], b["x"], b["y"], b["z"], b["q"]
    Lk, Ll = Li(k, x, q, prec), Li(l, y, q, prec)
    return qsum([
        Ll * S([1], [z], k, x, q, prec),
        -(Lk * S([1], [z], l, y, q, prec)),
        Lk * Li(l + 1, z * y, q, prec),
        -(Ll * Li(k + 1, z * x, q, prec)),
    ])


# products of q-polylogarithms and depth reduction -------------------------------------

def _pos(*names):
    def check(b):
        for n in names:
            _need(b[n] >= 1, f"{n} must be a positive integer")
    return check


def _sum_zeta_lhs(b, prec):
    k, i, q = b["k"], b["i"], b["q"]
    spec = ShiftedSumSpec(((k, qpow(q, k - 1, prec), 0),), qpow(q, 1, prec), 0, ((0, 1), (i, 1)), q)
    return shifted_sum(spec, prec)


def _sum_zeta_rhs(b, prec):
    k, i, q = b["k"], b["i"], b["q"]
    qv = qpow(q, 1, prec)
    parts = [Li(k + 1, qpow(q, k, prec), q, prec)]
    for j in range(1, i):
        parts.append(q_harmonic(j, 1, q, prec) / q_bracket(j, q) ** k * QReal(to_mpf(qv) ** j) * _sign(k - 1))
    for j in range(1, k):
        parts.append(Li(k + 1 - j, qpow(q, k - j, prec), q, prec) * q_harmonic(i - 1, j, q, prec) * _sign(j - 1))
    return qsum(parts) / q_bracket(i, q)


def _double_sum_lhs(b, prec):
    k, j, q = b["k"], b["j"], b["q"]
    return shifted_sum(ShiftedSumSpec((), qpow(q, k, prec), 0, ((0, k), (j, 1)), q), prec)


def _double_sum_rhs(b, prec):
    k, j, q = b["k"], b["j"], b["q"]
    bj = q_bracket(j, q)
    parts = [Li(k - p + 1, qpow(q, k - p, prec), q, prec) / bj ** p * _sign(p - 1) for p in range(1, k)]
    parts.append(q_harmonic(j, 1, q, prec) / bj ** k * _sign(k - 1))
    return qsum(parts)


def _weights_dom(*names):
    def check(b):
        for n in names:
            _need(abs(b[n]) < 1, f"|{n}| < 1 required")
        for n in ("k1", "k2", "k3"):
            if n in b:
                _need(b[n] >= 1, f"{n} must be a positive integer")
    return check


def _lili2_lhs(b, prec):
    k1, k2, x, y, q = b["k1"], b["k2"], b["x"], b["y"], b["q"]
    return S([k1], [x], k2, y, q, prec) + S([k2], [y], k1, x, q, prec)


def _lili2_rhs(b, prec):
    k1, k2, x, y, q = b["k1"], b["k2"], b["x"], b["y"], b["q"]
    return Li(k1, x, q, prec) * Li(k2, y, q, prec) + Li(k1 + k2, x * y, q, prec)


def _lili3_lhs(b, prec):
    k1, k2, k3, x, y, z, q = (b[n] for n in ("k1", "k2", "k3", "x", "y", "z", "q"))
    return qsum([S([k1, k2], [x, y], k3, z, q, prec),
                 S([k1, k3], [x, z], k2, y, q, prec),
                 S([k2, k3], [y, z], k1, x, q, prec)])


def _lili3_rhs(b, prec):
    k1, k2, k3, x, y, z, q = (b[n] for n in ("k1", "k2", "k3", "x", "y", "z", "q"))
    return qsum([S([k1], [x], k2 + k3, y * z, q, prec),
                 S([k2], [y], k1 + k3, x * z, q, prec),
                 S([k3], [z], k1 + k2, x * y, q, prec),
                 Li(k1, x, q, prec) * Li(k2, y, q, prec) * Li(k3, z, q, prec),
                 -Li(k1 + k2 + k3, x * y * z, q, prec)])


def _lis_lhs(b, prec):
    k1, k2, x, y, z, q = (b[n] for n in ("k1", "k2", "x", "y", "z", "q"))
    # sum_m x^m/[m]^k1 sum_{j<=m} z^j/[j]^k2 zeta_j[1,y] is a non-strict nested sum
    nested = li_star((Letter(k1, x), Letter(k2, z), Letter(1, y)), q, prec)
    return nested + S([k1, 1], [x, y], k2, z, q, prec)


def _lis_rhs(b, prec):
    k1, k2, x, y, z, q = (b[n] for n in ("k1", "k2", "x", "y", "z", "q"))
    return Li(k1, x, q, prec) * S([1], [y], k2, z, q, prec) + S([1], [y], k1 + k2, x * z, q, prec)


def _thm13_lhs(b, prec):
    k, l, q = b["k"], b["l"], b["q"]
    qq = lambda e: qpow(q, e, prec)
    return (S([l + 1, 1], [qq(l), qq(1)], k, qq(1), q, prec) * _sign(k - 1)
            + S([k, 1], [qq(k - 1), qq(1)], l + 1, qq(1), q, prec) * _sign(l - 1))


def _thm13_rhs(b, prec):
    k, l, q = b["k"], b["l"], b["q"]
    qq = lambda e: qpow(q, e, prec)
    parts = [Li(l + 1, qq(l), q, prec) * Li(k + 1, qq(k), q, prec)]
    for j in range(1, k):
        parts.append(Li(k + 1 - j, qq(k - j), q, prec) * S([j], [qq(1)], l + 1, qq(l), q, prec) * _sign(j - 1))
    parts.append(Li(l + 1, qq(l), q, prec) * S([1], [qq(1)], k, qq(1), q, prec) * _sign(k - 1))
    for j in range(1, k):
        parts.append(-(Li(k + 1 - j, qq(k - j), q, prec) * Li(l + j + 1, qq(l + 1), q, prec)) * _sign(j - 1))
    for j in range(1, l):
        parts.append(-(Li(l + 1 - j, qq(l - j), q, prec) * S([k], [qq(k - 1)], j + 1, qq(1), q, prec))
                     * _sign(j - 1))
    return qsum(parts)


P = Param


def entries() -> list:
    return [
        IdentityEntry(
            "thm1.1",
            (P("k", "int"), P("l", "int"), P("a", "real"), P("b", "real"), P("x", "real"), P("q", "q")),
            _thm11_lhs, _thm11_rhs,
            "double sums with shifted q-brackets against products of Hurwitz-type H-functions",
            "numeric-q", _hurwitz_dom,
            {"k": K_GRID, "l": K_GRID, "a": SHIFT_GRID, "b": SHIFT_GRID, "x": X_GRID, "q": Q_GRID},
            {"k": 1, "l": 1, "a": "0.5", "b": "0.25", "x": "0.5", "q": "0.5"},
        ),
        IdentityEntry(
            "thm1.1-special",
            (P("a", "real"), P("b", "real"), P("q", "q")),
            _special_lhs, _special_rhs,
            "the x = q, k = l = 1 case of the shifted double-sum identity",
            "numeric-q", _special_dom,
            {"a": SHIFT_GRID, "b": SHIFT_GRID, "q": Q_GRID},
            {"a": "0.5", "b": "0.25", "q": "0.5"},
        ),
        IdentityEntry(
            "lemma2.1",
            (P("m", "int"), P("k", "int"), P("a", "real"), P("b", "real"), P("x", "real"), P("q", "q")),
            _lemma_lhs, _lemma_rhs,
            "Jackson integral of H_k[t,a] t^(m+b-1) over (0, x) in closed form",
            "numeric-q", _lemma_dom,
            {"m": [1, 2], "k": K_GRID, "a": SHIFT_GRID, "b": SHIFT_GRID, "x": X_GRID, "q": Q_GRID},
            {"m": 1, "k": 1, "a": 0, "b": 0, "x": "0.5", "q": "0.5"},
        ),
        IdentityEntry(
            "thm1.2",
            (P("k", "int"), P("l", "int"), P("s", "real"), P("h", "real"), P("x", "real"), P("q", "q")),
            _thm12_lhs, _thm12_rhs,
            "alternating-sign combination of depth-two S-sums with weights q^s, q^h x",
            "numeric-q", _thm12_dom,
            {"k": K_GRID, "l": K_GRID, "s": ["0", "0.5", "1"], "h": ["0", "0.5", "1"], "x": X_GRID, "q": Q_GRID},
            {"k": 2, "l": 2, "s": 0, "h": 1, "x": "0.3", "q": "0.5"},
        ),
        IdentityEntry(
            "thm1.2-x1",
            (P("k", "int"), P("l", "int"), P("s", "real"), P("h", "real"), P("q", "q")),
            _x1_lhs, _x1_rhs,
            "the x -> 1 limit of the depth-two combination, including the boundary term "
            "-(1-q)(Li_k[q^h] E_l[q^s] - Li_l[q^s] E_k[q^h])",
            "numeric-q", _x1_dom,
            {"k": [2, 3], "l": [2, 3], "s": POS_SHIFT_GRID, "h": POS_SHIFT_GRID, "q": Q_GRID},
            {"k": 3, "l": 2, "s": 1, "h": "0.5", "q": "0.5"},
        ),
        IdentityEntry(
            "thm-mul-li-zeta",
            (P("k", "int"), P("l", "int"), P("x", "real"), P("y", "real"), P("z", "real"), P("q", "q")),
            _mlz_lhs, _mlz_rhs,
            "sum of (Li_k[x] zeta_m[l,y] - Li_l[y] zeta_m[k,x]) z^m/[m] via depth-one S-sums",
            "numeric-q", _mlz_dom,
            {"k": K_GRID, "l": K_GRID, "x": X_GRID, "y": X_GRID, "z": X_GRID, "q": Q_GRID},
            {"k": 2, "l": 3, "x": "0.3", "y": "-0.6", "z": "0.6", "q": "0.5"},
        ),
        IdentityEntry(
            "cor-mul-li-zeta",
            (P("k", "int"), P("l", "int"), P("s", "real"), P("h", "real"), P("q", "q")),
            _x1_lhs, _cor_rhs,
            "closed x, z -> 1 form of the depth-two combination, including the boundary term",
            "numeric-q", _cor_dom,
            {"k": [2, 3], "l": [2, 3], "s": POS_SHIFT_GRID, "h": POS_SHIFT_GRID, "q": Q_GRID},
            {"k": 3, "l": 2, "s": 1, "h": "0.5", "q": "0.5"},
        ),
        IdentityEntry(
            "eq-sum-zeta",
            (P("k", "int"), P("i", "int"), P("q", "q")),
            _sum_zeta_lhs, _sum_zeta_rhs,
            "sum of zeta_m[k,q^(k-1)] q^m/([m][m+i]) through q-harmonic numbers",
            "numeric-q", _pos("k", "i"),
            {"k": K_GRID, "i": K_GRID, "q": Q_GRID},
            {"k": 2, "i": 3, "q": "0.5"},
        ),
        IdentityEntry(
            "eq-double-sum",
            (P("k", "int"), P("j", "int"), P("q", "q")),
            _double_sum_lhs, _double_sum_rhs,
            "sum of q^(km)/([m]^k [m+j]) through q-polylogarithms at powers of q",
            "numeric-q", _pos("k", "j"),
            {"k": K_GRID, "j": K_GRID, "q": Q_GRID},
            {"k": 2, "j": 3, "q": "0.5"},
        ),
        IdentityEntry(
            "eq-li-li-2",
            (P("k1", "int"), P("k2", "int"), P("x", "real"), P("y", "real"), P("q", "q")),
            _lili2_lhs, _lili2_rhs,
            "product of two q-polylogarithms as two depth-one S-sums",
            "numeric-q", _weights_dom("x", "y"),
            {"k1": K_GRID, "k2": K_GRID, "x": X_GRID, "y": X_GRID, "q": Q_GRID},
            {"k1": 1, "k2": 2, "x": "0.5", "y": "-0.5", "q": "0.5"},
        ),
        IdentityEntry(
            "eq-li-li-3",
            (P("k1", "int"), P("k2", "int"), P("k3", "int"), P("x", "real"), P("y", "real"),
             P("z", "real"), P("q", "q")),
            _lili3_lhs, _lili3_rhs,
            "product of three q-polylogarithms through depth-two and depth-one S-sums",
            "numeric-q", _weights_dom("x", "y", "z"),
            {"k1": K_GRID, "k2": K_GRID, "k3": K_GRID, "x": X_GRID, "y": X_GRID, "z": X_GRID, "q": Q_GRID},
            {"k1": 1, "k2": 2, "k3": 3, "x": "0.5", "y": "-0.3", "z": "0.6", "q": "0.5"},
        ),
        IdentityEntry(
            "eq-li-s",
            (P("k1", "int"), P("k2", "int"), P("x", "real"), P("y", "real"), P("z", "real"), P("q", "q")),
            _lis_lhs, _lis_rhs,
            "q-polylogarithm times a depth-one S-sum",
            "numeric-q", _weights_dom("x", "y", "z"),
            {"k1": K_GRID, "k2": K_GRID, "x": X_GRID, "y": X_GRID, "z": X_GRID, "q": Q_GRID},
            {"k1": 1, "k2": 2, "x": "0.5", "y": "-0.3", "z": "0.6", "q": "0.5"},
        ),
        IdentityEntry(
            "thm1.3",
            (P("k", "int"), P("l", "int"), P("q", "q")),
            _thm13_lhs, _thm13_rhs,
            "depth-two S-sums at powers of q reduced to depth one",
            "numeric-q", _pos("k", "l"),
            {"k": K_GRID, "l": K_GRID, "q": Q_GRID},
            {"k": 2, "l": 1, "q": "0.5"},
        ),
    ]
