"""Registry entries for classical Euler sums (the q -> 1 limits)."""
from __future__ import annotations

from fractions import Fraction

from ..classical import (
    EulerSumSpec,
    alt_zeta_value,
    constants,
    euler_linear_closed,
    euler_sum,
    ln2,
    parse_euler_sum,
    zeta_value,
)
from ..numerics import QReal, qsum
from .core import DomainError, IdentityEntry, Param

CLASSICAL_PAIRS = ["2", "3"]


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def S(inner, k, prec, alt=False):
    return euler_sum(EulerSumSpec(tuple(inner), k, alt), prec)


def z(k, prec):
    return zeta_value(k, prec)


def zbar(k, prec):
    return alt_zeta_value(k, prec)


def _rat(p, q_=1):
    return QReal.exact(Fraction(p, q_))


def _need(cond, msg):
    if not cond:
        raise DomainError(msg)


# linear sums and quadratic q -> 1 limits -----------------------------------------

def _linear_lhs(b, prec):
    return S((1,), b["k"], prec)


def _linear_rhs(b, prec):
    return euler_linear_closed(b["k"], prec)


def _cor41_dom(b):
    _need(b["k"] > 1 and b["l"] > 1, "k > 1 and l > 1 required")


def _cor41_lhs(b, prec):
    k, l = b["k"], b["l"]
    return S((1, l), k, prec) * _sign(k - 1) - S((1, k), l, prec) * _sign(l - 1)


def _cor41_rhs(b, prec):
    k, l = b["k"], b["l"]
    parts = [z(l + 1 - j, prec) * S((k,), j, prec) * _sign(j - 1) for j in range(2, l)]
    parts += [-(z(k + 1 - j, prec) * S((l,), j, prec)) * _sign(j - 1) for j in range(2, k)]
    parts += [z(k, prec) * S((1,), l, prec), -(z(l, prec) * S((1,), k, prec)),
              z(l, prec) * z(k + 1, prec), -(z(k, prec) * z(l + 1, prec))]
    return qsum(parts)


def _cor42_dom(b):
    _need(b["k"] > 1 and b["l"] >= 1, "k > 1 and l >= 1 required")


def _cor42_lhs(b, prec):
    k, l = b["k"], b["l"]
    return S((1, k), l + 1, prec) * _sign(l - 1) + S((1, l + 1), k, prec) * _sign(k - 1)


def _cor42_rhs(b, prec):
    k, l = b["k"], b["l"]
    parts = [z(k + 1, prec) * z(l + 1, prec)]
    parts += [z(k + 1 - j, prec) * S((j,), l + 1, prec) * _sign(j - 1) for j in range(1, k)]
    parts.append(z(l + 1, prec) * S((1,), k, prec) * _sign(k - 1))
    parts += [-(z(k + 1 - j, prec) * z(l + j + 1, prec)) * _sign(j - 1) for j in range(1, k)]
    parts += [-(z(l + 1 - j, prec) * S((k,), j + 1, prec)) * _sign(j - 1) for j in range(1, l)]
    return qsum(parts)


# alternating quadratic sums --------------------------------------------------------

def _alt_dom(b):
    _need(b["l"] >= 2, "l >= 2 required")
    _need(b["k"] >= 0, "k >= 0 required")


def _cor43_lhs(b, prec):
    l, r = b["l"], b["l"] + 2 * b["k"] + 1
    return (S((-1, r), l, prec) + S((-1, l), r, prec)) * _sign(l)


def _cor43_rhs(b, prec):
    l, r = b["l"], b["l"] + 2 * b["k"] + 1
    L2 = ln2(prec)
    parts = [zbar(r + 1 - j, prec) * S((l,), j, prec, True) * _sign(j - 1) for j in range(1, r)]
    parts += [-(zbar(l + 1 - j, prec) * S((r,), j, prec, True)) * _sign(j - 1) for j in range(1, l)]
    parts.append(L2 * (S((r,), l, prec) + S((l,), r, prec)) * _sign(l))
    parts.append(L2 * (S((r,), l, prec, True) + S((l,), r, prec, True)) * _sign(l))
    return qsum(parts)


def _cor44_lhs(b, prec):
    l, r = b["l"], b["l"] + 2 * b["k"]
    return (S((-1, r), l, prec) - S((-1, l), r, prec)) * _sign(l)


def _cor44_rhs(b, prec):
    l, r = b["l"], b["l"] + 2 * b["k"]
    L2 = ln2(prec)
    parts = [zbar(r + 1 - j, prec) * S((l,), j, prec, True) * _sign(j - 1) for j in range(1, r)]
    parts += [-(zbar(l + 1 - j, prec) * S((r,), j, prec, True)) * _sign(j - 1) for j in range(1, l)]
    parts.append(L2 * (S((r,), l, prec) - S((l,), r, prec)) * _sign(l))
    parts.append(L2 * (S((r,), l, prec, True) - S((l,), r, prec, True)) * _sign(l))
    return qsum(parts)


def _cor45_lhs(b, prec):
    l, r = b["l"], b["l"] + 2 * b["k"] + 1
    return qsum([S((-1, r), l, prec), S((-1, l), r, prec), S((l, r), 1, prec, True)])


def _cor45_rhs(b, prec):
    l, r = b["l"], b["l"] + 2 * b["k"] + 1
    return qsum([S((l,), r + 1, prec, True), S((-1,), l + r, prec), S((r,), l + 1, prec, True),
                 ln2(prec) * z(r, prec) * z(l, prec), -zbar(l + r + 1, prec)])


# zeta polynomials ---------------------------------------------------------------------

def _zp_dom(b):
    _need(b["l"] >= 2, "l >= 2 required")
    _need(1 <= b["which"] <= 5, "which selects one of the five displays (1..5)")


def _zp_lhs(b, prec):
    l, w = b["l"], b["which"]
    zl = z(l, prec)
    return [zl ** 4, z(2 * l, prec) * zl ** 2, z(3 * l, prec) * zl ** 2, zl ** 5, z(2 * l, prec) * zl ** 3][w - 1]


def _zp_rhs(b, prec):
    l, w = b["l"], b["which"]

    def Sl(*args):
        return S(args[:-1], args[-1], prec)

    if w == 1:
        return qsum([Sl(l, l, l, l) * 4, Sl(l, l, 2 * l) * -6, Sl(l, 3 * l) * 4, -z(4 * l, prec)])
    if w == 2:
        return qsum([Sl(l, 2 * l, l) * 2, Sl(l, l, 2 * l), -Sl(2 * l, 2 * l), Sl(l, 3 * l) * -2, z(4 * l, prec)])
    if w == 3:
        return qsum([Sl(l, 3 * l, l) * 2, Sl(l, l, 3 * l), -Sl(3 * l, 2 * l), Sl(l, 4 * l) * -2, z(5 * l, prec)])
    if w == 4:
        return qsum([Sl(l, l, l, l, l) * 5, Sl(l, l, l, 2 * l) * -10, Sl(l, l, 3 * l) * 10,
                     Sl(l, 4 * l) * -5, z(5 * l, prec)])
    return qsum([Sl(l, l, l, 2 * l), Sl(l, l, 2 * l, l) * 3, Sl(l, l, 3 * l) * -3, Sl(l, 2 * l, 2 * l) * -3,
                 Sl(l, 4 * l) * 3, Sl(2 * l, 3 * l), -z(5 * l, prec)])


# the two alternating quadratic evaluations ----------------------------------------------

def _quadratic_parts(prec):
    c = constants(prec)
    return c.zeta, c.ln2, c.li4_half


def _s231_lhs(b, prec):
    return euler_sum(parse_euler_sum("S(2,3;-1)"), prec)


def _s231_rhs(b, prec):
    zt, L, li4 = _quadratic_parts(prec)
    return qsum([
        _rat(-161, 64) * zt[6], _rat(31, 16) * zt[5] * L, _rat(9, 32) * zt[3] ** 2,
        _rat(3, 8) * zt[2] * zt[3] * L, _rat(2) * zt[2] * li4, _rat(-5, 4) * zt[4] * L ** 2,
        _rat(1, 12) * zt[2] * L ** 4,
        euler_sum(parse_euler_sum("S(2;-4)"), prec), -euler_sum(parse_euler_sum("S(-3;3)"), prec),
    ])


def _s2b3b_lhs(b, prec):
    return euler_sum(parse_euler_sum("S(-2,-3;-1)"), prec)


def _s2b3b_rhs(b, prec):
    zt, L, li4 = _quadratic_parts(prec)
    return qsum([
        _rat(163, 128) * zt[6], _rat(-31, 16) * zt[5] * L, _rat(3, 16) * zt[3] ** 2,
        _rat(-3, 4) * zt[2] * zt[3] * L, -(zt[2] * li4), _rat(5, 8) * zt[4] * L ** 2,
        _rat(-1, 24) * zt[2] * L ** 4,
        euler_sum(parse_euler_sum("S(-2;4)"), prec), euler_sum(parse_euler_sum("S(-3;3)"), prec),
    ])


P = Param
ALT_GRID = {"l": [2, 3], "k": [0, 1]}


def _alt_filter(b):
    # weight l + 2k + 1 <= 5 keeps the default sweep at desk scale
    return b["l"] + 2 * b["k"] <= 4


def entries() -> list:
    return [
        IdentityEntry(
            "cor4.1", (P("k", "int"), P("l", "int")), _cor41_lhs, _cor41_rhs,
            "q -> 1 limit of the depth-two combination for S(1,l;k) and S(1,k;l)",
            "classical", _cor41_dom, {"k": CLASSICAL_PAIRS, "l": CLASSICAL_PAIRS}, {"k": 2, "l": 3},
        ),
        IdentityEntry(
            "cor4.2", (P("k", "int"), P("l", "int")), _cor42_lhs, _cor42_rhs,
            "q -> 1 limit relating S(1,k;l+1) and S(1,l+1;k) to linear sums",
            "classical", _cor42_dom, {"k": CLASSICAL_PAIRS, "l": CLASSICAL_PAIRS}, {"k": 2, "l": 2},
        ),
        IdentityEntry(
            "cor4.3", (P("l", "int"), P("k", "int")), _cor43_lhs, _cor43_rhs,
            "alternating sums S(-1,l+2k+1;l) + S(-1,l;l+2k+1) through linear sums and ln 2",
            "classical", _alt_dom, ALT_GRID, {"l": 2, "k": 0}, _alt_filter,
        ),
        IdentityEntry(
            "cor4.4", (P("l", "int"), P("k", "int")), _cor44_lhs, _cor44_rhs,
            "alternating sums S(-1,l+2k;l) - S(-1,l;l+2k) through linear sums and ln 2",
            "classical", _alt_dom, ALT_GRID, {"l": 2, "k": 0}, _alt_filter,
        ),
        IdentityEntry(
            "cor4.5", (P("l", "int"), P("k", "int")), _cor45_lhs, _cor45_rhs,
            "three quadratic sums including S(l,l+2k+1;-1) against linear sums",
            "classical", _alt_dom, ALT_GRID, {"l": 2, "k": 0}, _alt_filter,
        ),
        IdentityEntry(
            "zeta-poly-l", (P("l", "int"), P("which", "int")), _zp_lhs, _zp_rhs,
            "powers and products of zeta(l), zeta(2l), zeta(3l) as Euler sums (displays 1..5)",
            "classical", _zp_dom, {"l": [2], "which": [1, 2, 3, 4, 5]}, {"l": 2, "which": 1},
        ),
        IdentityEntry(
            "ex-s231bar", (), _s231_lhs, _s231_rhs,
            "closed form of S(2,3;-1) with zeta values, ln 2, Li_4(1/2) and two linear sums",
            "classical", None, {}, {},
        ),
        IdentityEntry(
            "ex-s2bar3bar1bar", (), _s2b3b_lhs, _s2b3b_rhs,
            "closed form of S(-2,-3;-1) with zeta values, ln 2, Li_4(1/2) and two linear sums",
            "classical", None, {}, {},
        ),
        IdentityEntry(
            "euler-linear", (P("k", "int"),), _linear_lhs, _linear_rhs,
            "Euler's reduction of S(1;k) to zeta values",
            "classical", lambda b: _need(b["k"] >= 2, "k >= 2 required"),
            {"k": [2, 3, 4, 5, 6]}, {"k": 2},
        ),
    ]
