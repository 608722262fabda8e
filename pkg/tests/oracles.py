"""Brute-force reference implementations, kept independent of the package.

Everything here is a direct transcription of a definition evaluated in
plain mpmath at high precision with a fixed, generous number of terms.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import mpmath
from mpmath import mpf

ORACLE_BITS = 512


def num(x):
    """mpf from int, str, float, Fraction or mpf."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def bracket(b, q):
    q = num(q)
    return (1 - q ** num(b)) / (1 - q)


def polylog(k, x, q, terms=500):
    x = num(x)
    return mpmath.fsum(x ** m / bracket(m, q) ** k for m in range(1, terms + 1))


def hfun(k, x, a, q, terms=500):
    x, a = num(x), num(a)
    return mpmath.fsum(x ** (m + a) / bracket(m + a, q) ** k for m in range(1, terms + 1))


def zeta_partial(m, k, x, q):
    x = num(x)
    return mpmath.fsum(x ** j / bracket(j, q) ** k for j in range(1, m + 1))


def s_sum(ks, xs, k, x, q, terms=400):
    """S[ks; xs | k; x] by running partial sums, in mpf arithmetic."""
    x = num(x)
    z = [num(0)] * len(ks)
    total = num(0)
    for m in range(1, terms + 1):
        b = bracket(m, q)
        for i, (ki, xi) in enumerate(zip(ks, xs)):
            z[i] += num(xi) ** m / b ** ki
        p = num(1)
        for v in z:
            p *= v
        total += p * x ** m / b ** k
    return total


def li_star_2(k1, x1, k2, x2, q, terms=400):
    """sum_{m1 >= m2 >= 1} x1^m1 x2^m2 / ([m1]^k1 [m2]^k2) by a plain double loop."""
    total = num(0)
    for m1 in range(1, terms + 1):
        inner = mpmath.fsum(num(x2) ** m2 / bracket(m2, q) ** k2 for m2 in range(1, m1 + 1))
        total += num(x1) ** m1 / bracket(m1, q) ** k1 * inner
    return total


def li_star(word, q, terms=300):
    """Non-strict nested sum of a word [(k, x), ...] by recursion on the last index."""
    n = len(word)
    if n == 0:
        return num(1)
    # inner[m] = nested sum over letters i..n-1 with the first index equal to m
    prev = None
    for k, x in reversed(word):
        cur = [num(0)] * (terms + 1)
        acc = num(0)
        for m in range(1, terms + 1):
            if prev is not None:
                acc += prev[m]
                inner = acc
            else:
                inner = num(1)
            cur[m] = num(x) ** m / bracket(m, q) ** k * inner
        prev = cur
    return mpmath.fsum(prev[1:])


# classical ---------------------------------------------------------------------

def harmonic(m, k, signed=False):
    return sum((Fraction((-1) ** (j - 1) if signed else 1, j ** k) for j in range(1, m + 1)), Fraction(0))


# stuffle, written without memoisation -------------------------------------------------

def _mul_weight(x, y):
    if isinstance(x, tuple):
        return tuple(sorted(x + y))
    return x * y


def stuffle_words(u, v):
    """Axioms (1) and (2) on words of (k, weight) pairs; returns {word: coeff}."""
    if not u:
        return {tuple(v): 1}
    if not v:
        return {tuple(u): 1}
    a, b = u[0], v[0]
    out = {}

    def add(prefix, terms, sign):
        for w, c in terms.items():
            key = (prefix,) + w
            out[key] = out.get(key, 0) + sign * c

    add(a, stuffle_words(u[1:], v), 1)
    add(b, stuffle_words(u, v[1:]), 1)
    add((a[0] + b[0], _mul_weight(a[1], b[1])), stuffle_words(u[1:], v[1:]), -1)
    return {w: c for w, c in out.items() if c}


def stuffle_sums(s, t):
    out = {}
    for u, cu in s.items():
        for v, cv in t.items():
            for w, c in stuffle_words(u, v).items():
                out[w] = out.get(w, 0) + cu * cv * c
    return {w: c for w, c in out.items() if c}


def polylog_product_terms(ks, xs):
    """Signed S-sum terms of the polylogarithm product, as (sign, inner_k, inner_x, k, x)."""
    n = len(ks)
    out = []
    for m in range(n):
        for idx in combinations(range(n), m):
            rest = num(1)
            for i in range(n):
                if i not in idx:
                    rest *= num(xs[i])
            out.append(((-1) ** (n - m - 1), [ks[i] for i in idx], [xs[i] for i in idx],
                        sum(ks) - sum(ks[i] for i in idx), rest))
    return out
