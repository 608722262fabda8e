"""Three q-Euler sums next to their polylogarithm closed forms.

Each sum is printed with the residual between the two sides and the
sum of their certified error bounds.

    python3 demos/worked_examples.py
"""
from fractions import Fraction

import mpmath

from qeuler import Precision, q_polylog, s_sum, series
from qeuler.numerics import QReal, qsum

prec = Precision(256, 1e-40)


def closed_forms(q):
    Li = lambda k, x: q_polylog(k, x, q, prec)
    half = QReal(mpmath.mpf(1) / 2)
    return {
        "S[1;1|2;q]": (series([1], [1], 2, q, q), Li(3, q) + Li(3, q * q)),
        "S[1;1|3;q]": (series([1], [1], 3, q, q),
                       qsum([Li(4, q * q) * QReal(mpmath.mpf(3) / 2), Li(4, q), -(Li(2, q) ** 2 * half)])),
        "S[1,1;1,1|2;q]": (series([1, 1], [1, 1], 2, q, q),
                           qsum([Li(4, q * q) * QReal(mpmath.mpf(7) / 2), Li(4, q) * 2, -(Li(2, q) ** 2 * half),
                                 -(QReal(1 - mpmath.mpf(q.numerator) / q.denominator) * (Li(3, q * q) + Li(3, q)))])),
    }


if __name__ == "__main__":
    for qs in ("0.1", "0.5", "0.9"):
        q = Fraction(qs)
        print(f"q = {qs}")
        with prec.workprec():
            for name, (spec, rhs) in closed_forms(q).items():
                lhs = s_sum(spec, prec)
                print(f"  {name:16} {mpmath.nstr(lhs.value, 30):>34}"
                      f"  residual {mpmath.nstr(abs(lhs.value - rhs.value), 2):8}"
                      f"  combined bound {mpmath.nstr(lhs.bound + rhs.bound, 2)}")
