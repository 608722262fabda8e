"""From q-analogues to classical Euler sums.

As q approaches 1 the q-bracket [m] tends to m and q-series tend to their
classical counterparts.  The second half evaluates a few classical Euler
sums, including alternating ones, against closed forms.

    python3 demos/classical_limit.py
"""
import mpmath

from qeuler import Precision, q_polylog
from qeuler.classical import CLASSICAL_PRECISION, euler_linear_closed, euler_sum, zeta_value
from qeuler.numerics import QParam, q_bracket

prec = Precision(128, 1e-20)
with prec.workprec():
    z2 = zeta_value(2).value
    print(f"{'q':>8} {'[3]':>24} {'Li_2[q]':>24}")
    for qs in ("0.9", "0.99", "0.999", "0.9999"):
        qp = QParam(qs)
        print(f"{qs:>8} {mpmath.nstr(q_bracket(3, qp).value, 18):>24} "
              f"{mpmath.nstr(q_polylog(2, qp.q, qp, prec).value, 18):>24}")
    print(f"{'limit':>8} {'3':>24} {mpmath.nstr(z2, 18):>24}")

print("\nEuler's linear sums S(1;k) against the closed form:")
with CLASSICAL_PRECISION.workprec():
    for k in range(2, 7):
        v, c = euler_sum(f"S(1;{k})"), euler_linear_closed(k)
        print(f"  k={k}: {mpmath.nstr(v.value, 25)}  closed form differs by {mpmath.nstr(abs(v.value - c.value), 2)}")
    alt = euler_sum("S(2,3;-1)")
    print(f"\nS(2,3;-1) = {mpmath.nstr(alt.value, 25)} ± {mpmath.nstr(alt.bound, 2)}")
