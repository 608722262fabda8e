"""The stuffle product on words of letters [k; x].

Symbolic weights show the combinatorics; concrete weights show that the
nested-sum map turns the product into ordinary multiplication.

    python3 demos/stuffle_algebra.py
"""
import mpmath

from qeuler import Precision
from qeuler.stuffle import Letter, li_star, parse_letters, stuffle, stuffle_all, subsequence_expansion, to_text

prec = Precision(256, 1e-40)

print("[2;a] * [3;b] =", to_text(stuffle(parse_letters("[2;a]"), parse_letters("[3;b]"))))

letters = [Letter(1, "a"), Letter(2, "b"), Letter(3, "c")]
product = stuffle_all(letters)
print(f"\nthree letters give {len(product)} words:")
print(" ", to_text(product))
print("subsequence expansion agrees:", subsequence_expansion(letters) == product)

u, v = parse_letters("[2;0.5][1;-0.3]"), parse_letters("[1;0.6]")
lhs = li_star(stuffle(u, v), "0.5", prec)
with prec.workprec():
    rhs = li_star(u, "0.5", prec) * li_star(v, "0.5", prec)
    print(f"\nLi*[u * v]       = {mpmath.nstr(lhs.value, 35)}")
    print(f"Li*[u] Li*[v]    = {mpmath.nstr(rhs.value, 35)}")
    print(f"difference       = {mpmath.nstr(abs(lhs.value - rhs.value), 3)}  (bound {mpmath.nstr(lhs.bound + rhs.bound, 3)})")
