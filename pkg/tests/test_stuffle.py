import random
import time
from fractions import Fraction

import pytest
from mpmath import mpf

import oracles
from qeuler.numerics import Precision
from qeuler.qseries import q_polylog, s_sum, series
from qeuler.stuffle import (
    FormalSum,
    Letter,
    Monomial,
    circ,
    from_text,
    li_star,
    parse_letters,
    s_as_li_star,
    stuffle,
    stuffle_all,
    subsequence_expansion,
    to_text,
    word,
)

PREC = Precision(256, 1e-40)
SYMS = ("a", "b", "c", "d")


def rand_word(rng, n, symbolic):
    out = []
    for _ in range(n):
        k = rng.randint(1, 3)
        x = rng.choice(SYMS) if symbolic else Fraction(rng.randint(-6, 6), 10)
        out.append(Letter(k, x))
    return tuple(out)


def split_lengths(rng, parts, total):
    cuts = [rng.randint(0, total) for _ in range(parts - 1)]
    cuts.sort()
    bounds = [0] + cuts + [total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def as_oracle(s):
    """FormalSum -> oracle dict over (k, weight) pairs."""
    def w8(x):
        return tuple(x.vars) if isinstance(x, Monomial) else x
    return {tuple((l.k, w8(l.x)) for l in w): c for w, c in s.items()}


# circ ------------------------------------------------------------------------

def test_circ_examples():
    assert circ(Letter(2, "x"), Letter(3, "y")) == Letter(5, "xy")
    assert circ(Letter(1, "0.5"), Letter(1, "0.5")) == Letter(2, Fraction(1, 4))
    assert circ(Letter(2, "0.3"), Letter(4, 1)) == Letter(6, "0.3")
    with pytest.raises(TypeError):
        circ(Letter(1, "x"), Letter(1, "0.5"))


def test_letter_validation():
    with pytest.raises(ValueError):
        Letter(0, "0.5")
    with pytest.raises(ValueError):
        Letter(1, "1.5")


# axioms ------------------------------------------------------------------------

def test_unit_axiom():
    w = parse_letters("[2;a][1;b]")
    assert stuffle((), w) == FormalSum.of(w)
    assert stuffle(w, ()) == FormalSum.of(w)


def test_two_letters():
    a, b = Letter(2, "a"), Letter(3, "b")
    expected = FormalSum({(a, b): 1, (b, a): 1, (Letter(5, "ab"),): -1})
    assert stuffle((a,), (b,)) == expected
    assert to_text(expected) == "[2;a][3;b] + [3;b][2;a] - [5;ab]"


def test_mixed_mode_rejected():
    with pytest.raises(TypeError):
        stuffle(parse_letters("[1;a]"), parse_letters("[1;0.5]"))
    with pytest.raises(TypeError):
        subsequence_expansion([Letter(1, "a"), Letter(2, "0.5")])


def test_against_unmemoised_oracle():
    rng = random.Random(5)
    for _ in range(40):
        symbolic = rng.random() < 0.5
        u = rand_word(rng, rng.randint(0, 3), symbolic)
        v = rand_word(rng, rng.randint(0, 3), symbolic)
        ref = oracles.stuffle_words(as_oracle(FormalSum.of(u)).popitem()[0],
                                    as_oracle(FormalSum.of(v)).popitem()[0])
        assert as_oracle(stuffle(u, v)) == ref


def test_depth_two_by_one():
    u, v = parse_letters("[2;a][1;b]"), parse_letters("[3;c]")
    ref = oracles.stuffle_words(((2, ("a",)), (1, ("b",))), ((3, ("c",)),))
    assert as_oracle(stuffle(u, v)) == ref


def test_commutativity_200():
    rng = random.Random(2024)
    for i in range(200):
        lu, lv = split_lengths(rng, 2, rng.randint(0, 6))
        symbolic = i % 2 == 0
        u, v = rand_word(rng, lu, symbolic), rand_word(rng, lv, symbolic)
        assert stuffle(u, v) == stuffle(v, u)


def test_associativity_100():
    rng = random.Random(99)
    for i in range(100):
        lu, lv, lw = split_lengths(rng, 3, rng.randint(0, 6))
        symbolic = i % 2 == 0
        u, v, w = (rand_word(rng, n, symbolic) for n in (lu, lv, lw))
        assert stuffle(stuffle(u, v), w) == stuffle(u, stuffle(v, w))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_subsequence_expansion_symbolic(n):
    letters = [Letter(k, f"x{i + 1}") for i, k in enumerate((1, 2, 3, 1)[:n])]
    assert subsequence_expansion(letters) == stuffle_all(letters)


def test_subsequence_expansion_small_cases():
    l1 = Letter(3, "a")
    assert subsequence_expansion([l1]) == FormalSum.of((l1,))
    a, b, c = Letter(1, "a"), Letter(2, "b"), Letter(1, "c")
    assert subsequence_expansion([a, b]) == stuffle((a,), (b,))
    assert subsequence_expansion([a, b, c]) == stuffle(stuffle((a,), (b,)), (c,))


def test_subsequence_expansion_concrete():
    letters = [Letter(1, "0.5"), Letter(2, "-0.3"), Letter(1, "0.6")]
    assert subsequence_expansion(letters) == stuffle_all(letters)


# serialization ------------------------------------------------------------------

GOLDEN_TEXT = (
    "[1;a][2;b][3;c] + [1;a][3;c][2;b] + [2;b][1;a][3;c] + [2;b][3;c][1;a]"
    " + [3;c][1;a][2;b] + [3;c][2;b][1;a] - [1;a][5;bc] - [3;ab][3;c]"
    " - [3;c][3;ab] - [4;ac][2;b] - [2;b][4;ac] - [5;bc][1;a] + [6;abc]"
)


def test_golden_text():
    s = stuffle_all(parse_letters("[1;a][2;b][3;c]"))
    assert set(to_text(s).replace(" - ", " + ").split(" + ")) == set(
        GOLDEN_TEXT.replace(" - ", " + ").split(" + "))
    assert from_text(GOLDEN_TEXT) == s
    assert to_text(from_text(to_text(s))) == to_text(s)


def test_text_round_trip():
    rng = random.Random(8)
    for _ in range(30):
        symbolic = rng.random() < 0.5
        s = stuffle(rand_word(rng, rng.randint(0, 3), symbolic), rand_word(rng, rng.randint(0, 3), symbolic))
        s = s + s.scale(Fraction(-1, 3)) if rng.random() < 0.3 else s
        assert from_text(to_text(s)) == s
    assert to_text(FormalSum()) == "0"
    assert from_text("0") == FormalSum()
    assert from_text("(2/3)*[1;0.5] - 1") == FormalSum({(Letter(1, "0.5"),): Fraction(2, 3), (): -1})


def test_canonical_order_is_deterministic():
    a = stuffle(parse_letters("[1;a][1;b]"), parse_letters("[2;c]"))
    b = stuffle(parse_letters("[2;c]"), parse_letters("[1;a][1;b]"))
    assert to_text(a) == to_text(b)


# evaluation ---------------------------------------------------------------------

def close(a, b, *bounds):
    with PREC.workprec():
        return abs(mpf(a) - mpf(b)) <= sum(mpf(t) for t in bounds)


def test_li_star_single_letter():
    for k, x, q in ((1, "0.5", "0.5"), (2, "-0.3", "0.7"), (3, "0.6", "0.3")):
        v = li_star(word((k, x)), q, PREC)
        ref = q_polylog(k, Fraction(x), Fraction(q), PREC)
        assert close(v.value, ref.value, v.bound, ref.bound)


def test_li_star_unit():
    assert li_star(FormalSum.of(()), "0.5", PREC).value == 1


def test_li_star_golden(golden):
    v = li_star(word((2, "0.5"), (1, "0.5")), "0.5", PREC)
    assert close(v.value, golden["listar_2_0.5_1_0.5_q0.5"], v.bound, "1e-55")
    assert v.bound <= 1e-40
    with PREC.workprec():
        ref = oracles.li_star_2(2, Fraction(1, 2), 1, Fraction(1, 2), Fraction(1, 2), terms=300)
    assert close(v.value, ref, v.bound, "1e-50")


def test_li_star_oracle_depth_three():
    w = [(1, Fraction(1, 2)), (2, Fraction(-3, 10)), (1, Fraction(3, 5))]
    with PREC.workprec():
        ref = oracles.li_star(w, Fraction(1, 2), terms=260)
    v = li_star(word(*w), "0.5", PREC)
    assert close(v.value, ref, v.bound, "1e-60")


def test_li_star_rejections():
    with pytest.raises(TypeError):
        li_star(parse_letters("[1;a]"), "0.5", PREC)
    with pytest.raises(ValueError):
        li_star(word((1, 1)), "0.5", PREC)


def test_homomorphism_30():
    rng = random.Random(31)
    t0 = time.time()
    for _ in range(30):
        u = rand_word(rng, rng.randint(1, 2), False)
        v = rand_word(rng, rng.randint(1, 2), False)
        q = Fraction(rng.randint(2, 8), 10)
        lhs = li_star(stuffle(u, v), q, PREC)
        rhs = li_star(u, q, PREC) * li_star(v, q, PREC)
        assert close(lhs.value, rhs.value, lhs.bound, rhs.bound)
    assert time.time() - t0 < 60


def test_s_as_li_star_10():
    rng = random.Random(12)
    for _ in range(10):
        n = rng.randint(1, 3)
        ks = [rng.randint(1, 3) for _ in range(n)]
        xs = [Fraction(rng.choice([-6, -3, 3, 5, 6]), 10) for _ in range(n)]
        k, x = rng.randint(1, 3), Fraction(rng.choice([-5, 3, 5]), 10)
        q = Fraction(rng.randint(2, 8), 10)
        spec = series(ks, xs, k, x, q)
        expr, val = s_as_li_star(spec, PREC)
        ref = s_sum(spec, PREC)
        assert close(val.value, ref.value, val.bound, ref.bound)
        assert expr == stuffle_all([Letter(a, b) for a, b in zip(ks, xs)]).prepend(Letter(k, x))


def test_s_as_li_star_depth_one_trivial():
    spec = series([2], [Fraction(1, 2)], 1, Fraction(3, 10), Fraction(1, 2))
    expr, _ = s_as_li_star(spec, PREC)
    assert expr == FormalSum.of(word((1, "0.3"), (2, "0.5")))
