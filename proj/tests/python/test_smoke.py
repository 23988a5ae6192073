from fractions import Fraction

import pytest

import pydagger as pd


def test_scalars():
    assert pd.valuation(Fraction(18), 3) == 2
    assert pd.valuation(Fraction(5, 9), 3) == -2
    assert pd.valuation(0, 3) is None
    assert pd.valuation("7/2", 2) == -1
    assert pd.factorial_valuation(10, 3) == 4
    assert pd.stirling_second(4, 2) == 7
    assert pd.falling_coeff(4, 2) == 11
    assert pd.binomial(Fraction(1, 2), 2) == Fraction(-1, 8)


def test_mahler_round_trip():
    cube = {(3,): Fraction(1)}
    m = pd.taylor_to_mahler(cube)
    assert m == {(1,): 1, (2,): 6, (3,): 6}
    assert pd.mahler_to_taylor(m) == cube
    # x^3 at p = 2, rho = 1 on both sides
    assert pd.gauss_norm(cube, [1], 2) == (3, True)
    assert pd.mahler_norm(m, [1], 2) == (3, True)


def test_gauss_norm_multiplicative():
    f = {(1, 0): Fraction(1, 3), (0, 2): Fraction(9)}
    g = {(2, 1): Fraction(2), (0, 0): Fraction(1)}
    rho = [Fraction(1, 2), Fraction(1, 4)]
    fg = pd.multiply_polynomials(f, g)
    lhs = pd.gauss_norm(fg, rho, 3)[0]
    assert lhs == pd.gauss_norm(f, rho, 3)[0] + pd.gauss_norm(g, rho, 3)[0]


def test_heisenberg_group():
    g = pd.builtin_group("heisenberg:3")
    assert (g.p, g.d, g.law_degree) == (3, 3, 2)
    assert g.law[2][(0, 1, 0, 1, 0, 0)] == -3
    assert g.multiply([0, 1, 0], [1, 0, 0]) == [1, 1, -3]
    x = [Fraction(2), Fraction(5), Fraction(7)]
    assert g.multiply(x, g.invert(x)) == [0, 0, 0]
    assert g.omega_of([9, 3, 6]) == 2
    assert g.omega_of([0, 0, 0]) is None
    assert g.tau(4) == [Fraction(1, 10)] * 3
    assert pd.load_group(g.to_json()).law == g.law


def test_invalid_group():
    bad = '{"p": 3, "d": 1, "omega": ["1/3"], "F": [[{"index": [1, 0], "coeff": "1"}, ' \
          '{"index": [0, 1], "coeff": "1"}]], "I": [[{"index": [1], "coeff": "-1"}]]}'
    with pytest.raises(ValueError):
        pd.load_group(bad)


def test_distributions():
    g = pd.builtin_group("heisenberg:3")
    b1 = pd.b_monomial(g, [1, 0, 0], 4)
    b2 = pd.b_monomial(g, [0, 1, 0], 4)
    assert pd.convolve(b2, b1, 4).dcoeffs[(0, 0, 1)] == -3
    assert (0, 0, 1) not in pd.convolve(b1, b2, 4).dcoeffs
    assert pd.st_norm(b1, Fraction(1, 2)) == (Fraction(-1, 2), True)
    assert pd.dagger_norm(b1, 4) == (Fraction(-1, 10), True)
    d = pd.dirac(g, [1, 2, 0], 4)
    assert d.exact and d.total_mass() == 1
    e = pd.dirac(g, [0, 0, 0], 4)
    prod = pd.convolve(d, e, 4)
    assert prod.moments == d.with_cap(4).moments
    opp = pd.convolve(pd.dirac(g, [0, 1, 0], 4), pd.dirac(g, [1, 0, 0], 4), 4, opposite=True)
    assert opp.moment([0, 0, 1]) == 0


def test_functions():
    g = pd.builtin_group("heisenberg:3")
    z3 = {(0, 0, 1): Fraction(1)}
    assert pd.comul(g, z3) == {(0, 0, 1, 0, 0, 0): 1, (0, 1, 0, 1, 0, 0): -3, (0, 0, 0, 0, 0, 1): 1}
    assert pd.inv_pullback(g, z3) == {(0, 0, 1): -1, (1, 1, 0): -3}
    assert pd.right_translate(g, z3, [1, 0, 0]) == {(0, 0, 1): 1, (0, 1, 0): -3}
    assert pd.eval_at(g, z3, [4, 1, 7]) == 7
    assert pd.pair(pd.dirac(g, [4, 1, 7], 2), z3) == 7


def test_verify_report():
    report = pd.verify("heisenberg:3", "coeff-bound,polydisc", n_range=(1, 2))
    assert report["summary"]["fail"] == 0
    assert {r["id"] for r in report["records"]} == {"coeff-bound.law", "coeff-bound.inverse", "polydisc.law",
                                                    "polydisc.inverse"}
    a = pd.verify("heisenberg:3", ["pvaluation"], trials=10, seed=5)
    b = pd.verify("heisenberg:3", ["pvaluation"], trials=10, seed=5)
    assert a == b
    with pytest.raises(ValueError):
        pd.verify("heisenberg:3", ["pvaluation"])
    assert "embeddings" in pd.suite_names()
