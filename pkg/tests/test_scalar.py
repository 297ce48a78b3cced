from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from courant_tensorial.algebroid.examples import heisenberg_eps
from courant_tensorial.algebroid.scalar import (
    DepthBoundExceeded,
    DerivationRing,
    ScalarExpr,
    ScalarSyntaxError,
    parse_scalar,
)

f, g = ScalarExpr.symbol("f"), ScalarExpr.symbol("g")


def D(name, *word):
    """D_{w0} ... name with 1-based indices, as written."""
    return ScalarExpr.symbol(name, tuple(i - 1 for i in word))


heis = DerivationRing(3, heisenberg_eps)
flat = DerivationRing(3, {})


def test_arithmetic_and_canonical_form():
    e = f * g + g * f - 2 * (g * f)
    assert e == 0 and not e
    assert (f + 1) * (f - 1) == f * f - 1
    assert ScalarExpr.constant("1/2").constant_value() == Fraction(1, 2)
    assert (f * 3).coefficient([("f", ())]) == 3


def test_terms_are_fractions():
    (c,) = (f * Fraction(2, 3)).terms.values()
    assert type(c) is Fraction and c == Fraction(2, 3)


def test_printing():
    assert str(D("f", 3) * 2) == "2*D3(f)"
    assert str(-D("f", 2, 1) + Fraction(1, 2)) == "-D2(D1(f)) + 1/2"
    assert str(ScalarExpr()) == "0"


def test_parse_scalar_forms():
    assert parse_scalar("D1 f") == D("f", 1)
    assert parse_scalar("D2 D1 f") == parse_scalar("D2(D1(f))") == D("f", 2, 1)
    assert parse_scalar("1/2*f*g - 3") == f * g * Fraction(1, 2) - 3
    assert parse_scalar("-f") == -f


@pytest.mark.parametrize("text", ["D0 f", "f +", "D1", "(f", "f ) "])
def test_parse_scalar_errors(text):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(text)


def test_commuting_derivations_sort_words():
    assert flat.apply(1, D("f", 1)) == D("f", 1, 2)


def test_heisenberg_reordering():
    # D2 D1 f = D1 D2 f + [D2, D1] f = D1 D2 f - D3 f
    assert heis.apply(1, D("f", 1)) == D("f", 1, 2) - D("f", 3)
    assert heis.apply(0, D("f", 2)) == D("f", 1, 2)


def test_normal_order_agrees_with_apply():
    for a in range(3):
        for b in range(3):
            direct = heis.apply(a, heis.apply(b, f))
            word = heis.normal_order((a, b))
            assert direct == ScalarExpr({((("f", w)),): c for w, c in word.items()})


def test_product_rule():
    assert heis.apply(2, f * g) == D("f", 3) * g + f * D("g", 3)
    assert heis.apply(0, f * f) == 2 * f * D("f", 1)
    assert heis.apply(0, ScalarExpr.constant(5)) == 0


def test_depth_bound():
    ring = DerivationRing(2, {}, depth_bound=1)
    once = ring.apply(0, f)
    with pytest.raises(DepthBoundExceeded):
        ring.apply(1, once)


def test_commutator_identity_on_heisenberg():
    # [D_a, D_b] f = sum_c eps_ab^c D_c f
    for (a, b), cs in heisenberg_eps.items():
        lhs = heis.apply(a, heis.apply(b, f)) - heis.apply(b, heis.apply(a, f))
        rhs = sum((D("f", c + 1) * e for c, e in cs.items()), ScalarExpr())
        assert lhs == rhs


atoms = st.sampled_from([f, g, D("f", 1), D("g", 2), D("f", 3)])
exprs = st.lists(st.tuples(st.integers(-3, 3), atoms, atoms), max_size=4).map(
    lambda ts: sum((a * b * c for c, a, b in ts), ScalarExpr()))


@given(exprs, exprs, st.integers(0, 2))
@settings(max_examples=60)
def test_derivation_is_leibniz(p, q, a):
    assert heis.apply(a, p * q) == heis.apply(a, p) * q + p * heis.apply(a, q)


@given(exprs, exprs, exprs)
@settings(max_examples=60)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert parse_scalar(str(p)) == p
