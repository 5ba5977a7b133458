from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import XYZ, homogeneous_polynomials, polynomials
from symideal.poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    ParseError,
    PolyError,
    PolyRing,
    RingMismatchError,
    monomials_of_degree,
    parse,
)

R = PolyRing(("d", "x", "y"))
d, x, y = R.gens()


def test_arithmetic_examples():
    xy = PolyRing(("x", "y"))
    a, b = xy.gens()
    assert (a + b) ** 2 == a**2 + 2 * a * b + b**2
    assert (a + b) * xy.zero() == 0
    assert ((d + x) ** 4).coefficient((2, 2, 0)) == 6


def test_ring_mismatch():
    other = PolyRing(("x", "y"))
    with pytest.raises(RingMismatchError):
        x + other.var("x")
    with pytest.raises(RingMismatchError):
        x * other.var("y")


def test_duplicate_names_rejected():
    with pytest.raises(PolyError):
        PolyRing(("x", "x"))


def test_substitute_examples():
    x4 = PolyRing(("x1", "x2", "x3", "x4"))
    x1, x2, x3, x4_ = x4.gens()
    images = {"x": x1 - x2, "y": -(x3 - x4_), "d": x2 - x4_}
    assert (d + x + y).substitute(images) == x1 - x3
    p = d**2 * x - 3 * y + 1
    assert p.substitute({"d": d, "x": x, "y": y}) == p
    assert (d + x).substitute({"d": d + x, "x": -x, "y": y}) == d


def test_substitute_requires_every_variable():
    with pytest.raises(PolyError):
        (d + x).substitute({"d": d, "x": x})


def test_dehomogenize_examples():
    assert str((d**2 + d * x).dehomogenize("d")) == "x + 1"
    assert (d + x + y).__pow__(2).dehomogenize("d") == parse("(1+x+y)^2", PolyRing(("x", "y")))
    with pytest.raises(PolyError):
        (d + x**2).dehomogenize("d")


def test_homogenize_examples():
    xy = PolyRing(("x", "y"))
    assert parse("1 + x", xy).homogenize("d", 2, R) == d**2 + d * x
    assert xy.zero().homogenize("d", 3, R) == R.zero()
    with pytest.raises(PolyError):
        parse("x^3", xy).homogenize("d", 2, R)
    f_delta = parse("1/5*d^2 + 3/5*d*x + 3/5*d*y + 3/2*x*y", R)
    assert f_delta.dehomogenize("d").homogenize("d", 2, R) == f_delta


def test_homogenize_prepends_missing_pivot():
    p = parse("1 + x*y", PolyRing(("x", "y")))
    h = p.homogenize("d", 2)
    assert h.ring.names == ("d", "x", "y")
    assert h.is_homogeneous() and h.total_degree() == 2


def test_coefficient_of_power_examples():
    st_ring = PolyRing(("s", "t"))
    s, t = st_ring.gens()
    assert ((s - 1) * t).coefficient_of_power("s", 1) == PolyRing(("t",)).var("t")
    assert ((s + t) ** 4).coefficient_of_power("s", 2) == 6 * PolyRing(("t",)).var("t") ** 2


@given(polynomials())
def test_coefficient_of_power_reconstructs(p):
    total = XYZ.zero()
    for k in range(p.degree_in("x") + 1):
        total = total + XYZ.var("x") ** k * p.coefficient_of_power("x", k).embed(XYZ)
    assert total == p


def test_parse_examples():
    text = "3/5*d^2*x - 2*x*y"
    assert str(parse(text, R)) == text
    assert parse("x^0") == 1
    assert parse("(x+y)^2 - x^2 - y^2 - 2*x*y").is_zero()
    assert parse("-x", PolyRing(("x",))) == -PolyRing(("x",)).var("x")
    assert parse("x12*t0").ring.names == ("x12", "t0")


@pytest.mark.parametrize("text,pos", [("x +", 3), ("x ** 2", 3), ("(x", 2), ("x y", 2), ("2/0", None)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(PolyError) as info:
        parse(text)
    if pos is not None:
        assert isinstance(info.value, ParseError)
        assert info.value.position == pos


def test_parse_unknown_variable_with_imposed_ring():
    with pytest.raises(ParseError):
        parse("x + w", R)


@given(polynomials())
def test_print_parse_round_trip(p):
    assert parse(str(p), XYZ) == p


def test_print_descending_order():
    p = parse("x + x^2*y + 1 + y^3", PolyRing(("x", "y")))
    assert str(p) == "x^2*y + y^3 + x + 1"
    assert str(p.with_order(LEX)) == "x^2*y + x + y^3 + 1"


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == 0


@given(homogeneous_polynomials(), homogeneous_polynomials())
def test_homogeneity_and_degree_additivity(p, q):
    prod = p * q
    assert prod.is_homogeneous()
    if p and q:
        assert prod.total_degree() == p.total_degree() + q.total_degree()


@given(polynomials(max_degree=2), polynomials(max_degree=2))
def test_substitute_is_a_homomorphism(p, q):
    uv = PolyRing(("u", "v"))
    images = {"x": parse("u - v", uv), "y": parse("u*v + 2", uv), "z": uv.constant(3)}
    assert (p * q).substitute(images) == p.substitute(images) * q.substitute(images)
    assert (p + q).substitute(images) == p.substitute(images) + q.substitute(images)


@given(homogeneous_polynomials())
def test_dehomogenize_homogenize_round_trip(p):
    if p.is_zero():
        return
    back = p.dehomogenize("x").homogenize("x", p.total_degree(), XYZ)
    assert back == p


@pytest.mark.parametrize("order", [LEX, GREVLEX, MonomialOrder("block", 1), MonomialOrder("block", 2)])
def test_orders_are_total_and_multiplicative(order):
    monos = [m for deg in range(4) for m in monomials_of_degree(3, deg)]
    keys = [order.key(m) for m in monos]
    assert len(set(keys)) == len(keys)
    one = (0, 0, 0)
    assert all(order.key(one) <= order.key(m) for m in monos)
    for a in monos[:10]:
        for b in monos[:10]:
            for c in monos[:10]:
                ac = tuple(i + j for i, j in zip(a, c))
                bc = tuple(i + j for i, j in zip(b, c))
                if order.key(a) < order.key(b):
                    assert order.key(ac) < order.key(bc)


def test_block_order_eliminates_first_block():
    order = MonomialOrder("block", 1)
    # any monomial with the first variable beats any monomial without it
    assert order.key((1, 0, 0)) > order.key((0, 5, 5))


def test_grevlex_breaks_ties_by_last_variable():
    assert GREVLEX.key((1, 0, 1)) < GREVLEX.key((0, 2, 0))
    assert GREVLEX.key((2, 0, 0)) > GREVLEX.key((0, 2, 0))


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(3, 4)) == 15
    assert monomials_of_degree(2, 0) == [(0, 0)]


def test_leading_term_and_queries():
    p = parse("2*x^2*y - 3*d^3 + x", R)
    assert p.leading_term() == ((3, 0, 0), Fraction(-3))
    assert p.total_degree() == 3
    assert p.degree_in("x") == 2
    assert not p.is_homogeneous()
    assert sorted(p.homogeneous_components()) == [1, 3]
    assert p.variables_used() == {"d", "x", "y"}
    assert p.content_normalized().leading_coefficient() == 1
    with pytest.raises(PolyError):
        R.zero().leading_term()


def test_pow_rejects_negative_exponent():
    with pytest.raises(PolyError):
        x ** -1
