import random
import threading

import pytest
from hypothesis import given, settings, strategies as st

from oracles import homogeneous_span_member
from strategies import XYZ, homogeneous_polynomials, polynomials
from symideal.groebner import (
    J_RING,
    XY_RING,
    GroebnerBasis,
    Ideal,
    build_Ird,
    buchberger,
    conjecture35_report,
    conjecture41_check,
    conjecture41_target,
    conjectured_contraction,
    eliminate,
    ideal_contains,
    ideal_equals,
    is_member,
    j_ideal,
    normal_form,
    symmetric_ideal,
)
from symideal.poly import GREVLEX, LEX, MonomialOrder, PolyRing, RingMismatchError, parse

d, x, y = J_RING.gens()


def basis_strings(gb):
    return [str(g) for g in gb.elements]


def test_buchberger_examples():
    xy = PolyRing(("x", "y"), "lex")
    gb = buchberger(Ideal([parse("x^2", xy), parse("y", xy)]), LEX)
    assert sorted(basis_strings(gb)) == ["x^2", "y"]
    assert basis_strings(buchberger(Ideal([parse("3*x", xy)]))) == ["x"]


@given(polynomials())
def test_principal_ideal_basis_is_normalized_generator(p):
    if p.is_zero():
        return
    gb = buchberger(Ideal([p]))
    assert len(gb) == 1
    assert gb.elements[0].terms == p.content_normalized().with_order(GREVLEX).terms


def test_normal_form_examples():
    gb = buchberger(j_ideal(2))
    assert normal_form(x * y, gb).is_zero()
    assert not normal_form(J_RING.one(), gb).is_zero()
    assert not normal_form(x, gb).is_zero()
    for N in range(1, 5):
        assert not normal_form(J_RING.one(), buchberger(j_ideal(N))).is_zero()


def test_normal_form_ring_mismatch():
    gb = buchberger(j_ideal(2))
    with pytest.raises(RingMismatchError):
        gb.normal_form(XY_RING.var("x"))
    with pytest.raises(RingMismatchError):
        is_member(XY_RING.var("x"), j_ideal(2))


def test_is_member_examples():
    assert is_member((x * y) ** 3, j_ideal(4))
    assert is_member(x**3, j_ideal(2))
    sym = symmetric_ideal(4, 4)
    x1, x2 = sym.ring.gens()[:2]
    assert not is_member((x1 - x2) ** 3, sym)


def test_is_member_non_homogeneous():
    ideal = Ideal([parse("x^2 - 1", XYZ), parse("y - x", XYZ)])
    assert is_member(parse("y^2 - 1", XYZ), ideal)
    assert not is_member(XYZ.one(), ideal)
    assert is_member(XYZ.one(), Ideal([parse("x", XYZ), parse("x + 1", XYZ)]))


def test_reduced_basis_invariants():
    for ideal in (j_ideal(3), build_Ird(2, 3), build_Ird(3, 2)):
        gb = buchberger(ideal)
        lms = gb.leading_monomials()
        for g in gb.elements:
            assert g.leading_coefficient() == 1
        for i, g in enumerate(gb.elements):
            for j, lm in enumerate(lms):
                if i != j:
                    assert not any(all(a <= b for a, b in zip(lm, e)) for e in g.terms)
        keys = [GREVLEX.key(m) for m in lms]
        assert keys == sorted(keys)
        assert gb.satisfies_buchberger_criterion()


@pytest.mark.parametrize("order", [GREVLEX, LEX])
def test_reduced_basis_canonical_under_generator_shuffle(order):
    rng = random.Random(7)
    for ideal in (j_ideal(3), build_Ird(2, 2), build_Ird(3, 2), symmetric_ideal(2, 4)):
        ref = basis_strings(buchberger(ideal, order))
        for _ in range(4):
            gens = list(ideal.generators)
            rng.shuffle(gens)
            # scaled and recombined generators span the same ideal
            gens[0] = gens[0] * 3 + gens[-1]
            assert basis_strings(buchberger(Ideal(gens, ideal.ring), order)) == ref


@settings(max_examples=40, deadline=None)
@given(st.lists(homogeneous_polynomials(degree=2, max_terms=3), min_size=1, max_size=3),
       homogeneous_polynomials(degree=3, max_terms=4))
def test_membership_agrees_with_linear_algebra_oracle(gens, p):
    gens = [g for g in gens if g]
    if not gens:
        return
    ideal = Ideal(gens, XYZ)
    assert is_member(p, ideal) == homogeneous_span_member(p, gens)


@settings(max_examples=30, deadline=None)
@given(st.lists(polynomials(max_degree=2, max_terms=3), min_size=1, max_size=3), polynomials(max_degree=3))
def test_division_quotients_certify_remainder(gens, p):
    gens = [g for g in gens if g]
    if not gens:
        return
    gb = buchberger(Ideal(gens, XYZ))
    quotients, rem = gb.divide(p)
    total = rem
    for q, g in zip(quotients, gb.elements):
        total = total + q * g
    assert total.terms == p.terms
    assert rem == gb.normal_form(p)
    # p - nf(p) is a member
    assert gb.normal_form(p - rem).is_zero()


def test_truncated_basis_membership_matches_full_basis():
    ideal = build_Ird(3, 2)
    full = buchberger(ideal)
    for text in ("t1*t2", "t1*t2*t3", "t0^3", "t1^2*t2 - t3^3"):
        p = parse(text, ideal.ring)
        assert is_member(p, ideal) == full.normal_form(p).is_zero()


def test_truncated_basis_refuses_higher_degree():
    gb = j_ideal(2).groebner_basis(degree_bound=2)
    with pytest.raises(ValueError):
        gb.contains(x**3)


def test_eliminate_examples():
    contraction = eliminate(j_ideal(2), ["d"])
    assert contraction.ring.names == ("x", "y")
    assert ideal_equals(contraction, conjectured_contraction(2))
    dx = PolyRing(("d", "x"))
    assert eliminate(Ideal([dx.var("d")]), ["d"]).generators == []
    ideal = build_Ird(2, 2)
    assert ideal_equals(eliminate(ideal, []), ideal)


def test_elimination_soundness():
    ideal = j_ideal(3)
    for g in eliminate(ideal, ["d"]).generators:
        assert "d" not in g.variables_used()
        assert is_member(g.embed(J_RING), ideal)


def test_ideal_equals_examples():
    xy = XY_RING
    a, b = xy.gens()
    assert ideal_equals(Ideal([a, b]), Ideal([a + b, b]))
    assert not ideal_equals(Ideal([a**2]), Ideal([a]))
    assert ideal_contains(Ideal([a]), Ideal([a**2]))
    assert not ideal_contains(Ideal([a**2]), Ideal([a]))
    with pytest.raises(RingMismatchError):
        ideal_equals(Ideal([a]), j_ideal(2))


@pytest.mark.parametrize("N", [2, 3])
def test_conjecture35_report(N):
    report = conjecture35_report(N)
    assert report.superset_holds
    # every generator of the conjectured ideal is a member of J(N)
    for g in report.conjectured:
        assert is_member(g.embed(J_RING), j_ideal(N))
    assert report.equality_holds
    assert report.witness is None


def test_build_Ird_shape():
    r1 = build_Ird(1, 3)
    t0, t1 = r1.ring.gens()
    assert r1.generators == [t0**3, (t0 + t1) ** 3]
    for r in (1, 2, 3):
        ideal = build_Ird(r, 2)
        assert len(ideal.generators) == 2**r
        assert all(g.is_homogeneous() and g.total_degree() == 2 for g in ideal.generators)
    # r = 2 is J after renaming t0, t1, t2 -> d, x, y
    renamed = [g.substitute({"t0": d, "t1": x, "t2": y}) for g in build_Ird(2, 4).generators]
    assert ideal_equals(Ideal(renamed, J_RING), j_ideal(4))


@pytest.mark.parametrize("r,n", [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1)])
def test_conjecture41_small_cases(r, n):
    assert conjecture41_check(r, n)


def test_conjecture41_target_shape():
    assert str(conjecture41_target(3, 2)) == "t1^3*t2^3*t3^3"


def test_low_degree_elements_are_not_members():
    # a homogeneous ideal generated in degree N has no nonzero element of degree N-1
    for N in (2, 3, 4):
        ideal = symmetric_ideal(N, 4)
        x1, x2, x3, _ = ideal.ring.gens()
        gb = ideal.groebner_basis()
        assert not gb.normal_form((x1 - x2) ** (N - 1)).is_zero()
        assert not gb.normal_form(x1 * x2 ** (N - 2) - x3 ** (N - 1)).is_zero()


def test_concurrent_basis_cache_is_consistent():
    ideal = build_Ird(2, 3)
    results = []

    def work():
        results.append(basis_strings(ideal.groebner_basis()))

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    assert ideal.groebner_basis() is ideal.groebner_basis()


def test_block_order_basis_satisfies_criterion():
    ring = PolyRing(("d", "x", "y"), MonomialOrder("block", 1))
    ideal = Ideal([g.embed(ring) for g in j_ideal(3).generators], ring)
    gb = buchberger(ideal, ring.order)
    assert gb.satisfies_buchberger_criterion()
