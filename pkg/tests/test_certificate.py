import json
from fractions import Fraction

import pytest

from symideal.certificate import (
    DX_RING,
    Certificate,
    CertificateError,
    binomial_split_certificate,
    build_certificate_generic,
    build_certificate_structured,
    j_ideal,
    odd_monomial_certificate,
    phi_swap,
    symmetric_certificate,
    verify_certificate,
)
from symideal.groebner import J_RING, Ideal, is_member, symmetric_ideal
from symideal.linalg import QMatrix, anti_transpose
from symideal.poly import PolyRing, RingMismatchError, parse

d, x, y = J_RING.gens()

# the 2n = 4 quadruple, entered verbatim
PRINTED_N2 = [
    "1/5*d^2 + 3/5*d*x + 3/5*d*y + 3/2*x*y",
    "-1/5*d^2 + 1/5*d*x + 2/5*x^2 - 3/5*d*y + 9/10*x*y",
    "-1/5*d^2 - 3/5*d*x + 1/5*d*y + 9/10*x*y + 2/5*y^2",
    "1/5*d^2 - 1/5*d*x - 2/5*x^2 - 1/5*d*y + 7/10*x*y - 2/5*y^2",
]


def test_j_ideal_generators():
    assert j_ideal(2) == [d**2, (d + x) ** 2, (d + y) ** 2, (d + x + y) ** 2]
    for N in (1, 4, 5):
        gens = j_ideal(N)
        assert len(gens) == 4
        assert all(g.is_homogeneous() and g.total_degree() == N for g in gens)


def test_structured_n1():
    cert, _ = build_certificate_structured(1)
    half = Fraction(1, 2)
    assert cert.cofactors == [half, -half, -half, half]
    assert cert.target == x * y


def test_structured_n2_reproduces_printed_quadruple():
    cert, _ = build_certificate_structured(2)
    assert cert.cofactors == [parse(t, J_RING) for t in PRINTED_N2]
    assert cert.generators == j_ideal(4)


def test_printed_quadruple_verifies_verbatim():
    cert = Certificate((x * y) ** 3, list(zip(j_ideal(4), [parse(t, J_RING) for t in PRINTED_N2])))
    ok, residual = verify_certificate(cert)
    assert ok and residual.is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_structured_certificates_verify(n):
    cert, trace = build_certificate_structured(n)
    assert verify_certificate(cert)[0]
    assert len(cert.pairs) == 4
    for c in cert.cofactors:
        assert c.is_zero() or (c.is_homogeneous() and c.total_degree() == 2 * n - 2)
    # trace invariants
    assert trace.dmat == -anti_transpose(trace.cmat)
    assert trace.lambda_ @ trace.cmat + trace.dmat @ trace.lambda_ == trace.bdiag
    assert trace.cmat.is_strictly_lower_triangular()
    assert trace.dmat.is_strictly_lower_triangular()
    size = trace.lambda_.rows
    assert all(trace.lambda_[i, i] == 1 for i in range(size))
    assert all(trace.lambda_[i, j] == 0 for i in range(size) for j in range(i))
    assert trace.bdiag == QMatrix.diag([trace.bdiag[i, i] for i in range(size)])
    # a = sum a_k s^k has total degree 2n-2: deg a_k = n-1 for k < n and a_k = 0 beyond
    assert trace.a_degrees == [n - 1] * n + [-1] * (n - 1)
    assert max(k + deg for k, deg in enumerate(trace.a_degrees) if deg >= 0) == 2 * n - 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generic_agrees_with_structured(n):
    structured, _ = build_certificate_structured(n)
    generic = build_certificate_generic((x * y) ** (2 * n - 1), j_ideal(2 * n), 2 * n - 2)
    assert generic is not None and verify_certificate(generic)[0]
    # cofactors of this degree are unique, so the two constructions coincide
    assert generic.cofactors == structured.cofactors


def test_generic_examples():
    assert build_certificate_generic(x, j_ideal(2), 0) is None
    dx = DX_RING
    dd, xx = dx.gens()
    cert = build_certificate_generic(xx**3, [dd**2, (dd + xx) ** 2], 1)
    assert cert is not None and verify_certificate(cert)[0]
    with pytest.raises(ValueError):
        build_certificate_generic(x + x**2, j_ideal(2), 0)


def test_generic_no_solution_is_not_non_membership():
    # x^3 is in J(2) but not with degree-0 cofactors
    assert build_certificate_generic(x**3, j_ideal(2), 0) is None
    assert is_member(x**3, Ideal(j_ideal(2), J_RING))


def test_binomial_split_examples():
    dd, xx = DX_RING.gens()
    c1 = binomial_split_certificate(1)
    assert c1.pairs == [(dd, DX_RING.constant(-1)), (dd + xx, DX_RING.one())]
    c2 = binomial_split_certificate(2)
    assert c2.target == xx**3
    assert c2.pairs == [(dd**2, 3 * xx + 2 * dd), ((dd + xx) ** 2, xx - 2 * dd)]
    for N in range(1, 7):
        assert verify_certificate(binomial_split_certificate(N))[0]


def test_odd_monomial_examples():
    c = odd_monomial_certificate(2, 0, 0)
    assert c.target == x * y and verify_certificate(c)[0]
    c = odd_monomial_certificate(4, 1, 1)
    assert c.cofactors == build_certificate_structured(2)[0].cofactors
    c = odd_monomial_certificate(3, 0, 1)
    assert c.target == x * y**3 and verify_certificate(c)[0]
    with pytest.raises(ValueError):
        odd_monomial_certificate(3, 1, 1)


def test_symmetric_n1_is_the_four_square_identity():
    cert = symmetric_certificate(1, 3, 4)
    ring = cert.ring
    x1, x2, x3, x4 = ring.gens()
    assert cert.target == (x1 - x2) * (x3 - x4)
    rhs = ((x1 - x3) ** 2 - (x2 - x3) ** 2 - (x1 - x4) ** 2 + (x2 - x4) ** 2) * Fraction(-1, 2)
    assert cert.target == rhs
    total = ring.zero()
    for g, c in cert.pairs:
        total = total + g * c
    assert total == rhs
    assert cert.cofactors == [Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)]


def test_symmetric_n2_degree_two_cofactors():
    cert = symmetric_certificate(2, 3, 4)
    assert verify_certificate(cert)[0]
    assert all(c.is_homogeneous() and c.total_degree() == 2 for c in cert.cofactors if c)


@pytest.mark.parametrize("i,j", [(1, 3), (3, 1), (2, 3), (3, 2), (4, 2), (1, 2), (2, 1), (5, 7)])
def test_symmetric_degenerate_and_general_indices(i, j):
    for n in (1, 2):
        cert = symmetric_certificate(n, i, j)
        assert verify_certificate(cert)[0]


def test_symmetric_swapped_pair_degenerates_to_divisibility():
    cert = symmetric_certificate(1, 2, 1)
    x1, x2 = cert.ring.gens()
    assert cert.target == -(x1 - x2) ** 2
    assert cert.pairs == [((x1 - x2) ** 2, cert.ring.constant(-1))]


def test_symmetric_rejects_equal_indices():
    with pytest.raises(ValueError):
        symmetric_certificate(1, 3, 3)


def test_symmetric_generators_lie_in_the_symmetric_ideal():
    cert = symmetric_certificate(2, 3, 4)
    ideal = symmetric_ideal(4, 4)
    for g in cert.generators:
        assert is_member(g, ideal)
    assert is_member(cert.target, ideal)


def test_tampered_certificate_fails():
    cert, _ = build_certificate_structured(2)
    bad = Certificate(cert.target, [(g, c + 1 if k == 0 else c) for k, (g, c) in enumerate(cert.pairs)])
    ok, residual = verify_certificate(bad)
    assert not ok and not residual.is_zero()


def test_mixed_variable_sets_rejected():
    other = PolyRing(("x", "y"))
    cert = Certificate(x, [(other.var("x"), other.one())])
    with pytest.raises(RingMismatchError):
        verify_certificate(cert)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_symmetry(n):
    cert, _ = build_certificate_structured(n)
    swapped = phi_swap(cert)
    assert swapped.target == -((x * y) ** (2 * n - 1))
    assert swapped.generators == cert.generators
    assert verify_certificate(swapped)[0]


def test_degree_gate_for_low_powers():
    for n in (1, 2):
        ideal = symmetric_ideal(2 * n, 4)
        x1, x2 = ideal.ring.gens()[:2]
        assert not ideal.groebner_basis().normal_form((x1 - x2) ** (2 * n - 1)).is_zero()


def test_json_round_trip():
    for cert in (build_certificate_structured(2)[0], symmetric_certificate(2, 3, 4), binomial_split_certificate(3)):
        doc = json.loads(json.dumps(cert.to_dict()))
        assert doc["schema"] == 1
        back = Certificate.from_dict(doc)
        assert back.target == cert.target and back.pairs == cert.pairs
        assert verify_certificate(back)[0]


def test_from_dict_rejects_other_schema():
    doc = build_certificate_structured(1)[0].to_dict()
    doc["schema"] = 2
    with pytest.raises(ValueError):
        Certificate.from_dict(doc)


def test_structured_rejects_bad_n():
    with pytest.raises(ValueError):
        build_certificate_structured(0)
