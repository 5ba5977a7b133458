"""Explicit ideal-membership certificates for (xy)^(2n-1) and its relatives.

The structured constructor follows the dehomogenize-and-compare route: with
s = 1 + x/d and t = y/d the identity becomes

    (s-1)^(2n-1) t^(2n-1) = a + b s^(2n) + c (1+t)^(2n) + e (s+t)^(2n)

(``e`` is the last cofactor, called ``d`` in the trace to keep the matrix
names). Comparing coefficients of s^k reduces everything to the matrix
equation  Lam C + D Lam = B  with D = -C^tau, solved by solve_antidiagonal.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import binom
from .groebner import J_RING, j_generators
from .linalg import (
    InconsistentSystemError,
    QMatrix,
    anti_transpose,
    binomial_band_matrix,
    solve,
    solve_antidiagonal,
)
from .poly import PolyRing, Polynomial, RingMismatchError, monomials_of_degree, parse

log = logging.getLogger(__name__)

ST_RING = PolyRing(("s", "t"))
T_RING = PolyRing(("t",))

SCHEMA_VERSION = 1


class CertificateError(RuntimeError):
    """A constructor produced something that does not verify (internal bug)."""


@dataclass
class Certificate:
    target: Polynomial
    pairs: list[tuple[Polynomial, Polynomial]]  # (generator, cofactor)

    @property
    def ring(self) -> PolyRing:
        return self.target.ring

    @property
    def generators(self) -> list[Polynomial]:
        return [g for g, _ in self.pairs]

    @property
    def cofactors(self) -> list[Polynomial]:
        return [c for _, c in self.pairs]

    def residual(self) -> Polynomial:
        res = self.target
        for g, c in self.pairs:
            if g.ring != self.ring or c.ring != self.ring:
                raise RingMismatchError("certificate mixes variable sets")
            res = res - c * g
        return res

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "variables": list(self.ring.names),
            "target": str(self.target),
            "pairs": [{"generator": str(g), "cofactor": str(c)} for g, c in self.pairs],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Certificate":
        if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise ValueError(f"unsupported certificate schema {doc.get('schema')!r}")
        ring = PolyRing(doc["variables"])
        target = parse(doc["target"], ring)
        pairs = [(parse(p["generator"], ring), parse(p["cofactor"], ring)) for p in doc["pairs"]]
        return cls(target, pairs)


def verify_certificate(cert: Certificate) -> tuple[bool, Polynomial]:
    """(True, 0) iff target == sum(cofactor * generator) exactly."""
    res = cert.residual()
    return res.is_zero(), res


def _require_verified(cert: Certificate, what: str) -> Certificate:
    ok, res = verify_certificate(cert)
    if not ok:
        raise CertificateError(f"{what} does not verify; residual {res}")
    return cert


# --- structured constructor --------------------------------------------------------


@dataclass
class StructuredSolveTrace:
    lambda_: QMatrix
    bdiag: QMatrix
    cmat: QMatrix
    dmat: QMatrix
    b_polys: list[Polynomial] = field(default_factory=list)
    c_polys: list[Polynomial] = field(default_factory=list)
    d_polys: list[Polynomial] = field(default_factory=list)
    a_polys: list[Polynomial] = field(default_factory=list)

    @property
    def a_degrees(self) -> list[int]:
        return [a.total_degree() for a in self.a_polys]


def j_ideal(exponent: int) -> list[Polynomial]:
    """The four generators d^N, (d+x)^N, (d+y)^N, (d+x+y)^N in this fixed order."""
    return j_generators(exponent)


def _column_poly(m: QMatrix, k: int) -> Polynomial:
    """sum_j m[k+1+j, k] t^j."""
    n = m.rows
    return Polynomial(T_RING, {(j,): m[k + 1 + j, k] for j in range(n - 1 - k)})


def _st_from_t_coeffs(polys: Sequence[Polynomial]) -> Polynomial:
    """sum_k polys[k](t) s^k in Q[s, t]."""
    terms = {}
    for k, p in enumerate(polys):
        for (j,), c in p.terms.items():
            terms[(k, j)] = c
    return Polynomial(ST_RING, terms)


def build_certificate_structured(n: int) -> tuple[Certificate, StructuredSolveTrace]:
    """Certificate for (xy)^(2n-1) against the four generators of J(2n)."""
    if n < 1:
        raise ValueError("n must be positive")
    N = 2 * n
    t = T_RING.var("t")
    lam = binomial_band_matrix(N, N)
    bdiag = QMatrix.diag([(-1) ** (N - 1 - k) * binom(N - 1, N - 1 - k) for k in range(N)])
    # Lam is fixed by tau, so Lam C + D Lam = B with D = -C^tau is Lam C - (Lam C)^tau = B
    cmat = solve_antidiagonal(lam, bdiag)
    dmat = -anti_transpose(cmat)
    if lam @ cmat + dmat @ lam != bdiag:
        raise CertificateError("matrix identity Lam C + D Lam = B fails")

    c_polys = [_column_poly(cmat, k) for k in range(N - 1)]
    d_polys = [_column_poly(dmat, k) for k in range(N - 1)]

    b_polys = []
    for k in range(N - 1):
        acc = T_RING.zero()
        for m in range(k, N - 1):
            acc = acc + d_polys[m] * (t ** (m - k)) * binom(N, m - k)
        b_polys.append(-acc)

    one_plus_t_N = (1 + t) ** N
    a_polys = []
    for k in range(N):
        lhs = (t ** (N - 1)) * ((-1) ** (N - 1 - k) * binom(N - 1, k))
        rhs = T_RING.zero()
        if k < N - 1:
            rhs = rhs + c_polys[k] * one_plus_t_N
        for i in range(min(k, N - 2) + 1):
            rhs = rhs + d_polys[i] * (t ** (N - k + i)) * binom(N, k - i)
        a_k = lhs - rhs
        if a_k.total_degree() > N - 2 - k:
            raise CertificateError(f"a_{k} has degree {a_k.total_degree()} > {N - 2 - k}")
        a_polys.append(a_k)
    a_polys = a_polys[: N - 1]

    a = _st_from_t_coeffs(a_polys)
    b = _st_from_t_coeffs(b_polys)
    c = _st_from_t_coeffs(c_polys)
    d = _st_from_t_coeffs(d_polys)
    s_, t_ = ST_RING.gens()
    lhs = (s_ - 1) ** (N - 1) * t_ ** (N - 1)
    if lhs != a + b * s_**N + c * (1 + t_) ** N + d * (s_ + t_) ** N:
        raise CertificateError("dehomogenized identity fails")
    if a.total_degree() > N - 2:
        raise CertificateError(f"a has total degree {a.total_degree()} > {N - 2}")
    log.debug("structured n=%d: per-index degrees of a_k: %s", n, [p.total_degree() for p in a_polys])

    xy = PolyRing(("x", "y"))
    x, y = xy.gens()
    back = {"s": 1 + x, "t": y}
    cofactors = [p.substitute(back).homogenize("d", N - 2, J_RING) for p in (a, b, c, d)]
    xj, yj = J_RING.var("x"), J_RING.var("y")
    cert = Certificate((xj * yj) ** (N - 1), list(zip(j_ideal(N), cofactors)))
    _require_verified(cert, f"structured certificate for n={n}")
    trace = StructuredSolveTrace(lam, bdiag, cmat, dmat, b_polys, c_polys, d_polys, a_polys)
    return cert, trace


# --- generic constructor -----------------------------------------------------------


def build_certificate_generic(
    target: Polynomial, generators: Sequence[Polynomial], cofactor_degree: int
) -> Certificate | None:
    """Solve for homogeneous cofactors of the given degree by linear algebra.

    Returns None when no cofactors of that degree exist (this says nothing
    about membership with other degrees).
    """
    ring = target.ring
    if not target.is_homogeneous() or not all(g.is_homogeneous() for g in generators):
        raise ValueError("generic certificates need homogeneous target and generators")
    for g in generators:
        if g.ring != ring:
            raise RingMismatchError("target and generators must share one ring")
    if cofactor_degree < 0:
        return None
    monos = monomials_of_degree(ring.nvars, cofactor_degree)
    unknowns = list(itertools.product(range(len(generators)), monos))
    columns = []
    for gi, mono in unknowns:
        columns.append(generators[gi].mul_term(mono, 1).terms)
    rows = sorted(set(target.terms).union(*(c.keys() for c in columns)))
    row_index = {e: r for r, e in enumerate(rows)}
    matrix = [[Fraction(0)] * len(unknowns) for _ in rows]
    for col, terms in enumerate(columns):
        for e, v in terms.items():
            matrix[row_index[e]][col] = v
    rhs = [target.terms.get(e, Fraction(0)) for e in rows]
    if not rows:
        return Certificate(target, [(g, ring.zero()) for g in generators])
    try:
        sol = solve(QMatrix(matrix, cols=len(unknowns)), rhs)
    except InconsistentSystemError:
        return None
    cof_terms: list[dict] = [{} for _ in generators]
    for (gi, mono), v in zip(unknowns, sol):
        if v:
            cof_terms[gi][mono] = v
    cert = Certificate(target, [(g, Polynomial(ring, t)) for g, t in zip(generators, cof_terms)])
    return _require_verified(cert, "generic certificate")


# --- closed-form and derived certificates --------------------------------------------

DX_RING = PolyRing(("d", "x"))


def binomial_split_certificate(N: int) -> Certificate:
    """x^(2N-1) = ((d+x) - d)^(2N-1) split at k = N over [d^N, (d+x)^N]."""
    if N < 1:
        raise ValueError("N must be positive")
    d, x = DX_RING.gens()
    u = d + x
    cof_d = DX_RING.zero()
    cof_u = DX_RING.zero()
    top = 2 * N - 1
    for k in range(top + 1):
        coeff = binom(top, k) * (-1) ** (top - k)
        if k >= N:
            cof_u = cof_u + u ** (k - N) * d ** (top - k) * coeff
        else:
            cof_d = cof_d + u**k * d ** (top - k - N) * coeff
    cert = Certificate(x**top, [(d**N, cof_d), (u**N, cof_u)])
    return _require_verified(cert, f"binomial split certificate for N={N}")


def odd_monomial_certificate(N: int, i: int, j: int) -> Certificate:
    """Certificate for x^(2i+1) y^(2j+1) against J(N), with i + j = N - 2."""
    if N < 2 or i < 0 or j < 0 or i + j != N - 2:
        raise ValueError(f"need i, j >= 0 with i + j = N - 2 (got N={N}, i={i}, j={j})")
    x, y = J_RING.var("x"), J_RING.var("y")
    target = x ** (2 * i + 1) * y ** (2 * j + 1)
    cert = build_certificate_generic(target, j_ideal(N), N - 2)
    if cert is None:
        raise CertificateError(f"no degree-{N - 2} cofactors for x^{2 * i + 1} y^{2 * j + 1} in J({N})")
    return cert


def symmetric_ring(i: int, j: int) -> PolyRing:
    idx = sorted({1, 2, i, j})
    return PolyRing([f"x{k}" for k in idx])


def symmetric_certificate(n: int, i: int, j: int) -> Certificate:
    """Certificate that (x1-x2)^(2n-1) (x_i-x_j)^(2n-1) lies in I(2n).

    Generators are [(x1-x_i)^2n, (x1-x_j)^2n, (x2-x_i)^2n, (x2-x_j)^2n]; some
    vanish when {i, j} meets {1, 2}.
    """
    if i == j:
        raise ValueError("i and j must differ")
    if i < 1 or j < 1:
        raise ValueError("indices start at 1")
    if n < 1:
        raise ValueError("n must be positive")
    ring = symmetric_ring(i, j)
    v = {k: ring.var(f"x{k}") for k in {1, 2, i, j}}
    target = (v[1] - v[2]) ** (2 * n - 1) * (v[i] - v[j]) ** (2 * n - 1)
    if {i, j} == {1, 2}:
        sign = 1 if (i, j) == (1, 2) else -1
        base = v[1] - v[2]
        cert = Certificate(target, [(base ** (2 * n), base ** (2 * n - 2) * sign)])
        return _require_verified(cert, "degenerate symmetric certificate")
    structured, _ = build_certificate_structured(n)
    images = {"x": v[1] - v[2], "y": -(v[i] - v[j]), "d": v[2] - v[j]}
    # generator order in J: d, d+x, d+y, d+x+y  ->  x2-xj, x1-xj, x2-xi, x1-xi
    f_d, f_dx, f_dy, f_dxy = (-c.substitute(images) for c in structured.cofactors)
    pairs = [
        ((v[1] - v[i]) ** (2 * n), f_dxy),
        ((v[1] - v[j]) ** (2 * n), f_dx),
        ((v[2] - v[i]) ** (2 * n), f_dy),
        ((v[2] - v[j]) ** (2 * n), f_d),
    ]
    cert = Certificate(target, pairs)
    return _require_verified(cert, f"symmetric certificate n={n}, sigma=(1->{i}, 2->{j})")


def phi_swap(cert: Certificate) -> Certificate:
    """Apply d -> d+x, x -> -x, y -> y to a J-certificate and restore generator order.

    The map swaps d <-> d+x and d+y <-> d+x+y, so the result certifies the
    image target against the same generator list.
    """
    if cert.ring != J_RING or len(cert.pairs) != 4:
        raise ValueError("phi_swap expects a four-generator certificate over Q[d, x, y]")
    d, x, y = J_RING.gens()
    images = {"d": d + x, "x": -x, "y": y}
    cof = [c.substitute(images) for c in cert.cofactors]
    gens = [g for g, _ in cert.pairs]
    permuted = [(gens[0], cof[1]), (gens[1], cof[0]), (gens[2], cof[3]), (gens[3], cof[2])]
    return Certificate(cert.target.substitute(images), permuted)
