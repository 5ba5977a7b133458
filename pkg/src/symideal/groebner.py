"""Buchberger's algorithm over Q: reduced bases, normal forms, membership,
elimination, and the conjecture harnesses built on them."""

from __future__ import annotations

import heapq
import itertools
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import GREVLEX, MonomialOrder, PolyRing, Polynomial, RingMismatchError, as_order

# --- raw helpers on {exponents: Fraction} dicts ---------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _KeyCache:
    def __init__(self, order: MonomialOrder):
        self._key = order.key
        self._cache: dict = {}

    def __call__(self, e):
        k = self._cache.get(e)
        if k is None:
            k = self._cache[e] = self._key(e)
        return k


def _leading(p: dict, key) -> tuple:
    return max(p, key=key)


def _sub_multiple(p: dict, g: dict, shift: tuple, factor: Fraction):
    """p -= factor * x^shift * g, in place."""
    for e, v in g.items():
        e2 = tuple(a + b for a, b in zip(e, shift))
        s = p.get(e2, 0) - factor * v
        if s:
            p[e2] = s
        else:
            p.pop(e2, None)


def _monic(p: dict, key) -> dict:
    lc = p[_leading(p, key)]
    if lc == 1:
        return p
    inv = 1 / lc
    return {e: c * inv for e, c in p.items()}


def _reduce(p: dict, basis: Sequence[tuple[tuple, dict]], key, quotients: list | None = None) -> dict:
    """Full reduction of p by basis [(lm, g)] with monic g. Returns the remainder."""
    p = dict(p)
    rem: dict = {}
    while p:
        m = _leading(p, key)
        c = p[m]
        for idx, (lm, g) in enumerate(basis):
            if _divides(lm, m):
                shift = _sub(m, lm)
                factor = c / g[lm]
                _sub_multiple(p, g, shift, factor)
                if quotients is not None:
                    q = quotients[idx]
                    q[shift] = q.get(shift, 0) + factor
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: tuple[tuple, dict], g: tuple[tuple, dict]) -> dict:
    lf, pf = f
    lg, pg = g
    l = _lcm(lf, lg)
    out: dict = {}
    _sub_multiple(out, pf, _sub(l, lf), Fraction(-1) / pf[lf])
    _sub_multiple(out, pg, _sub(l, lg), Fraction(1) / pg[lg])
    return out


def _buchberger_raw(gens: list[dict], key, degree_bound: int | None = None) -> list[tuple[tuple, dict]]:
    """Groebner basis (not yet reduced) of the dict polynomials in gens."""
    basis: list[tuple[tuple, dict]] = []
    pairs: list = []
    done: set = set()
    counter = itertools.count()

    def add(h: dict):
        h = _monic(h, key)
        lm = _leading(h, key)
        j = len(basis)
        basis.append((lm, h))
        for i in range(j):
            l = _lcm(basis[i][0], lm)
            if degree_bound is not None and sum(l) > degree_bound:
                continue
            heapq.heappush(pairs, (sum(l), key(l), next(counter), i, j))

    for g in sorted((g for g in gens if g), key=lambda g: key(_leading(g, key))):
        if degree_bound is not None and max(sum(e) for e in g) > degree_bound:
            continue
        r = _reduce(g, basis, key)
        if r:
            add(r)

    while pairs:
        _, _, _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        li, lj = basis[i][0], basis[j][0]
        if _coprime(li, lj):
            continue
        l = _lcm(li, lj)
        # chain criterion: some k with lm_k | lcm and both (i,k), (j,k) already treated
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], l) and (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        h = _reduce(_spoly(basis[i], basis[j]), basis, key)
        if h:
            add(h)
    return basis


def _reduce_basis(basis: list[tuple[tuple, dict]], key) -> list[tuple[tuple, dict]]:
    """Minimal, inter-reduced, monic, sorted ascending by leading monomial."""
    minimal = []
    lms = [lm for lm, _ in basis]
    for idx, (lm, g) in enumerate(basis):
        dominated = False
        for jdx, other in enumerate(lms):
            if jdx == idx:
                continue
            if _divides(other, lm) and (other != lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        tail = dict(g)
        del tail[lm]
        r = _reduce(tail, others, key)
        r[lm] = g[lm]
        reduced.append((lm, _monic(r, key)))
    reduced.sort(key=lambda t: key(t[0]))
    return reduced


# --- public types ----------------------------------------------------------------


@dataclass
class GroebnerBasis:
    elements: list[Polynomial]
    order: MonomialOrder
    ring: PolyRing
    reduced: bool = True
    degree_bound: int | None = None

    def __post_init__(self):
        self._key = _KeyCache(self.order)
        self._raw = [(p.leading_monomial(), dict(p.terms)) for p in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list[tuple]:
        return [lm for lm, _ in self._raw]

    def _check(self, p: Polynomial):
        if p.ring != self.ring:
            raise RingMismatchError(f"polynomial ring {p.ring.names} differs from basis ring {self.ring.names}")

    def normal_form(self, p: Polynomial) -> Polynomial:
        self._check(p)
        return Polynomial(self.ring.with_order(self.order), _reduce(p.terms, self._raw, self._key))

    def divide(self, p: Polynomial) -> tuple[list[Polynomial], Polynomial]:
        """Quotients q and remainder r with p = sum(q_i * g_i) + r."""
        self._check(p)
        quotients: list[dict] = [{} for _ in self._raw]
        rem = _reduce(p.terms, self._raw, self._key, quotients)
        ring = self.ring.with_order(self.order)
        return [Polynomial(ring, q) for q in quotients], Polynomial(ring, rem)

    def contains(self, p: Polynomial) -> bool:
        if self.degree_bound is not None and p.total_degree() > self.degree_bound:
            raise ValueError("polynomial degree exceeds the truncation bound of this basis")
        return self.normal_form(p).is_zero()

    def satisfies_buchberger_criterion(self) -> bool:
        for f, g in itertools.combinations(self._raw, 2):
            if self.degree_bound is not None and sum(_lcm(f[0], g[0])) > self.degree_bound:
                continue
            if _reduce(_spoly(f, g), self._raw, self._key):
                return False
        return True


class Ideal:
    """Ideal of Q[ring] given by generators. Reduced bases are cached per order."""

    def __init__(self, generators: Iterable[Polynomial], ring: PolyRing | None = None):
        generators = list(generators)
        if ring is None:
            if not generators:
                raise ValueError("an ideal with no generators needs an explicit ring")
            ring = generators[0].ring
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("ideal generators must share one ring")
        self.ring = ring
        self.generators = [g for g in generators if not g.is_zero()]
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal([{', '.join(str(g) for g in self.generators)}], {list(self.ring.names)})"

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner_basis(self, order=GREVLEX, degree_bound: int | None = None) -> GroebnerBasis:
        order = as_order(order)
        cache_key = (order, degree_bound)
        with self._lock:
            hit = self._cache.get(cache_key)
        if hit is not None:
            return hit
        if degree_bound is None:
            gb = buchberger(self, order)
        else:
            gb = _truncated_basis(self, order, degree_bound)
        with self._lock:
            self._cache.setdefault(cache_key, gb)
        return gb


def buchberger(ideal: Ideal, order=GREVLEX) -> GroebnerBasis:
    """The reduced Groebner basis of ideal under order."""
    order = as_order(order)
    key = _KeyCache(order)
    raw = _buchberger_raw([dict(g.terms) for g in ideal.generators], key)
    red = _reduce_basis(raw, key)
    ring = ideal.ring.with_order(order)
    return GroebnerBasis([Polynomial(ring, g) for _, g in red], order, ring, reduced=True)


def _truncated_basis(ideal: Ideal, order: MonomialOrder, degree_bound: int) -> GroebnerBasis:
    if not ideal.is_homogeneous():
        raise ValueError("degree-truncated bases need homogeneous generators")
    key = _KeyCache(order)
    raw = _buchberger_raw([dict(g.terms) for g in ideal.generators], key, degree_bound)
    red = _reduce_basis(raw, key)
    ring = ideal.ring.with_order(order)
    return GroebnerBasis([Polynomial(ring, g) for _, g in red], order, ring, reduced=True, degree_bound=degree_bound)


def normal_form(p: Polynomial, g: GroebnerBasis) -> Polynomial:
    return g.normal_form(p)


def is_member(p: Polynomial, ideal: Ideal, order=GREVLEX) -> bool:
    """Ideal membership by normal form.

    For homogeneous p and a homogeneous ideal only the basis up to deg p is
    needed, so a degree-truncated basis is used.
    """
    if p.ring != ideal.ring:
        raise RingMismatchError(f"polynomial ring {p.ring.names} differs from ideal ring {ideal.ring.names}")
    if p.is_zero():
        return True
    if not ideal.generators:
        return False
    if p.is_homogeneous() and ideal.is_homogeneous():
        gb = ideal.groebner_basis(order, degree_bound=p.total_degree())
    else:
        gb = ideal.groebner_basis(order)
    return gb.contains(p)


def eliminate(ideal: Ideal, drop: Iterable[str]) -> Ideal:
    """Generators of ideal intersected with Q[remaining variables]."""
    drop = list(dict.fromkeys(drop))
    for name in drop:
        ideal.ring.index(name)
    keep = [n for n in ideal.ring.names if n not in drop]
    target = PolyRing(keep)
    if not drop:
        return Ideal(buchberger(ideal).elements, ideal.ring)
    work = PolyRing(drop + keep, MonomialOrder("block", len(drop)))
    gb = buchberger(Ideal([g.embed(work) for g in ideal.generators], work), work.order)
    dropped = set(drop)
    kept = [g for g in gb.elements if not (g.variables_used() & dropped)]
    return Ideal([g.embed(target) for g in kept], target)


def ideal_equals(a: Ideal, b: Ideal, order=GREVLEX) -> bool:
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")
    ga = [p.terms for p in a.groebner_basis(order).elements]
    gb = [p.terms for p in b.groebner_basis(order).elements]
    return ga == gb


def ideal_contains(a: Ideal, b: Ideal) -> bool:
    """True when every generator of b lies in a."""
    return all(is_member(g, a) for g in b.generators)


# --- the ideals studied ------------------------------------------------------------

J_RING = PolyRing(("d", "x", "y"))
XY_RING = PolyRing(("x", "y"))


def j_generators(exponent: int, ring: PolyRing = J_RING) -> list[Polynomial]:
    """[d^N, (d+x)^N, (d+y)^N, (d+x+y)^N] in Q[d, x, y]."""
    if exponent < 1:
        raise ValueError("exponent must be positive")
    d, x, y = (ring.var(n) for n in ring.names)
    return [d**exponent, (d + x) ** exponent, (d + y) ** exponent, (d + x + y) ** exponent]


def j_ideal(exponent: int) -> Ideal:
    return Ideal(j_generators(exponent), J_RING)


def ird_ring(r: int) -> PolyRing:
    return PolyRing([f"t{i}" for i in range(r + 1)])


def build_Ird(r: int, d: int) -> Ideal:
    """<(t0 + sum_{i in S} t_i)^d : S subset of [r]>, subsets in binary counting order."""
    if r < 1 or d < 1:
        raise ValueError("r and d must be positive")
    ring = ird_ring(r)
    t = ring.gens()
    gens = []
    for mask in range(2**r):
        lin = t[0]
        for i in range(1, r + 1):
            if mask >> (i - 1) & 1:
                lin = lin + t[i]
        gens.append(lin**d)
    return Ideal(gens, ring)


def symmetric_ideal(exponent: int, nvars: int) -> Ideal:
    """<(x_a - x_b)^N : a < b <= nvars> in Q[x1..x_nvars]."""
    ring = PolyRing([f"x{i}" for i in range(1, nvars + 1)])
    xs = ring.gens()
    return Ideal([(xs[a] - xs[b]) ** exponent for a, b in itertools.combinations(range(nvars), 2)], ring)


def conjectured_contraction(N: int) -> Ideal:
    """<x^(2N-1), y^(2N-1), x^(2i+1) y^(2j+1) : i + j = N - 2> in Q[x, y]."""
    x, y = XY_RING.gens()
    gens = [x ** (2 * N - 1), y ** (2 * N - 1)]
    for i in range(N - 1):
        j = N - 2 - i
        gens.append(x ** (2 * i + 1) * y ** (2 * j + 1))
    return Ideal(gens, XY_RING)


@dataclass
class ContractionReport:
    N: int
    superset_holds: bool
    equality_holds: bool
    witness: Polynomial | None
    contraction: list[Polynomial] = field(default_factory=list)
    conjectured: list[Polynomial] = field(default_factory=list)
    seconds: float = 0.0


def conjecture35_report(N: int) -> ContractionReport:
    if N < 2:
        raise ValueError("N must be at least 2")
    start = time.perf_counter()
    J = j_ideal(N)
    conj = conjectured_contraction(N)
    superset = all(is_member(g.embed(J_RING), J) for g in conj.generators)
    contraction = eliminate(J, ["d"])
    witness = None
    for g in contraction.generators:
        if not is_member(g, conj):
            witness = g
            break
    return ContractionReport(
        N=N,
        superset_holds=superset,
        equality_holds=superset and witness is None,
        witness=witness,
        contraction=contraction.generators,
        conjectured=conj.generators,
        seconds=time.perf_counter() - start,
    )


def conjecture41_target(r: int, n: int) -> Polynomial:
    ring = ird_ring(r)
    prod = ring.one()
    for v in ring.gens()[1:]:
        prod = prod * v
    return prod ** (2 * n - 1)


def conjecture41_check(r: int, n: int) -> bool:
    """Is (t1 ... tr)^(2n-1) in I_r^(nr)?"""
    return is_member(conjecture41_target(r, n), build_Ird(r, n * r))
