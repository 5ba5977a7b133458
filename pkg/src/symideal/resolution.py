"""Minimal graded free resolutions of R/I and their Betti tables.

A Schreyer frame is built from a Groebner basis of I: each level is the set
of S-pair syzygies of the previous one, which is again a Groebner basis for
the induced order. The frame is then minimized by cancelling unit entries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .groebner import GREVLEX, Ideal, _divides, _KeyCache, _lcm, _sub, buchberger
from .poly import PolyRing, Polynomial, as_order, monomials_of_degree

Vector = dict  # {(component, exponents): Fraction}


# --- Schreyer frame -----------------------------------------------------------------


class _Level:
    """Basis elements of F_L given as vectors in F_(L-1), plus the induced term order."""

    def __init__(self, elements: list[Vector], prev_key, ring_nvars: int):
        self.elements = elements
        self.prev_key = prev_key
        self.nvars = ring_nvars
        self.leads = [max(v, key=prev_key) for v in elements]
        self._cache: dict = {}

    def key(self, term: tuple):
        """Schreyer order on F_L: m e_i ~ (prev order of m * in(g_i), then smaller i is larger)."""
        k = self._cache.get(term)
        if k is None:
            comp, mono = term
            lcomp, lmono = self.leads[comp]
            k = (self.prev_key((lcomp, tuple(a + b for a, b in zip(mono, lmono)))), -comp)
            self._cache[term] = k
        return k


def _reduce_vector(v: Vector, level: _Level) -> tuple[Vector, dict]:
    """Divide v (in F_(L-1)) by the elements of level. Returns (remainder, quotients).

    quotients maps (element index, monomial) -> coefficient.
    """
    v = dict(v)
    rem: Vector = {}
    quot: dict = {}
    key = level.prev_key
    while v:
        term = max(v, key=key)
        comp, mono = term
        c = v[term]
        for idx, (lc, lm) in enumerate(level.leads):
            if lc == comp and _divides(lm, mono):
                g = level.elements[idx]
                shift = _sub(mono, lm)
                f = c / g[(lc, lm)]
                for (gc, gm), gv in g.items():
                    t2 = (gc, tuple(a + b for a, b in zip(gm, shift)))
                    s = v.get(t2, 0) - f * gv
                    if s:
                        v[t2] = s
                    else:
                        v.pop(t2, None)
                quot[(idx, shift)] = quot.get((idx, shift), 0) + f
                break
        else:
            rem[term] = c
            del v[term]
    return rem, quot


def _schreyer_sort(elements: list[Vector], key, var: int, nvars: int) -> list[Vector]:
    """Within each lead component, larger exponent of variable ``var`` first."""
    if var >= nvars:
        return elements

    def sort_key(v):
        comp, mono = max(v, key=key)
        return (comp, -mono[var])

    return sorted(elements, key=sort_key)


def schreyer_syzygies(level: _Level) -> list[Vector]:
    """Generators of the syzygies of level.elements, forming a Groebner basis for level.key.

    Only syzygies whose lead monomial is minimal within its component are kept.
    """
    candidates: dict[int, list[tuple[tuple, Vector]]] = {}
    n = len(level.elements)
    for i in range(n):
        ci, mi = level.leads[i]
        for j in range(i + 1, n):
            cj, mj = level.leads[j]
            if ci != cj:
                continue
            l = _lcm(mi, mj)
            m_ji = _sub(l, mi)
            m_ij = _sub(l, mj)
            gi, gj = level.elements[i], level.elements[j]
            lci, lcj = gi[(ci, mi)], gj[(cj, mj)]
            s: Vector = {}
            for (c, m), v in gi.items():
                s[(c, tuple(a + b for a, b in zip(m, m_ji)))] = v / lci
            for (c, m), v in gj.items():
                t = (c, tuple(a + b for a, b in zip(m, m_ij)))
                val = s.get(t, 0) - v / lcj
                if val:
                    s[t] = val
                else:
                    s.pop(t, None)
            rem, quot = _reduce_vector(s, level)
            if rem:
                raise ArithmeticError("frame level is not a Groebner basis")
            syz: Vector = {(i, m_ji): 1 / lci}
            t = (j, m_ij)
            syz[t] = syz.get(t, 0) - 1 / lcj
            for (k, shift), q in quot.items():
                t = (k, shift)
                val = syz.get(t, 0) - q
                if val:
                    syz[t] = val
                else:
                    syz.pop(t, None)
            lead = max(syz, key=level.key)
            assert lead == (i, m_ji)
            candidates.setdefault(i, []).append((m_ji, syz))
    out = []
    for i in sorted(candidates):
        items = candidates[i]
        for idx, (m, syz) in enumerate(items):
            dominated = any(
                _divides(m2, m) and (m2 != m or jdx < idx) for jdx, (m2, _) in enumerate(items) if jdx != idx
            )
            if not dominated:
                out.append(syz)
    return out


def syzygies(basis: Sequence[Polynomial], order=GREVLEX) -> list[list[Polynomial]]:
    """Schreyer syzygies of a Groebner basis of an ideal, as coefficient vectors."""
    if not basis:
        return []
    ring = basis[0].ring
    key = _KeyCache(as_order(order))
    level = _Level([{(0, e): c for e, c in g.terms.items()} for g in basis], lambda t: key(t[1]), ring.nvars)
    return [_vector_to_polys(v, len(basis), ring) for v in schreyer_syzygies(level)]


def _vector_to_polys(v: Vector, rank: int, ring: PolyRing) -> list[Polynomial]:
    cols: list[dict] = [{} for _ in range(rank)]
    for (c, m), val in v.items():
        cols[c][m] = val
    return [Polynomial(ring, t) for t in cols]


# --- resolutions ----------------------------------------------------------------------


@dataclass
class GradedFreeModule:
    twists: list[int]

    @property
    def rank(self) -> int:
        return len(self.twists)


@dataclass
class Resolution:
    """F_0 <- F_1 <- ... ; maps[k] is the matrix of F_(k+1) -> F_k, maps[k][row][col]."""

    ring: PolyRing
    modules: list[GradedFreeModule]
    maps: list[list[list[Polynomial]]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def composes_to_zero(self) -> bool:
        for k in range(1, len(self.maps)):
            a, b = self.maps[k - 1], self.maps[k]
            for r in range(len(a)):
                for c in range(len(b[0]) if b else 0):
                    acc = self.ring.zero()
                    for mid in range(len(b)):
                        if a[r][mid] and b[mid][c]:
                            acc = acc + a[r][mid] * b[mid][c]
                    if not acc.is_zero():
                        return False
        return True

    def is_graded(self) -> bool:
        for k, m in enumerate(self.maps):
            src, dst = self.modules[k + 1].twists, self.modules[k].twists
            for r, row in enumerate(m):
                for c, entry in enumerate(row):
                    if entry and not (entry.is_homogeneous() and entry.total_degree() == src[c] - dst[r]):
                        return False
        return True

    def is_minimal(self) -> bool:
        return all(entry.constant_term() == 0 for m in self.maps for row in m for entry in row)

    def betti_table(self) -> "BettiTable":
        entries: Counter = Counter()
        for i, mod in enumerate(self.modules):
            for j in mod.twists:
                entries[(i, j)] += 1
        return BettiTable(dict(entries))


def _frame(ideal: Ideal, order) -> tuple[list[list[int]], list[list[list[dict]]]]:
    """Schreyer frame as (twists per level, maps as column lists of row->poly dict)."""
    order = as_order(order)
    ring = ideal.ring
    gb = buchberger(ideal, order)
    key0 = _KeyCache(order)
    prev_key = lambda t: key0(t[1])  # noqa: E731
    elements = [{(0, e): c for e, c in g.terms.items()} for g in gb.elements]
    twists = [[0]]
    maps = []
    var = 0
    while elements:
        elements = _schreyer_sort(elements, prev_key, var, ring.nvars)
        level = _Level(elements, prev_key, ring.nvars)
        prev_tw = twists[-1]
        tw = []
        cols = []
        for v, (lc, lm) in zip(elements, level.leads):
            tw.append(prev_tw[lc] + sum(lm))
            col: dict[int, dict] = {}
            for (c, m), val in v.items():
                col.setdefault(c, {})[m] = val
            cols.append(col)
        twists.append(tw)
        maps.append(cols)
        elements = schreyer_syzygies(level)
        prev_key = level.key
        var += 1
    return twists, maps


def _minimize(twists: list[list[int]], maps: list[list[dict]], ring: PolyRing):
    """Cancel unit entries until every map entry lies in the maximal ideal."""
    zero_mono = (0,) * ring.nvars
    k = 0
    while k < len(maps):
        cols = maps[k]
        pivot = None
        for q, col in enumerate(cols):
            for p, ent in col.items():
                if ent and set(ent) == {zero_mono}:
                    pivot = (p, q)
                    break
            if pivot:
                break
        if pivot is None:
            k += 1
            continue
        p, q = pivot
        u = cols[q][p][zero_mono]
        colq = {r: Polynomial(ring, e) for r, e in cols[q].items()}
        new_cols = []
        for c, col in enumerate(cols):
            if c == q:
                continue
            a = col.get(p)
            if a:
                factor = Polynomial(ring, a).scale(Fraction(1) / u)
                updated = {r: Polynomial(ring, e) for r, e in col.items()}
                for r, e in colq.items():
                    updated[r] = updated.get(r, ring.zero()) - factor * e
                col = {r: e.terms for r, e in updated.items() if e}
            new_cols.append({(r if r < p else r - 1): e for r, e in col.items() if r != p})
        maps[k] = new_cols
        twists[k + 1] = [t for i, t in enumerate(twists[k + 1]) if i != q]
        twists[k] = [t for i, t in enumerate(twists[k]) if i != p]
        if k + 1 < len(maps):
            maps[k + 1] = [{(r if r < q else r - 1): e for r, e in col.items() if r != q} for col in maps[k + 1]]
        if k > 0:
            maps[k - 1] = [col for i, col in enumerate(maps[k - 1]) if i != p]
    while maps and not twists[-1]:
        twists.pop()
        maps.pop()
    return twists, maps


def _to_resolution(ring: PolyRing, twists, maps) -> Resolution:
    out_maps = []
    for k, cols in enumerate(maps):
        nrows = len(twists[k])
        mat = [[ring.zero() for _ in cols] for _ in range(nrows)]
        for c, col in enumerate(cols):
            for r, e in col.items():
                mat[r][c] = Polynomial(ring, e)
        out_maps.append(mat)
    return Resolution(ring, [GradedFreeModule(list(t)) for t in twists], out_maps)


def schreyer_resolution(ideal: Ideal, order=GREVLEX) -> Resolution:
    """The (usually non-minimal) Schreyer frame resolving R/I."""
    if not ideal.is_homogeneous():
        raise ValueError("resolutions need a homogeneous ideal")
    twists, maps = _frame(ideal, order)
    return _to_resolution(ideal.ring, twists, maps)


def minimal_resolution(ideal: Ideal, order=GREVLEX) -> Resolution:
    if not ideal.is_homogeneous():
        raise ValueError("resolutions need a homogeneous ideal")
    twists, maps = _frame(ideal, order)
    twists, maps = _minimize(twists, maps, ideal.ring)
    return _to_resolution(ideal.ring, twists, maps)


# --- Betti tables ---------------------------------------------------------------------


@dataclass
class BettiTable:
    """Sparse beta_{i,j}: homological index i, internal degree j."""

    entries: dict[tuple[int, int], int]

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def diff(self, other: "BettiTable") -> dict[tuple[int, int], tuple[int, int]]:
        keys = set(self.entries) | set(other.entries)
        return {k: (self[k], other[k]) for k in sorted(keys) if self[k] != other[k]}

    def euler_polynomial(self) -> dict[int, int]:
        """sum_i (-1)^i beta_{i,j} t^j as {j: coefficient}."""
        out: Counter = Counter()
        for (i, j), b in self.entries.items():
            out[j] += (-1) ** i * b
        return {j: c for j, c in sorted(out.items()) if c}

    def to_dict(self) -> dict:
        return {"entries": [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.entries.items())]}

    @classmethod
    def from_dict(cls, doc: dict) -> "BettiTable":
        return cls({(e["i"], e["j"]): e["value"] for e in doc["entries"]})

    def diagram(self) -> str:
        """Columns are homological index i, rows are j - i."""
        if not self.entries:
            return "(empty)"
        cols = max(i for i, _ in self.entries) + 1
        rows = sorted({j - i for i, j in self.entries})
        width = max(3, max(len(str(v)) for v in self.entries.values()) + 1)
        head = "     " + "".join(str(i).rjust(width) for i in range(cols))
        lines = [head]
        for row in range(rows[0], rows[-1] + 1):
            cells = []
            for i in range(cols):
                v = self.entries.get((i, row + i))
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(f"{row:>4}:" + "".join(cells))
        return "\n".join(lines)

    def __str__(self):
        return self.diagram()


def diagram_to_degree(i: int, row: int) -> int:
    """Internal degree j of the cell in column i and displayed row j - i."""
    return row + i


def betti_table(ideal: Ideal, order=GREVLEX) -> BettiTable:
    return minimal_resolution(ideal, order).betti_table()


def conjectured_betti(r: int, d: int) -> BettiTable:
    """Predicted Betti table of R/I_r^(d) for r = 1, 2, 3, in (i, j) coordinates."""
    if d < 1:
        raise ValueError("d must be positive")
    # (column i, displayed row) -> value, as in the published diagrams
    if r == 1:
        cells = {(0, 0): 1, (1, d - 1): 2, (2, 2 * d - 2): 1}
    elif r == 2:
        cells = {(0, 0): 1, (1, d - 1): 4, (2, 2 * d - 3): d, (2, 2 * d - 2): 3, (3, 2 * d - 2): d}
    elif r == 3:
        cells = {
            (0, 0): 1,
            (1, d - 1): 8,
            (2, 2 * d - 4): (d - 1) * d // 2,
            (2, 2 * d - 3): 4 * d,
            (3, 2 * d - 3): (d - 1) * (d + 1),
            (2, 2 * d - 2): 6,
            (3, 2 * d - 2): 4 * d,
            (4, 2 * d - 2): d * (d - 1) // 2,
        }
    else:
        raise ValueError("conjectured tables exist only for r in {1, 2, 3}")
    entries: Counter = Counter()
    for (i, row), v in cells.items():
        entries[(i, diagram_to_degree(i, row))] += v
    return BettiTable(dict(entries))


# --- Hilbert series from the initial ideal --------------------------------------------


def _minimalize(monos: Iterable[tuple]) -> list[tuple]:
    monos = sorted(set(monos), key=sum)
    out: list[tuple] = []
    for m in monos:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out


def _kpoly(monos: list[tuple]) -> Counter:
    """Numerator of the Hilbert series of R/<monos> (standard grading)."""
    monos = _minimalize(monos)
    if not monos:
        return Counter({0: 1})
    if all(sum(1 for x in m if x) == 1 for m in monos):
        # pure powers of distinct variables: product of (1 - t^a)
        out = Counter({0: 1})
        for m in monos:
            a = sum(m)
            nxt: Counter = Counter()
            for deg, c in out.items():
                nxt[deg] += c
                nxt[deg + a] -= c
            out = nxt
        return out
    last, rest = monos[-1], monos[:-1]
    colon = [_sub(_lcm(m, last), last) for m in rest]
    out = _kpoly(rest)
    for deg, c in _kpoly(colon).items():
        out[deg + sum(last)] -= c
    return out


def hilbert_numerator(ideal: Ideal, order=GREVLEX) -> dict[int, int]:
    """K-polynomial of R/I computed from the initial ideal of a Groebner basis."""
    gb = buchberger(ideal, order)
    k = _kpoly(gb.leading_monomials())
    return {j: c for j, c in sorted(k.items()) if c}


def hilbert_function_artinian(ideal: Ideal, order=GREVLEX) -> list[int]:
    """dim_k (R/I)_j for j = 0, 1, ... by counting standard monomials (finite quotients only)."""
    gb = buchberger(ideal, order)
    lms = gb.leading_monomials()
    nv = ideal.ring.nvars
    for v in range(nv):
        if not any(sum(m) == m[v] and m[v] > 0 for m in lms):
            raise ValueError("quotient is not finite dimensional")

    out = []
    deg = 0
    while True:
        count = sum(1 for m in monomials_of_degree(nv, deg) if not any(_divides(l, m) for l in lms))
        if count == 0:
            return out
        out.append(count)
        deg += 1
