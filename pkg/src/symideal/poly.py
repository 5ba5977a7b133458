"""Sparse multivariate polynomials over Q, monomial orders, and a text parser.

A polynomial is a map from exponent tuples to nonzero Fractions, tied to a
:class:`PolyRing` that fixes the variable names and the active monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .arith import format_rational

Monomial = tuple  # exponent vector, one int per ring variable

_MAX_EXPONENT = 2**31 - 1


class PolyError(ValueError):
    pass


class RingMismatchError(PolyError):
    pass


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _grevlex_key(e: Sequence[int]):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or block(k): grevlex on the first k variables, ties by grevlex on the rest."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise PolyError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise PolyError("block order needs a positive first-block size")

    def key(self, e: Sequence[int]):
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "grevlex":
            return _grevlex_key(e)
        k = self.block
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    def __str__(self):
        return f"block({self.block})" if self.kind == "block" else self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def as_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    if isinstance(order, str):
        if order.startswith("block"):
            return MonomialOrder("block", int(order[order.index("(") + 1 : order.index(")")]))
        return MonomialOrder(order)
    raise PolyError(f"cannot interpret {order!r} as a monomial order")


class PolyRing:
    """Q[names] with a monomial order. Rings compare by variable names only."""

    def __init__(self, names: Iterable[str], order="grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        self.names = names
        self.order = as_order(order)
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({list(self.names)}, order={self.order})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.names, order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r} in ring {self.names}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(n) for n in self.names]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise PolyError("exponent vector length does not match the ring")
        return Polynomial(self, {tuple(exps): Fraction(coeff)} if coeff else {})

    def parse(self, text: str) -> "Polynomial":
        return parse(text, self)

    def __call__(self, text: str) -> "Polynomial":
        return parse(text, self)


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


class Polynomial:
    """Immutable polynomial. Arithmetic requires operands over the same variables."""

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}

    # --- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.ring.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    @cached_property
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order under the ring's monomial order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        key = self.ring.order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        comps: dict[int, dict] = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(comps.items())}

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables_used(self) -> set[str]:
        return {self.ring.names[i] for e in self.terms for i, x in enumerate(e) if x}

    # --- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"variable sets differ: {self.ring.names} vs {other.ring.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        out = Polynomial(self.ring, terms)
        if any(x > _MAX_EXPONENT for e in out.terms for x in e):
            raise OverflowError("exponent overflow")
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("polynomial powers need a non-negative integer exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exps: Monomial, coeff) -> "Polynomial":
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()}
        )

    # --- ring changes ------------------------------------------------------

    def with_order(self, order) -> "Polynomial":
        return Polynomial(self.ring.with_order(order), self.terms)

    def embed(self, ring: PolyRing) -> "Polynomial":
        """Reinterpret in a ring whose variables include every variable used here."""
        used = self.variables_used()
        missing = used - set(ring.names)
        if missing:
            raise RingMismatchError(f"variables {sorted(missing)} not in target ring")
        positions = [ring._index.get(n) for n in self.ring.names]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    ne[positions[i]] = x
            terms[tuple(ne)] = c
        return Polynomial(ring, terms)

    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending each variable to its image.

        Every variable of this ring must be mapped, and all images must share
        one ring.
        """
        missing = [n for n in self.ring.names if n not in images]
        if missing:
            raise PolyError(f"no image given for variables {missing}")
        target_rings = {p.ring for p in images.values() if isinstance(p, Polynomial)}
        if len(target_rings) != 1:
            raise RingMismatchError("substitution images must share one ring")
        target = target_rings.pop()
        imgs = []
        for n in self.ring.names:
            img = images[n]
            imgs.append(img if isinstance(img, Polynomial) else target.constant(img))
        powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: img} for img in imgs]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = imgs[i] ** k
            return cache[k]

        result = target.zero()
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def dehomogenize(self, pivot: str) -> "Polynomial":
        if not self.is_homogeneous():
            raise PolyError("dehomogenize needs a homogeneous polynomial")
        i = self.ring.index(pivot)
        ring = PolyRing([n for n in self.ring.names if n != pivot], self.ring.order.kind
                        if self.ring.order.kind != "block" else "grevlex")
        terms: dict = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1 :]
            terms[ne] = terms.get(ne, 0) + c
        return Polynomial(ring, terms)

    def homogenize(self, pivot: str, degree: int, ring: PolyRing | None = None) -> "Polynomial":
        """Pad each term with pivot powers up to ``degree``.

        Without an explicit ring the pivot is prepended to this ring's variables
        (or reused when already present).
        """
        if self.total_degree() > degree:
            raise PolyError(f"total degree {self.total_degree()} exceeds {degree}")
        if ring is None:
            ring = self.ring if pivot in self.ring.names else PolyRing((pivot,) + self.ring.names, self.ring.order)
        base = self.embed(ring) if self.ring != ring else self
        i = ring.index(pivot)
        terms = {}
        for e, c in base.terms.items():
            ne = list(e)
            ne[i] += degree - sum(e)
            terms[tuple(ne)] = c
        return Polynomial(ring, terms)

    def coefficient_of_power(self, name: str, k: int) -> "Polynomial":
        """The polynomial in the other variables multiplying name^k."""
        i = self.ring.index(name)
        ring = PolyRing([n for n in self.ring.names if n != name],
                        self.ring.order if self.ring.order.kind != "block" else "grevlex")
        return Polynomial(ring, {e[:i] + e[i + 1 :]: c for e, c in self.terms.items() if e[i] == k})

    def content_normalized(self) -> "Polynomial":
        """Scale so the leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # --- text --------------------------------------------------------------

    def monomial_str(self, e: Monomial) -> str:
        parts = []
        for n, x in zip(self.ring.names, e):
            if x == 1:
                parts.append(n)
            elif x:
                parts.append(f"{n}^{x}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.sorted_terms):
            mono = self.monomial_str(e)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            else:
                body = format_rational(a)
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {list(self.ring.names)})"


# --- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, ring: PolyRing | None):
        self.text = text
        self.pos = 0
        self.ring = ring
        self.names: list[str] = list(ring.names) if ring else []

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def uint(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an unsigned integer", start)
        return int(self.text[start : self.pos])

    # the AST is evaluated on the fly into (names-agnostic) term dicts keyed by
    # variable-name -> exponent, so the ring can be inferred after parsing
    def expr(self):
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        acc = _scale(self.term(), sign)
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = _mul(acc, self.factor())
        return acc

    def factor(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            base = self.expr()
            self.expect(")")
        elif ch.isdigit():
            num = self.uint()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", self.pos)
            base = {(): Fraction(num, den)}
        elif ch == "-":
            self.pos += 1
            return _scale(self.factor(), -1)
        elif ch.isalpha():
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.names:
                if self.ring is not None:
                    raise ParseError(f"unknown variable {name!r}", start)
                self.names.append(name)
            base = {((name, 1),): Fraction(1)}
        elif ch == "":
            raise ParseError("unexpected end of input", self.pos)
        else:
            raise ParseError(f"unexpected character {ch!r}", self.pos)
        if self.peek() == "^":
            self.pos += 1
            base = _pow(base, self.uint())
        return base


def _norm(mono: dict) -> tuple:
    return tuple(sorted((n, x) for n, x in mono.items() if x))


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _scale(a: dict, c) -> dict:
    return {k: v * c for k, v in a.items()}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            m = dict(k1)
            for n, x in k2:
                m[n] = m.get(n, 0) + x
            k = _norm(m)
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _pow(a: dict, k: int) -> dict:
    out = {(): Fraction(1)}
    for _ in range(k):
        out = _mul(out, a)
    return out


def parse(text: str, ring: PolyRing | None = None) -> Polynomial:
    """Parse polynomial text. Without a ring, variables are taken in order of appearance."""
    p = _Parser(text, ring)
    if not p.peek():
        raise ParseError("empty input", 0)
    value = p.expr()
    if p.peek():
        raise ParseError(f"unexpected trailing {p.peek()!r}", p.pos)
    if ring is None:
        ring = PolyRing(p.names)
    terms = {}
    for mono, c in value.items():
        e = [0] * ring.nvars
        for n, x in mono:
            e[ring.index(n)] = x
        terms[tuple(e)] = c
    return Polynomial(ring, terms)
