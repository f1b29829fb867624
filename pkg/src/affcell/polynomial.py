"""Monomial orders, polynomial rings and sparse exact polynomials."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .fields import FieldSpec

Monomial = tuple  # tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _degrevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: Monomial):
    return m


class MonomialOrder:
    """A monomial order, usable as a sort key via :meth:`key`.

    ``block(k, inner)`` compares the first ``k`` variables with ``inner``
    and breaks ties on the remaining variables with ``inner``; it eliminates
    the leading block.
    """

    def __init__(self, kind: str, elim: int = 0, inner: "MonomialOrder | None" = None):
        self.kind = kind
        self.elim = elim
        self.inner = inner
        if kind == "degrevlex":
            raw = _degrevlex_key
        elif kind == "lex":
            raw = _lex_key
        elif kind == "block":
            if inner is None or elim < 0:
                raise ValueError("block order needs a block size and an inner order")
            ik = inner.key
            raw = lambda m: (ik(m[:elim]), ik(m[elim:]))  # noqa: E731
        else:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.key = lru_cache(maxsize=1 << 16)(raw)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.elim == other.elim and self.inner == other.inner)

    def __hash__(self):
        return hash((self.kind, self.elim, self.inner))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.elim}, {self.inner!r})"
        return self.kind


degrevlex = MonomialOrder("degrevlex")
lex = MonomialOrder("lex")


def block(elim: int, inner: MonomialOrder = degrevlex) -> MonomialOrder:
    return MonomialOrder("block", elim, inner)


class AmbientMismatch(ValueError):
    pass


class PolyRing:
    """K[x_1, ..., x_t] with declared variable names and a default order."""

    def __init__(self, names: Sequence[str], field: FieldSpec, order: MonomialOrder = degrevlex):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.field = field
        self.order = order
        self.nvars = len(names)
        self.one_mono = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field == other.field)

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.field})"

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.one_mono: c} if c != 0 else {})

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c != 0 else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise AmbientMismatch(f"{x.ring} is not {self}")
            return x
        if isinstance(x, str):
            from .parser import parse_polynomial
            return parse_polynomial(x, self)
        return self.constant(x)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, self.field, order)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object]):
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, object]]:
        """Terms sorted from largest to smallest monomial."""
        key = (order or self.ring.order).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Monomial):
        return self._terms.get(tuple(m), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring.one_mono in self._terms)

    def constant_value(self):
        return self._terms.get(self.ring.one_mono, self.field.zero)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self._terms, key=(order or self.ring.order).key)

    def leading_term(self, order: MonomialOrder | None = None):
        m = self.leading_monomial(order)
        return m, self._terms[m]

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.leading_term(order)[1]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degree(self, i: int) -> int:
        return max((m[i] for m in self._terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def univariate_index(self) -> int | None:
        """Index of the single variable in use, ``None`` for constants.

        Raises ``ValueError`` when several variables occur.
        """
        s = self.support()
        if len(s) > 1:
            raise ValueError(f"{self} is not univariate")
        return next(iter(s)) if s else None

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise AmbientMismatch(f"ambient mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s == 0:
                    del t[m]
                else:
                    t[m] = s
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return self.ring.zero()
        t: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = t.get(m)
                t[m] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring, {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in self._terms.items()})

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def diff(self, i: int) -> "Polynomial":
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        t = {}
        for m, c in self._terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                t[tuple(e)] = c * m[i]
        return Polynomial(self.ring, t)

    def substitute(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]`` (all in ``target``)."""
        target = target or self.ring
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        result = target.zero()
        powers: dict = {}
        for m, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def embed(self, target: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Map into ``target`` sending variable ``i`` to variable ``positions[i]``."""
        t = {}
        for m, c in self._terms.items():
            e = [0] * target.nvars
            for i, k in enumerate(m):
                e[positions[i]] += k
            t[tuple(e)] = target.field(c)
        return Polynomial(target, t)

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int,)) or hasattr(other, "denominator") or hasattr(other, "p"):
            try:
                return self._terms == self.ring.constant(other)._terms
            except (TypeError, ValueError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Text in the grammar accepted by :func:`affcell.parser.parse_polynomial`."""
    if f.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(f.terms(order)):
        if f.field.is_rational:
            neg = c < 0
            a = -c if neg else c
        else:
            neg = False
            a = c
        mono = format_monomial(m, f.ring.names)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def polys_in(ring: PolyRing, items: Iterable) -> list[Polynomial]:
    return [ring(x) for x in items]


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """``op`` is one of ``add``, ``sub``, ``mul``."""
    if a.ring != b.ring:
        raise AmbientMismatch(f"ambient mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, var: int | str) -> Polynomial:
    if isinstance(var, str):
        var = f.ring.index(var)
    return f.diff(var)
