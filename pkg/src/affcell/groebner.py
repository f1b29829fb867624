"""Buchberger's algorithm, normal forms and elimination-based ideal operations."""
from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .polynomial import (
    MonomialOrder, Polynomial, PolyRing, block, degrevlex, mono_coprime,
    mono_div, mono_divides, mono_lcm,
)

DEFAULT_MAX_PAIRS = 50_000
DEFAULT_MAX_POLYS = 2_000


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner computation exceeds its resource budget."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive")
    return value


@dataclass(frozen=True)
class Budget:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_polys: int = DEFAULT_MAX_POLYS

    @classmethod
    def from_env(cls) -> "Budget":
        return cls(_env_int("AFFCELL_MAX_PAIRS", DEFAULT_MAX_PAIRS),
                   _env_int("AFFCELL_MAX_POLYS", DEFAULT_MAX_POLYS))


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators in a fixed ambient ring."""

    ring: PolyRing
    generators: tuple

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = tuple(ring(g) for g in generators)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")" if self.generators else "(0)"


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; ``basis`` is monic and sorted by leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    basis: tuple

    @property
    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.basis]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


# Observers see every basis produced by :func:`buchberger`, with its input.
_observers: list[Callable[[GroebnerBasis, tuple], None]] = []


@contextmanager
def observe_bases(callback: Callable[[GroebnerBasis, tuple], None]):
    _observers.append(callback)
    try:
        yield
    finally:
        _observers.remove(callback)


def add_observer(callback):
    _observers.append(callback)


def remove_observer(callback):
    _observers.remove(callback)


def _reduce(f: Polynomial, basis: Sequence[Polynomial], lms: Sequence, order: MonomialOrder) -> Polynomial:
    """Full multivariate division remainder; ``basis`` entries must be monic."""
    ring = f.ring
    key = order.key
    p = dict(f._terms)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lm in zip(basis, lms):
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                for gm, gc in g._terms.items():
                    t = tuple(x + y for x, y in zip(gm, shift))
                    v = p.get(t)
                    v = -c * gc if v is None else v - c * gc
                    if v == 0:
                        p.pop(t, None)
                    else:
                        p[t] = v
                break
        else:
            rem[m] = c
            del p[m]
    return Polynomial._raw(ring, rem)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the reduced basis ``gb``."""
    if f.ring != gb.ring:
        raise ValueError(f"ambient mismatch: {f.ring} vs {gb.ring}")
    return _reduce(f, gb.basis, gb.leading_monomials, gb.order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_div(lcm, mf), 1 / cf) - g.mul_term(mono_div(lcm, mg), 1 / cg)


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``.

    Pairs are selected by smallest lcm (normal strategy); pairs with coprime
    leading monomials and pairs caught by the chain criterion are skipped.
    """
    if isinstance(ideal, Ideal):
        ring = ideal.ring
        gens = ideal.generators
    else:
        gens = tuple(ideal)
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            ring = gens[0].ring
    order = order or ring.order
    budget = budget or Budget.from_env()
    key = order.key

    G: list[Polynomial] = []
    lms: list = []
    for g in gens:
        if g.ring != ring:
            raise ValueError(f"generator {g} lives in {g.ring}, expected {ring}")
        if not g.is_zero():
            G.append(g.monic(order))
            lms.append(G[-1].leading_monomial(order))

    pairs: set = set()
    for j in range(len(G)):
        for i in range(j):
            pairs.add((i, j))
    processed = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} critical pairs")
        lcm = mono_lcm(lms[i], lms[j])
        if mono_coprime(lms[i], lms[j]):
            continue
        if _chain_criterion(i, j, lcm, lms, pairs):
            continue
        h = _reduce(s_polynomial(G[i], G[j], order), G, lms, order)
        if h.is_zero():
            continue
        h = h.monic(order)
        G.append(h)
        lms.append(h.leading_monomial(order))
        if len(G) > budget.max_polys:
            raise BudgetExceeded(f"more than {budget.max_polys} basis elements")
        k = len(G) - 1
        for t in range(k):
            pairs.add((t, k))

    basis = _interreduce(G, order)
    gb = GroebnerBasis(ring, order, tuple(basis))
    for obs in list(_observers):
        obs(gb, tuple(gens))
    return gb


def _chain_criterion(i, j, lcm, lms, pairs) -> bool:
    for k in range(len(lms)):
        if k == i or k == j:
            continue
        if not mono_divides(lms[k], lcm):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _interreduce(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    key = order.key
    # minimal basis: drop elements whose leading monomial is divisible by another's
    items = sorted(G, key=lambda g: key(g.leading_monomial(order)))
    minimal: list[Polynomial] = []
    for g in items:
        lm = g.leading_monomial(order)
        if any(mono_divides(h.leading_monomial(order), lm) for h in minimal):
            continue
        minimal.append(g)
    if any(g.is_constant() for g in minimal):
        return [minimal[0].ring.one()]
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        olms = [h.leading_monomial(order) for h in others]
        lm, lc = g.leading_term(order)
        tail = Polynomial._raw(g.ring, {m: c for m, c in g._terms.items() if m != lm})
        r = _reduce(tail, others, olms, order)
        reduced.append((r + g.ring.monomial(lm, lc)).monic(order))
    return sorted(reduced, key=lambda g: key(g.leading_monomial(order)))


def check_groebner_basis(gb: GroebnerBasis, generators: Iterable[Polynomial] = ()) -> list[str]:
    """Problems with ``gb`` as a reduced basis of ``generators``; empty when sound."""
    problems = []
    order = gb.order
    basis = list(gb.basis)
    lms = gb.leading_monomials
    for g in basis:
        if g.is_zero():
            problems.append("zero element in basis")
            continue
        if g.leading_coefficient(order) != 1:
            problems.append(f"{g} is not monic")
    for a in range(len(basis)):
        for m in basis[a].monomials():
            for b in range(len(basis)):
                if a != b and mono_divides(lms[b], m):
                    problems.append(f"term of {basis[a]} divisible by leading monomial of {basis[b]}")
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not _reduce(s_polynomial(basis[a], basis[b], order), basis, lms, order).is_zero():
                problems.append(f"S({basis[a]}, {basis[b]}) does not reduce to 0")
    for f in generators:
        if not _reduce(f, basis, lms, order).is_zero():
            problems.append(f"generator {f} does not reduce to 0")
    return problems


# -- elimination ------------------------------------------------------------


def eliminate(ideal: Ideal, front_vars: Sequence[str | int], inner: MonomialOrder = degrevlex) -> Ideal:
    """Generators of ``ideal`` intersected with K[remaining variables].

    The result lives in the polynomial ring on the remaining variables, in
    their original relative order.
    """
    ring = ideal.ring
    front = [ring.index(v) if isinstance(v, str) else v for v in front_vars]
    if len(set(front)) != len(front):
        raise ValueError("repeated elimination variable")
    rest = [i for i in range(ring.nvars) if i not in front]
    perm = front + rest
    big = PolyRing([ring.names[i] for i in perm], ring.field, block(len(front), inner))
    position = {old: new for new, old in enumerate(perm)}
    gens = [g.embed(big, [position[i] for i in range(ring.nvars)]) for g in ideal.generators]
    gb = buchberger(gens, big.order, ring=big)
    small = PolyRing([ring.names[i] for i in rest], ring.field, inner)
    k = len(front)
    kept = []
    for g in gb.basis:
        if all(all(e == 0 for e in m[:k]) for m in g.monomials()):
            kept.append(Polynomial(small, {m[k:]: c for m, c in g._terms.items()}))
    return Ideal(small, kept)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return Ideal(I.ring, I.generators + J.generators)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating a tag variable ``t`` from ``t·I + (1 - t)·J``."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    ring = I.ring
    tag = "_t"
    while tag in ring.names:
        tag = "_" + tag
    big = PolyRing((tag,) + ring.names, ring.field)
    shift = list(range(1, ring.nvars + 1))
    t = big.var(0)
    gens = [t * g.embed(big, shift) for g in I.generators]
    gens += [(1 - t) * g.embed(big, shift) for g in J.generators]
    if not gens:
        return Ideal(ring, [])
    elim = eliminate(Ideal(big, gens), [0], ring.order)
    return Ideal(ring, [Polynomial(ring, g._terms) for g in elim.generators])


def exact_divide(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; ``ArithmeticError`` otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = order or f.ring.order
    lm, lc = g.leading_term(order)
    key = order.key
    p = dict(f._terms)
    q = {}
    while p:
        m = max(p, key=key)
        if not mono_divides(lm, m):
            raise ArithmeticError(f"{g} does not divide {f}")
        c = p[m] / lc
        shift = mono_div(m, lm)
        q[shift] = c
        for gm, gc in g._terms.items():
            t = tuple(x + y for x, y in zip(gm, shift))
            v = p.get(t)
            v = -c * gc if v is None else v - c * gc
            if v == 0:
                p.pop(t, None)
            else:
                p[t] = v
    return Polynomial(f.ring, q)


def ideal_quotient(I: Ideal, b: Polynomial) -> Ideal:
    """``(I : b) = {g : g·b ∈ I}`` via ``I ∩ (b)`` divided by ``b``."""
    if b.is_zero():
        raise ValueError("quotient by the zero polynomial")
    inter = ideal_intersection(I, Ideal(I.ring, [b]))
    return Ideal(I.ring, [exact_divide(g, b) for g in inter.generators])


def same_ideal(I: Ideal, J: Ideal, order: MonomialOrder | None = None) -> bool:
    order = order or I.ring.order
    a = buchberger(I, order)
    b = buchberger(J, order)
    return a.basis == b.basis
