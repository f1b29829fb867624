"""Quotient rings B = K[x]/I and the zero-dimensional toolkit.

Everything zero-dimensional is computed by linear algebra on the standard
monomial basis: multiplication matrices, minimal polynomials, units and
zero-divisors. Positive-dimensional questions fall back to ideal
membership and ideal quotients.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg
from .groebner import (
    GroebnerBasis, Ideal, buchberger, ideal_quotient, normal_form,
)
from .polynomial import MonomialOrder, Polynomial, PolyRing, block, mono_divides
from .univariate import is_separable_univariate, is_squarefree

INFINITE = math.inf


class QuotientRing:
    """``ring / (generators)`` with its reduced Groebner basis.

    Elements are polynomials of ``ring``; two are equal in the quotient iff
    their normal forms coincide.
    """

    def __init__(self, ring: PolyRing, generators: Iterable = (), order: MonomialOrder | None = None):
        self.ring = ring
        self.order = order or ring.order
        self.ideal = Ideal(ring, generators)
        self.gb: GroebnerBasis = buchberger(self.ideal, self.order)
        self.zero_dimensional = _zero_dimensional(self.gb, ring.nvars)
        self.standard_monomials: tuple | None = (
            tuple(_standard_monomials(self.gb, ring.nvars)) if self.zero_dimensional else None)
        self._index = ({m: i for i, m in enumerate(self.standard_monomials)}
                       if self.standard_monomials is not None else None)

    @classmethod
    def from_strings(cls, names: Sequence[str], field, generators: Iterable[str] = ()) -> "QuotientRing":
        ring = PolyRing(names, field)
        return cls(ring, [ring(g) for g in generators])

    @property
    def field(self):
        return self.ring.field

    @property
    def dim(self):
        return len(self.standard_monomials) if self.zero_dimensional else INFINITE

    def __call__(self, x) -> Polynomial:
        """Normal form of ``x`` (a polynomial, scalar or expression string)."""
        return normal_form(self.ring(x), self.gb)

    def nf(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb)

    def zero(self) -> Polynomial:
        return self.ring.zero()

    def one(self) -> Polynomial:
        return self.nf(self.ring.one())

    def is_zero(self, f: Polynomial) -> bool:
        return self.nf(f).is_zero()

    def equal(self, f: Polynomial, g: Polynomial) -> bool:
        return self.nf(f - g).is_zero()

    def mul(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return self.nf(f * g)

    def _require_zero_dim(self):
        if not self.zero_dimensional:
            raise ValueError("the quotient ring is not zero-dimensional")

    def coords(self, f: Polynomial) -> list:
        """Coordinates of ``NF(f)`` on the standard monomials."""
        self._require_zero_dim()
        v = [self.field.zero] * len(self.standard_monomials)
        for m, c in self.nf(f)._terms.items():
            v[self._index[m]] = c
        return v

    def from_coords(self, v: Sequence) -> Polynomial:
        self._require_zero_dim()
        return Polynomial(self.ring, {m: c for m, c in zip(self.standard_monomials, v) if c != 0})

    def basis_elements(self) -> list[Polynomial]:
        self._require_zero_dim()
        return [self.ring.monomial(m) for m in self.standard_monomials]

    def __repr__(self):
        names = ",".join(self.ring.names)
        return f"QuotientRing({self.field}[{names}]/{self.ideal})"


def _zero_dimensional(gb: GroebnerBasis, nvars: int) -> bool:
    if gb.is_unit_ideal():
        return True
    lms = gb.leading_monomials
    for i in range(nvars):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            return False
    return True


def _standard_monomials(gb: GroebnerBasis, nvars: int) -> list:
    if gb.is_unit_ideal():
        return []
    lms = gb.leading_monomials
    bounds = []
    for i in range(nvars):
        bounds.append(min(m[i] for m in lms if m[i] > 0 and sum(m) == m[i]))
    out = [m for m in itertools.product(*(range(b) for b in bounds))
           if not any(mono_divides(lm, m) for lm in lms)]
    return sorted(out, key=gb.order.key)


def is_zero_dimensional(qr: QuotientRing) -> bool:
    return qr.zero_dimensional


def dim_K(qr: QuotientRing):
    """Number of standard monomials, or ``INFINITE``."""
    return qr.dim


def multiplication_matrix(qr: QuotientRing, b: Polynomial) -> list[list]:
    """Matrix of ``x -> b·x``; column ``j`` is the image of standard monomial ``j``."""
    qr._require_zero_dim()
    b = qr.ring(b)
    cols = [qr.coords(b * m) for m in qr.basis_elements()]
    return linalg.transpose(cols) if cols else []


@dataclass(frozen=True)
class UnitCheck:
    is_unit: bool
    inverse: Polynomial | None = None


@dataclass(frozen=True)
class ZeroDivisorCheck:
    is_zero_divisor: bool
    witness: Polynomial | None = None


@dataclass(frozen=True)
class RadicalCheck:
    """``answer`` is ``True``, ``False`` or ``None`` (undecided)."""

    answer: bool | None
    reason: str
    minimal_polynomials: tuple = ()  # (variable name, polynomial, squarefree) triples

    def certificate(self) -> dict:
        return {
            "answer": {True: "YES", False: "NO", None: "UNKNOWN"}[self.answer],
            "reason": self.reason,
            "minimal_polynomials": [
                {"variable": v, "polynomial": str(m), "squarefree": sq}
                for v, m, sq in self.minimal_polynomials
            ],
        }


@dataclass(frozen=True)
class EtaleCheck:
    answer: bool
    reason: str
    minimal_polynomials: tuple = ()  # (variable name, polynomial, separable) triples


def _minpoly_ring(field) -> PolyRing:
    return PolyRing(("t",), field)


def minimal_polynomial(qr: QuotientRing, var: int | str) -> Polynomial:
    """Monic minimal polynomial (in ``t``) of multiplication by ``x_var``.

    Found as the first linear dependency in the Krylov sequence
    ``1, x, x^2, ...`` of the unit element; since the regular
    representation is faithful this is the minimal polynomial of the
    multiplication matrix itself.
    """
    qr._require_zero_dim()
    if isinstance(var, str):
        var = qr.ring.index(var)
    if not 0 <= var < qr.ring.nvars:
        raise IndexError(f"variable index {var} out of range")
    tring = _minpoly_ring(qr.field)
    n = qr.dim
    if n == 0:
        return tring.one()
    mat = multiplication_matrix(qr, qr.ring.var(var))
    span = linalg.IncrementalBasis(qr.field, n)
    v = qr.coords(qr.ring.one())
    while True:
        dep = span.add(v)
        if dep is not None:
            return Polynomial(tring, {(k,): c for k, c in enumerate(dep) if c != 0})
        v = linalg.matvec(mat, v, qr.field)


def evaluate_univariate(m: Polynomial, x: Polynomial) -> Polynomial:
    """``m(x)`` for univariate ``m`` in ``t`` and a polynomial ``x``."""
    return m.substitute([x], target=x.ring)


def is_unit(qr: QuotientRing, b: Polynomial) -> UnitCheck:
    """Decide ``1 ∈ I + (b)``; an inverse is returned whenever one is found."""
    b = qr.nf(qr.ring(b))
    if b.is_zero():
        return UnitCheck(qr.gb.is_unit_ideal(), qr.zero() if qr.gb.is_unit_ideal() else None)
    if b.is_constant():
        return UnitCheck(True, qr.ring.constant(1 / b.constant_value()))
    if qr.zero_dimensional:
        one = qr.coords(qr.ring.one())
        x = linalg.solve(multiplication_matrix(qr, b), one, qr.field)
        if x is None:
            return UnitCheck(False)
        return UnitCheck(True, qr.from_coords(x))
    gb = buchberger(Ideal(qr.ring, qr.gb.basis + (b,)), qr.order)
    if not gb.is_unit_ideal():
        return UnitCheck(False)
    return UnitCheck(True, _inverse_by_elimination(qr, b))


def _inverse_by_elimination(qr: QuotientRing, b: Polynomial) -> Polynomial:
    # In K[y, x]/(I, b·y - 1) the tag y equals b^{-1}; its normal form under
    # an order eliminating y lies in K[x].
    ring = qr.ring
    tag = "_inv"
    while tag in ring.names:
        tag = "_" + tag
    big = PolyRing((tag,) + ring.names, ring.field, block(1, qr.order))
    shift = list(range(1, ring.nvars + 1))
    y = big.var(0)
    gens = [g.embed(big, shift) for g in qr.gb.basis] + [b.embed(big, shift) * y - 1]
    gb = buchberger(gens, big.order, ring=big)
    r = normal_form(y, gb)
    if any(m[0] for m in r.monomials()):
        raise ArithmeticError("inverse did not eliminate; element is not a unit")
    inv = qr.nf(Polynomial(ring, {m[1:]: c for m, c in r._terms.items()}))
    if not qr.equal(inv * b, ring.one()):
        raise ArithmeticError("computed inverse failed verification")
    return inv


def is_zero_divisor(qr: QuotientRing, b: Polynomial) -> ZeroDivisorCheck:
    """Zero counts as a zero-divisor; the witness ``g`` has ``NF(g) != 0`` and ``NF(g·b) == 0``."""
    b = qr.nf(qr.ring(b))
    if b.is_zero():
        one = qr.one()
        return ZeroDivisorCheck(True, one if not one.is_zero() else None)
    if qr.zero_dimensional:
        ker = linalg.nullspace(multiplication_matrix(qr, b), qr.field)
        if not ker:
            return ZeroDivisorCheck(False)
        return ZeroDivisorCheck(True, qr.from_coords(ker[0]))
    quot = ideal_quotient(qr.ideal, b)
    for g in quot.generators:
        w = qr.nf(g)
        if not w.is_zero():
            return ZeroDivisorCheck(True, w)
    return ZeroDivisorCheck(False)


def is_radical(qr: QuotientRing) -> RadicalCheck:
    """Seidenberg's test for zero-dimensional ideals; a few positive-dimensional special cases."""
    if qr.zero_dimensional:
        mins = []
        for i, name in enumerate(qr.ring.names):
            m = minimal_polynomial(qr, i)
            mins.append((name, m, is_squarefree(m)))
        ok = all(sq for _, _, sq in mins)
        reason = ("every minimal polynomial is squarefree" if ok
                  else "minimal polynomial of " + ", ".join(v for v, _, sq in mins if not sq)
                  + " is not squarefree")
        return RadicalCheck(ok, reason, tuple(mins))
    basis = qr.gb.basis
    if not basis:
        return RadicalCheck(True, "zero ideal of a polynomial ring")
    if len(basis) == 1:
        f = basis[0]
        try:
            idx = f.univariate_index()
        except ValueError:
            idx = -1
        if idx is not None and idx >= 0:
            sq = is_squarefree(f)
            return RadicalCheck(
                sq, "principal ideal with a univariate generator that is "
                + ("squarefree" if sq else "not squarefree"),
                ((qr.ring.names[idx], f, sq),))
    return RadicalCheck(None, "positive-dimensional ideal outside the decidable cases")


def is_etale(qr: QuotientRing) -> EtaleCheck:
    if not qr.zero_dimensional:
        return EtaleCheck(False, "not finite-dimensional")
    mins = []
    for i, name in enumerate(qr.ring.names):
        m = minimal_polynomial(qr, i)
        mins.append((name, m, is_separable_univariate(m)))
    ok = all(s for _, _, s in mins)
    return EtaleCheck(ok, "every minimal polynomial is separable" if ok
                      else "a minimal polynomial has a repeated root", tuple(mins))
