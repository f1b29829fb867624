"""Brute-force verification on finite-dimensional realizations.

The oracle never touches Groebner-based criteria: it builds a structure-
constant algebra and computes its Jacobson radical over Q as the kernel of
the trace form of the regular representation.
"""
from __future__ import annotations

import random
from typing import Sequence

from . import linalg
from .cellular import CellLayer, CellularAlgebraSpec, validate_spec
from .fields import QQ, FieldSpec
from .polynomial import PolyRing, format_monomial
from .quotient import QuotientRing


class NonAssociative(ValueError):
    pass


class StructureConstantAlgebra:
    """Finite-dimensional algebra ``(e_i e_j) = sum_k table[i][j][k] e_k``.

    ``table[i][j]`` is a sparse dict ``{k: coefficient}``. ``identity`` is the
    coordinate vector of the unit when the algebra is unital.
    """

    def __init__(self, field: FieldSpec, labels: Sequence[str], table, identity=None, check: bool = True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = [[{k: field(c) for k, c in table[i][j].items() if c != 0}
                       for j in range(self.dim)] for i in range(self.dim)]
        self.identity = None if identity is None else [field(c) for c in identity]
        if check:
            bad = self.associativity_failure()
            if bad is not None:
                raise NonAssociative(f"(e{bad[0]} e{bad[1]}) e{bad[2]} != e{bad[0]} (e{bad[1]} e{bad[2]})")
            if self.identity is not None:
                self._check_identity()

    @property
    def unital(self) -> bool:
        return self.identity is not None

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = self.zero()
        nz_v = [(j, c) for j, c in enumerate(v) if c != 0]
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.table[i]
            for j, b in nz_v:
                for k, c in row[j].items():
                    out[k] = out[k] + a * b * c
        return out

    def _sparse_mul(self, x: dict, j: int) -> dict:
        out: dict = {}
        for l, c in x.items():
            for k, d in self.table[l][j].items():
                out[k] = out.get(k, 0) + c * d
        return {k: c for k, c in out.items() if c != 0}

    def _sparse_lmul(self, i: int, y: dict) -> dict:
        out: dict = {}
        for l, c in y.items():
            for k, d in self.table[i][l].items():
                out[k] = out.get(k, 0) + c * d
        return {k: c for k, c in out.items() if c != 0}

    def associativity_failure(self):
        """First basis triple violating associativity, or ``None``."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    jk = self.table[j][k]
                    if not ij and not jk:
                        continue
                    if self._sparse_mul(ij, k) != self._sparse_lmul(i, jk):
                        return (i, j, k)
        return None

    def _check_identity(self):
        for i in range(self.dim):
            e = self.basis_vector(i)
            if self.mul(self.identity, e) != e or self.mul(e, self.identity) != e:
                raise ValueError("declared identity is not a two-sided unit")

    def __repr__(self):
        return f"StructureConstantAlgebra(dim={self.dim}, unital={self.unital})"


def regular_representation(alg: StructureConstantAlgebra, a: Sequence) -> list[list]:
    """Matrix of ``x -> a x``; column ``j`` is ``a e_j``."""
    cols = [alg.mul(a, alg.basis_vector(j)) for j in range(alg.dim)]
    return linalg.transpose(cols) if cols else []


def unitalize(alg: StructureConstantAlgebra) -> StructureConstantAlgebra:
    """Adjoin a unit as basis element 0; ``alg`` sits in coordinates ``1..dim``."""
    n = alg.dim
    table = [[{} for _ in range(n + 1)] for _ in range(n + 1)]
    table[0][0] = {0: 1}
    for i in range(n):
        table[0][i + 1] = {i + 1: 1}
        table[i + 1][0] = {i + 1: 1}
        for j in range(n):
            table[i + 1][j + 1] = {k + 1: c for k, c in alg.table[i][j].items()}
    ident = [1] + [0] * n
    return StructureConstantAlgebra(alg.field, ["1"] + alg.labels, table, ident, check=False)


def _span_contains(basis_rref, pivots, v, field) -> bool:
    v = list(v)
    for row, p in zip(basis_rref, pivots):
        c = v[p]
        if c != 0:
            v = [x - c * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def _echelon(vectors, field):
    if not vectors:
        return [], []
    r, piv = linalg.rref(vectors, field)
    return r[:len(piv)], piv


def _check_ideal(alg, basis) -> None:
    rows, piv = _echelon(basis, alg.field)
    for v in basis:
        for i in range(alg.dim):
            e = alg.basis_vector(i)
            for w in (alg.mul(v, e), alg.mul(e, v)):
                if not _span_contains(rows, piv, w, alg.field):
                    raise AssertionError("computed radical is not a two-sided ideal")


def _check_nilpotent(alg, basis) -> None:
    current, _ = _echelon(basis, alg.field)
    dim = len(current)
    while current:
        products = [alg.mul(x, y) for x in current for y in basis]
        nxt, _ = _echelon([p for p in products if any(c != 0 for c in p)], alg.field)
        if len(nxt) >= dim:
            raise AssertionError("computed radical is not nilpotent")
        current, dim = nxt, len(nxt)


def trace_form(alg: StructureConstantAlgebra) -> list[list]:
    """``T[i][j] = trace(L_{e_i e_j})``."""
    tr = []
    for k in range(alg.dim):
        tr.append(sum((alg.table[k][i].get(i, alg.field.zero) for i in range(alg.dim)), alg.field.zero))
    z = alg.field.zero
    return [[sum((c * tr[k] for k, c in alg.table[i][j].items()), z) for j in range(alg.dim)]
            for i in range(alg.dim)]


def dickson_radical(alg: StructureConstantAlgebra, verify: bool = True) -> list[list]:
    """Basis of the Jacobson radical (characteristic 0 only).

    For a unital algebra this is ``{a : trace(L_{ab}) = 0 for all b}``. A
    non-unital algebra is unitalized first and the radical intersected back.
    """
    if not alg.field.is_rational:
        raise NotImplementedError("the trace-form radical needs characteristic 0")
    if not alg.unital:
        big = unitalize(alg)
        rad = dickson_radical(big, verify=False)
        # J(A+) lies inside A; intersect anyway to stay honest
        constrained = [v for v in rad]
        if any(v[0] != 0 for v in constrained):
            coeffs = linalg.nullspace([[v[0] for v in constrained]], alg.field)
            constrained = [[sum((c * v[k] for c, v in zip(comb, rad)), alg.field.zero)
                            for k in range(big.dim)] for comb in coeffs]
        basis = [v[1:] for v in constrained]
    else:
        t = trace_form(alg)
        basis = linalg.nullspace(linalg.transpose(t), alg.field)
    basis, _ = _echelon(basis, alg.field)
    if verify and basis:
        _check_ideal(alg, basis)
        _check_nilpotent(alg, basis)
    return basis


def is_semisimple_oracle(alg: StructureConstantAlgebra) -> bool:
    return not dickson_radical(alg)


def quotient_by(alg: StructureConstantAlgebra, ideal_basis) -> StructureConstantAlgebra:
    """``alg / I`` on a complement of the two-sided ideal ``I``."""
    rows, piv = _echelon(ideal_basis, alg.field)
    keep = [i for i in range(alg.dim) if i not in set(piv)]
    index = {i: k for k, i in enumerate(keep)}

    def reduce(v):
        v = list(v)
        for row, p in zip(rows, piv):
            c = v[p]
            if c != 0:
                v = [x - c * y for x, y in zip(v, row)]
        return {index[i]: v[i] for i in keep if v[i] != 0}

    table = [[reduce(alg.mul(alg.basis_vector(i), alg.basis_vector(j))) for j in keep] for i in keep]
    ident = None
    if alg.identity is not None:
        r = reduce(alg.identity)
        ident = [r.get(k, 0) for k in range(len(keep))]
    return StructureConstantAlgebra(alg.field, [alg.labels[i] for i in keep], table, ident)


def switch_realization(R: StructureConstantAlgebra, a0: Sequence) -> StructureConstantAlgebra:
    """Same space as ``R`` with product ``a·b = a a0 b`` (non-unital in general)."""
    n = R.dim
    left = [R.mul(R.basis_vector(i), a0) for i in range(n)]
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = R.mul(left[i], R.basis_vector(j))
            row.append({k: c for k, c in enumerate(v) if c != 0})
        table.append(row)
    return StructureConstantAlgebra(R.field, R.labels, table, None, check=False)


def quotient_ring_algebra(qr: QuotientRing) -> StructureConstantAlgebra:
    """The commutative algebra ``B`` on its standard monomial basis."""
    basis = qr.basis_elements()
    table = [[{k: c for k, c in enumerate(qr.coords(a * b)) if c != 0} for b in basis] for a in basis]
    labels = [format_monomial(m, qr.ring.names) or "1" for m in qr.standard_monomials]
    return StructureConstantAlgebra(qr.field, labels, table, qr.coords(qr.ring.one()))


def matrix_algebra(qr: QuotientRing, n: int) -> StructureConstantAlgebra:
    """``M_n(B)`` with basis ``E_st·μ`` ordered by (s, t, standard monomial)."""
    d = qr.dim
    basis = qr.basis_elements()

    def idx(s, t, m):
        return (s * n + t) * d + m

    size = n * n * d
    table = [[{} for _ in range(size)] for _ in range(size)]
    for s in range(n):
        for t in range(n):
            for a in range(d):
                for v in range(n):
                    for b in range(d):
                        prod = qr.coords(basis[a] * basis[b])
                        table[idx(s, t, a)][idx(t, v, b)] = {
                            idx(s, v, k): c for k, c in enumerate(prod) if c != 0}
    one = qr.coords(qr.ring.one())
    ident = [qr.field.zero] * size
    for s in range(n):
        for k in range(d):
            ident[idx(s, s, k)] = one[k]
    labels = [f"E{s + 1}{t + 1}*{format_monomial(m, qr.ring.names) or '1'}"
              for s in range(n) for t in range(n) for m in qr.standard_monomials]
    return StructureConstantAlgebra(qr.field, labels, table, ident)


def matrix_to_vector(qr: QuotientRing, mat) -> list:
    """Coordinates of an ``n x n`` matrix over ``B`` in the basis of :func:`matrix_algebra`."""
    out = []
    for row in mat:
        for x in row:
            out.extend(qr.coords(x))
    return out


def vector_to_matrix(qr: QuotientRing, n: int, v: Sequence) -> list:
    d = qr.dim
    return [[qr.from_coords(v[(s * n + t) * d:(s * n + t + 1) * d]) for t in range(n)] for s in range(n)]


class RealizationError(ValueError):
    pass


def build_realization(spec: CellularAlgebraSpec) -> StructureConstantAlgebra:
    """Unitalization of the split sum of the layer switch algebras.

    Basis: ``1`` then ``E_st·μ`` per layer; within a layer
    ``(E_st b)(E_uv b') = E_sv NF(b φ_tu b')``, across layers the product is 0.
    """
    for j, layer in enumerate(spec.layers, 1):
        qr = layer.ring
        if not qr.zero_dimensional:
            raise RealizationError(f"layer {j} ring is not finite-dimensional")
        if not layer.sigma_is_identity:
            raise RealizationError(f"layer {j} has a non-identity involution")
        n = layer.vdim
        for s in range(n):
            for t in range(n):
                if not qr.equal(layer.phi[s][t], layer.phi[t][s]):
                    raise RealizationError(f"layer {j} form is not symmetric")
    labels = ["1"]
    offsets = []
    for j, layer in enumerate(spec.layers, 1):
        offsets.append(len(labels))
        qr = layer.ring
        for s in range(layer.vdim):
            for t in range(layer.vdim):
                for m in qr.standard_monomials:
                    labels.append(f"L{j}:E{s + 1}{t + 1}*{format_monomial(m, qr.ring.names) or '1'}")
    size = len(labels)
    table = [[{} for _ in range(size)] for _ in range(size)]
    table[0][0] = {0: 1}
    for i in range(1, size):
        table[0][i] = {i: 1}
        table[i][0] = {i: 1}
    for layer, off in zip(spec.layers, offsets):
        qr = layer.ring
        n, d = layer.vdim, qr.dim
        basis = qr.basis_elements()

        def idx(s, t, m, off=off, n=n, d=d):
            return off + (s * n + t) * d + m

        for s in range(n):
            for t in range(n):
                for a in range(d):
                    for u in range(n):
                        mid = layer.phi[t][u]
                        if mid.is_zero():
                            continue
                        for v in range(n):
                            for b in range(d):
                                prod = qr.coords(basis[a] * mid * basis[b])
                                table[idx(s, t, a)][idx(u, v, b)] = {
                                    idx(s, v, k): c for k, c in enumerate(prod) if c != 0}
    ident = [1] + [0] * (size - 1)
    return StructureConstantAlgebra(spec.field, labels, table, ident)


# -- random corpus ---------------------------------------------------------

DESK_LIMITS = {"max_layers": 3, "max_n": 2, "max_deg": 3}


def _random_univariate(rng: random.Random, field: FieldSpec, deg: int, ring: PolyRing):
    x = ring.var(0)
    if rng.random() < 0.5:
        # product of linear factors, repeats allowed
        roots = [rng.randint(-2, 2) for _ in range(deg)]
        f = ring.one()
        for r in roots:
            f = f * (x - r)
        return f
    coeffs = [rng.randint(-3, 3) for _ in range(deg)]
    f = x ** deg
    for k, c in enumerate(coeffs):
        f = f + ring.constant(c) * x ** k
    return f


def _random_element(rng: random.Random, ring: PolyRing, deg: int):
    if rng.random() < 0.25:
        return ring.zero()
    x = ring.var(0)
    top = rng.randint(0, max(deg - 1, 0))
    f = ring.zero()
    for k in range(top + 1):
        f = f + ring.constant(rng.randint(-2, 2)) * x ** k
    return f


def random_instance(seed, max_layers: int = 3, max_n: int = 2, max_deg: int = 3,
                    field: FieldSpec = QQ) -> CellularAlgebraSpec:
    """Reproducible random spec: univariate layer rings, symmetric forms, identity involutions."""
    if not (1 <= max_layers and 1 <= max_n and 1 <= max_deg):
        raise ValueError("limits must be positive")
    rng = random.Random(seed)
    while True:
        layers = []
        for _ in range(rng.randint(1, max_layers)):
            ring = PolyRing(("x",), field)
            deg = rng.randint(1, max_deg)
            f = _random_univariate(rng, field, deg, ring)
            qr = QuotientRing(ring, [f])
            n = rng.randint(1, max_n)
            phi = [[None] * n for _ in range(n)]
            for s in range(n):
                for t in range(s, n):
                    phi[s][t] = phi[t][s] = _random_element(rng, ring, deg)
            layers.append(CellLayer(n, qr, phi))
        spec = CellularAlgebraSpec(field, layers)
        if validate_spec(spec).valid:
            return spec
