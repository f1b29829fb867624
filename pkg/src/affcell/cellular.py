"""Layer data of an affine cellular algebra and its constructions.

A layer ``V ⊗ B ⊗ V`` with ``V`` free of rank ``n`` is identified with
``n x n`` matrices over ``B``: ``v_s ⊗ b ⊗ v_t`` is ``b`` at position
``(s, t)``. Multiplication is ``X * Y = X φ Y`` with ``φ`` the Gram matrix
of the layer's bilinear form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .fields import FieldSpec
from .linalg import transpose
from .polynomial import Polynomial, PolyRing
from .quotient import INFINITE, QuotientRing, is_unit

Matrix = list  # list[list[Polynomial]]


def mat_mul(qr: QuotientRing, a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = qr.ring.zero()
            for t in range(k):
                if a[i][t] and b[t][j]:
                    s = s + a[i][t] * b[t][j]
            row.append(qr.nf(s))
        out.append(row)
    return out


def mat_add(qr: QuotientRing, a: Matrix, b: Matrix) -> Matrix:
    return [[qr.nf(x + y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(qr: QuotientRing, c, a: Matrix) -> Matrix:
    return [[qr.nf(x.scale(c)) for x in r] for r in a]


def mat_identity(qr: QuotientRing, n: int) -> Matrix:
    return [[qr.one() if i == j else qr.zero() for j in range(n)] for i in range(n)]


def mat_zero(qr: QuotientRing, n: int) -> Matrix:
    return [[qr.zero() for _ in range(n)] for _ in range(n)]


def mat_equal(qr: QuotientRing, a: Matrix, b: Matrix) -> bool:
    return all(qr.equal(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def mat_det(qr: QuotientRing, a: Matrix) -> Polynomial:
    """Laplace expansion memoised over column subsets; valid over any commutative ring."""
    n = len(a)
    if n == 0:
        return qr.one()
    memo: dict[int, Polynomial] = {}

    def minor(row: int, cols: int) -> Polynomial:
        # determinant of rows row..n-1 restricted to the columns in bitmask ``cols``
        if row == n:
            return qr.one()
        if cols in memo:
            return memo[cols]
        total = qr.ring.zero()
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                entry = a[row][c]
                if entry:
                    sub = minor(row + 1, cols & ~(1 << c))
                    if sub:
                        term = entry * sub
                        total = total + term if sign > 0 else total - term
                sign = -sign
        total = qr.nf(total)
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def mat_adjugate(qr: QuotientRing, a: Matrix) -> Matrix:
    n = len(a)
    if n == 1:
        return [[qr.one()]]
    adj = mat_zero(qr, n)
    for i in range(n):
        for j in range(n):
            sub = [[a[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = mat_det(qr, sub)
            adj[j][i] = d if (i + j) % 2 == 0 else qr.nf(-d)
    return adj


class CellLayer:
    """One layer ``(n, B, φ, σ)``.

    ``phi`` entries and ``sigma`` images may be polynomials or expression
    strings; ``sigma`` maps variable names to images and defaults to the
    identity.
    """

    def __init__(self, vdim: int, ring: QuotientRing, phi: Sequence[Sequence],
                 sigma: dict | None = None):
        if vdim < 1:
            raise ValueError("vdim must be a positive integer")
        if len(phi) != vdim or any(len(row) != vdim for row in phi):
            raise ValueError(f"phi must be {vdim}x{vdim}")
        self.vdim = vdim
        self.ring = ring
        self.phi: Matrix = [[ring(x) for x in row] for row in phi]
        sigma = dict(sigma or {})
        for name in sigma:
            ring.ring.index(name)
        self.sigma_images: dict[str, Polynomial] = {k: ring.ring(v) for k, v in sigma.items()}

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def sigma_is_identity(self) -> bool:
        return all(self.ring.equal(img, self.ring.ring.var(name))
                   for name, img in self.sigma_images.items())

    def sigma(self, f: Polynomial) -> Polynomial:
        """Apply the involution and reduce."""
        images = [self.sigma_images.get(name, self.ring.ring.var(i))
                  for i, name in enumerate(self.ring.ring.names)]
        return self.ring.nf(f.substitute(images))

    @cached_property
    def det(self) -> Polynomial:
        return mat_det(self.ring, self.phi)

    def element(self, coords: Sequence[Sequence]) -> "LayerElement":
        return LayerElement(self, [[self.ring(x) for x in row] for row in coords])

    def basis_element(self, s: int, t: int, b=1) -> "LayerElement":
        m = mat_zero(self.ring, self.vdim)
        m[s][t] = self.ring(b)
        return LayerElement(self, m)

    def __repr__(self):
        return f"CellLayer(vdim={self.vdim}, ring={self.ring!r}, phi={[[str(x) for x in r] for r in self.phi]})"


@dataclass
class CellularAlgebraSpec:
    """Ordered layers, bottom to top, over a shared ground field."""

    field: FieldSpec
    layers: list = field(default_factory=list)

    def __post_init__(self):
        if not self.layers:
            raise ValueError("a cellular algebra needs at least one layer")
        for j, layer in enumerate(self.layers, 1):
            if layer.field != self.field:
                raise ValueError(f"layer {j} is over {layer.field}, expected {self.field}")

    def with_top_layer(self) -> "CellularAlgebraSpec":
        """Append the layer ``(V = K, B = K, φ = (1))``."""
        qr = QuotientRing(PolyRing((), self.field), [])
        return CellularAlgebraSpec(self.field, list(self.layers) + [CellLayer(1, qr, [[1]])])


@dataclass
class ValidationIssue:
    layer: int
    kind: str
    message: str
    witness: str = ""


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join(f"layer {i.layer}: {i.kind}: {i.message}" + (f" [{i.witness}]" if i.witness else "")
                         for i in self.issues)


def validate_layer(layer: CellLayer, index: int = 1) -> list[ValidationIssue]:
    issues = []
    qr = layer.ring
    if qr.gb.is_unit_ideal():
        issues.append(ValidationIssue(index, "zero-ring", "the ideal is the unit ideal, so B = 0"))
    for s, row in enumerate(layer.phi):
        for t, x in enumerate(row):
            if not qr.nf(x) == x:
                issues.append(ValidationIssue(index, "phi-normal-form", f"phi[{s + 1}][{t + 1}] not reduced", str(x)))
    ring = qr.ring
    for i, name in enumerate(ring.names):
        back = layer.sigma(layer.sigma(ring.var(i)))
        if not qr.equal(back, ring.var(i)):
            issues.append(ValidationIssue(index, "sigma-involution",
                                          f"sigma(sigma({name})) != {name}", f"sigma(sigma({name})) = {back}"))
    for g in qr.ideal.generators:
        img = layer.sigma(g)
        if not img.is_zero():
            issues.append(ValidationIssue(index, "sigma-ideal", f"sigma does not preserve the ideal at {g}",
                                          f"NF(sigma({g})) = {img}"))
    n = layer.vdim
    for s in range(n):
        for t in range(n):
            lhs = layer.sigma(layer.phi[s][t])
            rhs = layer.phi[t][s]
            if not qr.equal(lhs, rhs):
                issues.append(ValidationIssue(
                    index, "phi-compatibility",
                    f"sigma(phi[{s + 1}][{t + 1}]) != phi[{t + 1}][{s + 1}]",
                    f"sigma(phi[{s + 1}][{t + 1}]) = {lhs}, phi[{t + 1}][{s + 1}] = {rhs}"))
    return issues


def validate_spec(spec: CellularAlgebraSpec) -> ValidationReport:
    report = ValidationReport()
    for j, layer in enumerate(spec.layers, 1):
        report.issues.extend(validate_layer(layer, j))
    return report


@dataclass
class LayerElement:
    layer: CellLayer
    coords: Matrix

    def __mul__(self, other: "LayerElement") -> "LayerElement":
        return layer_multiply(self, other)

    def __add__(self, other: "LayerElement") -> "LayerElement":
        _same_layer(self, other)
        return LayerElement(self.layer, mat_add(self.layer.ring, self.coords, other.coords))

    def scale(self, c) -> "LayerElement":
        return LayerElement(self.layer, mat_scale(self.layer.ring, c, self.coords))

    def __eq__(self, other):
        if not isinstance(other, LayerElement) or other.layer is not self.layer:
            return NotImplemented
        return mat_equal(self.layer.ring, self.coords, other.coords)

    def is_zero(self) -> bool:
        return all(self.layer.ring.is_zero(x) for r in self.coords for x in r)


def _same_layer(a: LayerElement, b: LayerElement):
    if a.layer is not b.layer:
        raise ValueError("elements belong to different layers")


def layer_multiply(a: LayerElement, b: LayerElement) -> LayerElement:
    """``(u ⊗ b ⊗ v)(u' ⊗ b' ⊗ v') = u ⊗ b φ(v, u') b' ⊗ v'`` in matrix form."""
    _same_layer(a, b)
    qr = a.layer.ring
    return LayerElement(a.layer, mat_mul(qr, mat_mul(qr, a.coords, a.layer.phi), b.coords))


class SwitchElement:
    """Element of ``S(Λ, a0)``: same additive structure, product ``a·b = a a0 b``.

    ``value`` and ``pivot`` may be anything supporting ``+`` and ``*``; pass
    ``mul`` to override multiplication in the underlying algebra.
    """

    __slots__ = ("value", "pivot", "_mul")

    def __init__(self, value, pivot, mul=None):
        self.value = value
        self.pivot = pivot
        self._mul = mul or (lambda x, y: x * y)

    def _check(self, other: "SwitchElement"):
        if not isinstance(other, SwitchElement):
            raise TypeError("expected a SwitchElement")
        if not (other.pivot is self.pivot or other.pivot == self.pivot):
            raise ValueError("switch elements with different pivots")

    def __add__(self, other):
        self._check(other)
        return SwitchElement(self.value + other.value, self.pivot, self._mul)

    def __mul__(self, other):
        return switch_multiply(self, other)

    def scale(self, c):
        return SwitchElement(c * self.value, self.pivot, self._mul)

    def __eq__(self, other):
        return isinstance(other, SwitchElement) and self.value == other.value and self.pivot == other.pivot

    def __repr__(self):
        return f"SwitchElement({self.value!r}, pivot={self.pivot!r})"


def switch_multiply(a: SwitchElement, b: SwitchElement) -> SwitchElement:
    a._check(b)
    return SwitchElement(a._mul(a._mul(a.value, a.pivot), b.value), a.pivot, a._mul)


def det_phi(layer: CellLayer) -> Polynomial:
    return layer.det


def phi_inverse(layer: CellLayer) -> Matrix | None:
    """``det^{-1} · adj(φ)`` when the determinant is a unit, else ``None``."""
    qr = layer.ring
    check = is_unit(qr, layer.det)
    if not check.is_unit:
        return None
    inv = mat_scale_poly(qr, check.inverse, mat_adjugate(qr, layer.phi))
    if not mat_equal(qr, mat_mul(qr, layer.phi, inv), mat_identity(qr, layer.vdim)):
        raise ArithmeticError("adjugate inverse failed verification")
    return inv


def mat_scale_poly(qr: QuotientRing, c: Polynomial, a: Matrix) -> Matrix:
    return [[qr.nf(c * x) for x in r] for r in a]


@dataclass
class AsymptoticSummand:
    layer: int
    n: int
    ring: QuotientRing
    dim_B: object

    @property
    def dim(self):
        return INFINITE if self.dim_B == INFINITE else self.n * self.n * self.dim_B

    def describe(self) -> str:
        names = ",".join(self.ring.ring.names)
        base = str(self.ring.field) if not names else f"{self.ring.field}[{names}]/{self.ring.ideal}"
        return f"M_{self.n}({base})"


@dataclass
class AsymptoticAlgebra:
    """Formal direct sum of full matrix rings over the layer rings."""

    summands: list

    @property
    def dim(self):
        dims = [s.dim for s in self.summands]
        return INFINITE if INFINITE in dims else sum(dims)

    def describe(self) -> str:
        return " ⊕ ".join(s.describe() for s in self.summands)


def asymptotic_algebra(spec: CellularAlgebraSpec) -> AsymptoticAlgebra:
    return AsymptoticAlgebra([AsymptoticSummand(j, layer.vdim, layer.ring, layer.ring.dim)
                              for j, layer in enumerate(spec.layers, 1)])


def asymptotic_map(layer: CellLayer, a: LayerElement) -> Matrix:
    """The homomorphism ``X -> X φ`` into ``M_n(B)``; bijective iff ``det φ`` is a unit."""
    if a.layer is not layer:
        raise ValueError("element does not belong to this layer")
    return mat_mul(layer.ring, a.coords, layer.phi)


def right_multiplication_operator(qr: QuotientRing, phi: Matrix) -> list[list]:
    """K-matrix of ``X -> X φ`` on ``M_n(B)`` for zero-dimensional ``B``.

    Coordinates of ``X`` are ordered by (row, column, standard monomial).
    """
    n = len(phi)
    d = qr.dim
    cols = []
    for s in range(n):
        for t in range(n):
            for mono in qr.basis_elements():
                # E_st·mono times φ has row s equal to mono·φ[t][:]
                img = [qr.field.zero] * (n * n * d)
                for v in range(n):
                    c = qr.coords(mono * phi[t][v])
                    base = (s * n + v) * d
                    img[base:base + d] = c
                cols.append(img)
    return transpose(cols)
