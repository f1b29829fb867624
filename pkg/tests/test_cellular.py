import random
from fractions import Fraction

import pytest

from affcell import linalg
from affcell.cellular import (
    CellLayer, CellularAlgebraSpec, SwitchElement, asymptotic_algebra, asymptotic_map, det_phi,
    mat_det, mat_equal, mat_identity, mat_mul, mat_transpose, phi_inverse,
    right_multiplication_operator, switch_multiply, validate_spec,
)
from affcell.fields import QQ
from affcell.polynomial import PolyRing
from affcell.quotient import INFINITE, QuotientRing, is_unit, is_zero_divisor

X = PolyRing(["x"], QQ)
K = PolyRing([], QQ)


def qr(ring, *gens):
    return QuotientRing(ring, [ring(g) for g in gens])


def layer(ring_qr, phi, sigma=None):
    return CellLayer(len(phi), ring_qr, phi, sigma)


def spec(*layers):
    return CellularAlgebraSpec(QQ, list(layers))


def random_element(rng, L, k=3):
    B = L.ring
    basis = B.basis_elements()
    coords = [[sum((b.scale(rng.randint(-k, k)) for b in basis), B.ring.zero())
               for _ in range(L.vdim)] for _ in range(L.vdim)]
    return L.element(coords)


def test_validate_examples():
    B = qr(X, "x^2 - x")
    assert validate_spec(spec(layer(B, [["1", "x"], ["x", "0"]]))).valid

    bad = validate_spec(spec(layer(qr(K), [["0", "1"], ["0", "0"]])))
    assert not bad.valid
    issue = bad.issues[0]
    assert issue.layer == 1 and issue.kind == "phi-compatibility"
    assert "phi[1][2]" in issue.message

    twisted = validate_spec(spec(layer(qr(X, "x^2"), [["x"]], {"x": "-x"})))
    assert not twisted.valid
    assert [i.kind for i in twisted.issues] == ["phi-compatibility"]
    assert "-x" in twisted.issues[0].witness


def test_validate_sigma_failures():
    # x -> x + 1 is not an involution and moves the ideal
    B = qr(X, "x^2")
    report = validate_spec(spec(layer(B, [["1"]], {"x": "x + 1"})))
    kinds = {i.kind for i in report.issues}
    assert {"sigma-involution", "sigma-ideal"} <= kinds
    # x -> -x on Q[x]/(x^2 - 1) is a valid involution with symmetric constant phi
    assert validate_spec(spec(layer(qr(X, "x^2 - 1"), [["1"]], {"x": "-x"}))).valid


def test_validate_reports_every_layer():
    good = layer(qr(K), [["1"]])
    bad = layer(qr(K), [["0", "1"], ["0", "0"]])
    report = validate_spec(spec(good, bad, bad))
    assert {i.layer for i in report.issues} == {2, 3}
    assert "layer 2" in str(report)


def test_spec_needs_layers_over_one_field():
    from affcell.fields import GF
    with pytest.raises(ValueError):
        CellularAlgebraSpec(QQ, [])
    F5 = PolyRing([], GF(5))
    with pytest.raises(ValueError):
        spec(layer(qr(K), [["1"]]), layer(QuotientRing(F5, []), [["1"]]))


def test_layer_multiply_basis_case():
    B = qr(X, "x^3")
    L = layer(B, [["1", "x"], ["x^2", "2"]])
    prod = L.basis_element(0, 1) * L.basis_element(0, 0)
    assert prod == L.basis_element(0, 0, L.phi[1][0])
    assert prod.coords[0][0] == X("x^2")


def test_layer_multiply_identity_and_zero_phi():
    B = qr(X, "x^2 - 2")
    rng = random.Random(0)
    ident = layer(B, [["1", "0"], ["0", "1"]])
    zero = layer(B, [["0", "0"], ["0", "0"]])
    for _ in range(10):
        a, b = random_element(rng, ident), random_element(rng, ident)
        assert (a * b).coords == mat_mul(B, a.coords, b.coords)
        a0, b0 = zero.element(a.coords), zero.element(b.coords)
        assert (a0 * b0).is_zero()


def test_layer_multiply_rejects_foreign_elements():
    B = qr(K)
    L1, L2 = layer(B, [["1"]]), layer(B, [["1"]])
    with pytest.raises(ValueError):
        L1.basis_element(0, 0) * L2.basis_element(0, 0)


def test_layer_multiply_associative_and_bilinear():
    B = qr(X, "x^2 - x")
    L = layer(B, [["1", "x"], ["x", "x + 1"]])
    rng = random.Random(1)
    for _ in range(25):
        a, b, c = (random_element(rng, L) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        s, t = Fraction(rng.randint(-3, 3), 2), Fraction(rng.randint(-3, 3))
        assert (a.scale(s) + b.scale(t)) * c == (a * c).scale(s) + (b * c).scale(t)
        assert a * (b.scale(s) + c.scale(t)) == (a * b).scale(s) + (a * c).scale(t)


def test_layer_multiply_matches_switch_product():
    B = qr(X, "x^2 - x")
    L = layer(B, [["1", "x"], ["x", "0"]])
    rng = random.Random(2)
    mul = lambda p, q: mat_mul(B, p, q)  # noqa: E731
    for _ in range(20):
        a, b = random_element(rng, L), random_element(rng, L)
        sw = switch_multiply(SwitchElement(a.coords, L.phi, mul), SwitchElement(b.coords, L.phi, mul))
        assert mat_equal(B, sw.value, (a * b).coords)


def test_switch_multiply_examples():
    assert (SwitchElement(3, 2) * SwitchElement(5, 2)).value == 30
    assert (SwitchElement(7, 0) * SwitchElement(-4, 0)).value == 0
    assert (SwitchElement(1, 2) + SwitchElement(4, 2)).value == 5
    with pytest.raises(ValueError):
        SwitchElement(1, 2) * SwitchElement(1, 3)


def test_switch_multiply_associative_on_rational_matrices():
    rng = random.Random(3)

    def rand():
        return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)] for _ in range(2)]

    mul = lambda p, q: linalg.matmul(p, q, QQ)  # noqa: E731
    for _ in range(50):
        pivot = rand()
        a, b, c = (SwitchElement(rand(), pivot, mul) for _ in range(3))
        assert ((a * b) * c).value == (a * (b * c)).value


def test_det_examples():
    assert det_phi(layer(qr(X, "x^2 - 1"), [["1", "x"], ["x", "1"]])).is_zero()
    assert det_phi(layer(qr(K), [["0", "1"], ["1", "0"]])) == K("-1")
    B = qr(X, "x^5")
    assert det_phi(layer(B, [["x^3 + 2"]])) == X("x^3 + 2")


def test_det_matches_gaussian_elimination_and_transpose():
    rng = random.Random(4)
    for n in range(1, 5):
        for _ in range(5):
            m = [[K.constant(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(n)] for _ in range(n)]
            B = qr(K)
            d = mat_det(B, m)
            plain = [[x.constant_value() for x in row] for row in m]
            assert d == K.constant(linalg.det(plain, QQ))
            assert mat_det(B, mat_transpose(m)) == d
    B = qr(X, "x^3 - 2")
    L = layer(B, [["x", "x^2", "1"], ["x^2", "1", "x"], ["1", "x", "x + 1"]])
    assert mat_det(B, mat_transpose(L.phi)) == det_phi(L)


def test_phi_inverse_examples():
    assert phi_inverse(layer(qr(K), [["2"]])) == [[K("1/2")]]
    assert phi_inverse(layer(qr(X, "x^2 - 1"), [["x"]])) == [[X("x")]]
    assert phi_inverse(layer(qr(X, "x^2"), [["x"]])) is None


def test_phi_inverse_two_by_two():
    B = qr(X, "x^2 - 2")
    L = layer(B, [["1", "x"], ["x", "3"]])  # det = 3 - 2 = 1
    inv = phi_inverse(L)
    assert mat_equal(B, mat_mul(B, L.phi, inv), mat_identity(B, 2))
    assert mat_equal(B, mat_mul(B, inv, L.phi), mat_identity(B, 2))


def test_asymptotic_algebra_examples():
    one = asymptotic_algebra(spec(layer(qr(X, "x^2 - x"), [["1", "0"], ["0", "1"]])))
    assert one.dim == 8
    assert one.describe().startswith("M_2(")
    two = asymptotic_algebra(spec(layer(qr(K), [["1"]]), layer(qr(K), [["1"]])))
    assert two.dim == 2
    assert two.describe() == "M_1(Q) ⊕ M_1(Q)"
    inf = asymptotic_algebra(spec(layer(qr(K), [["1"]]), layer(qr(X), [["x"]])))
    assert inf.dim == INFINITE


def test_asymptotic_map_zero_phi():
    B = qr(X, "x^2 - 3")
    L = layer(B, [["0", "0"], ["0", "0"]])
    a = random_element(random.Random(5), L)
    assert all(B.is_zero(x) for row in asymptotic_map(L, a) for x in row)


def test_asymptotic_map_invertible_phi_is_bijective():
    B = qr(X, "x^2 - 1")
    L = layer(B, [["x", "1"], ["1", "0"]])  # det = -1
    inv = phi_inverse(L)
    rng = random.Random(6)
    for _ in range(10):
        a = random_element(rng, L)
        back = mat_mul(B, asymptotic_map(L, a), inv)
        assert mat_equal(B, back, a.coords)
    op = right_multiplication_operator(B, L.phi)
    assert linalg.rank(op, QQ) == len(op)


def test_asymptotic_map_with_zero_divisor_determinant():
    B = qr(X, "x^2 - x")
    L = layer(B, [["1", "0"], ["0", "x"]])
    assert det_phi(L) == X("x")
    rng = random.Random(7)
    for _ in range(20):
        a, b = random_element(rng, L), random_element(rng, L)
        assert mat_equal(B, asymptotic_map(L, a * b),
                         mat_mul(B, asymptotic_map(L, a), asymptotic_map(L, b)))
    op = right_multiplication_operator(B, L.phi)
    assert len(op) == 8
    kernel = linalg.nullspace(op, QQ)
    assert kernel
    # turn a kernel vector back into a matrix over B and check it maps to 0
    d = B.dim
    v = kernel[0]
    mons = B.basis_elements()
    coords = [[sum((mons[k].scale(v[(s * 2 + t) * d + k]) for k in range(d)), X.zero())
               for t in range(2)] for s in range(2)]
    elem = L.element(coords)
    assert not elem.is_zero()
    assert all(B.is_zero(x) for row in asymptotic_map(L, elem) for x in row)


def test_mccoy_cross_check():
    """X -> X·phi is singular exactly when det(phi) is a zero-divisor."""
    rng = random.Random(8)
    rings = [qr(X, "x^2 - x"), qr(X, "x^2"), qr(X, "x^2 - 2"), qr(X, "x^3 - x")]
    for _ in range(40):
        B = rng.choice(rings)
        basis = B.basis_elements()

        def entry():
            return sum((b.scale(rng.randint(-2, 2)) for b in basis), X.zero())

        a, c = entry(), entry()
        phi = [[a, c], [c, entry()]]
        L = layer(B, phi)
        op = right_multiplication_operator(B, L.phi)
        singular = linalg.rank(op, QQ) < len(op)
        d = det_phi(L)
        assert singular == is_zero_divisor(B, d).is_zero_divisor
        assert singular == (not is_unit(B, d).is_unit)
