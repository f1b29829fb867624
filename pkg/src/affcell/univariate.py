"""Univariate gcd and separability over exact fields."""
from __future__ import annotations

from .polynomial import Polynomial


def _common_variable(*polys: Polynomial) -> int | None:
    var = None
    for f in polys:
        try:
            i = f.univariate_index()
        except ValueError:
            raise ValueError(f"{f} is multivariate") from None
        if i is None:
            continue
        if var is not None and i != var:
            raise ValueError("polynomials are univariate in different variables")
        var = i
    return var


def to_dense(f: Polynomial, var: int | None) -> list:
    """Coefficients ``[c_0, c_1, ...]``; empty for the zero polynomial."""
    if f.is_zero():
        return []
    if var is None:
        return [f.constant_value()]
    out = [f.field.zero] * (f.degree(var) + 1)
    for m, c in f._terms.items():
        out[m[var]] = c
    return out


def from_dense(coeffs: list, ring, var: int | None) -> Polynomial:
    t = {}
    for k, c in enumerate(coeffs):
        if c != 0:
            e = [0] * ring.nvars
            if k:
                e[var] = k
            t[tuple(e)] = c
    return Polynomial(ring, t)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_rem(a: list, b: list) -> list:
    a = list(a)
    inv = 1 / b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        q = a[-1] * inv
        shift = len(a) - 1 - db
        for k, c in enumerate(b):
            a[shift + k] = a[shift + k] - q * c
        a.pop()
        _trim(a)
    return a


def dense_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [b[-1] * 0] * (len(a) - db)
    inv = 1 / b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1] * inv
        shift = len(a) - 1 - db
        q[shift] = c
        for k, bc in enumerate(b):
            a[shift + k] = a[shift + k] - c * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def dense_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, dense_rem(a, b)
    if not a:
        return []
    inv = 1 / a[-1]
    return [c * inv for c in a]


def gcd_univariate(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0) == 0``."""
    if f.ring != g.ring:
        raise ValueError("polynomials live in different rings")
    var = _common_variable(f, g)
    return from_dense(dense_gcd(to_dense(f, var), to_dense(g, var)), f.ring, var)


def is_squarefree(f: Polynomial) -> bool:
    if f.is_zero():
        raise ValueError("the zero polynomial has no squarefree status")
    var = _common_variable(f)
    if var is None:
        return True
    return gcd_univariate(f, f.diff(var)).is_constant()


def is_separable_univariate(f: Polynomial) -> bool:
    """True iff ``gcd(f, f')`` is constant, i.e. no repeated roots over the closure."""
    return is_squarefree(f)


def exact_quotient_univariate(f: Polynomial, g: Polynomial) -> Polynomial:
    var = _common_variable(f, g)
    q, r = dense_divmod(to_dense(f, var), to_dense(g, var))
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    return from_dense(q, f.ring, var)
