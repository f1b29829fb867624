"""Verdicts on ring-theoretic properties of an affine cellular algebra.

Every verdict is computed from layer data only: the layer rings B_j and
the determinants of the bilinear forms. YES and NO always come with a
per-layer certificate; UNKNOWN names the sufficient condition that failed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from .cellular import CellLayer, CellularAlgebraSpec, asymptotic_algebra
from .quotient import (
    INFINITE, EtaleCheck, RadicalCheck, UnitCheck, ZeroDivisorCheck,
    is_etale, is_radical, is_unit, is_zero_divisor,
)


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


class InternalInconsistency(AssertionError):
    """Two verdicts that must agree did not; always a bug."""


PROPERTIES = ("artinian", "semisimple", "jacobson_semisimple", "semiprime", "separable")

CITATIONS = {
    "artinian": "artinian-iff-every-layer-ring-zero-dimensional",
    "semisimple": "semisimple-iff-reduced-zero-dimensional-and-forms-invertible",
    "jacobson_semisimple": "jacobson-semisimple-if-reduced-and-forms-non-zero-divisors",
    "semiprime": "semiprime-if-reduced-and-forms-non-zero-divisors",
    "separable": "separable-iff-layer-rings-etale-and-forms-invertible",
    "asymptotic": "semisimple-iff-isomorphic-to-asymptotic-and-reduced-zero-dimensional",
}


class LayerFacts:
    """Lazily computed facts about one layer; each is computed at most once."""

    def __init__(self, index: int, layer: CellLayer):
        self.index = index
        self.layer = layer

    @property
    def ring(self):
        return self.layer.ring

    @property
    def dim(self):
        return self.ring.dim

    @property
    def zero_dimensional(self) -> bool:
        return self.ring.zero_dimensional

    @cached_property
    def radical(self) -> RadicalCheck:
        return is_radical(self.ring)

    @cached_property
    def etale(self) -> EtaleCheck:
        return is_etale(self.ring)

    @property
    def det(self):
        return self.layer.det

    @cached_property
    def det_unit(self) -> UnitCheck:
        return is_unit(self.ring, self.det)

    @cached_property
    def det_zero_divisor(self) -> ZeroDivisorCheck:
        return is_zero_divisor(self.ring, self.det)

    def _computed(self, name: str) -> bool:
        return name in self.__dict__

    def to_json(self) -> dict:
        radical = None
        if self._computed("radical"):
            r = self.radical.certificate()
            radical = {"answer": r["answer"], "reason": r["reason"],
                       "minimal_polynomials": r["minimal_polynomials"]}
        elif self._computed("etale"):
            e = self.etale
            radical = {"answer": "YES" if e.answer else "NO", "reason": e.reason,
                       "minimal_polynomials": [{"variable": v, "polynomial": str(m), "separable": s}
                                               for v, m, s in e.minimal_polynomials]}
        unit = self.det_unit.is_unit if self._computed("det_unit") else None
        witness = None
        if self._computed("det_unit") and self.det_unit.is_unit and self.det_unit.inverse is not None:
            witness = {"kind": "inverse", "element": str(self.det_unit.inverse)}
        elif self._computed("det_zero_divisor") and self.det_zero_divisor.is_zero_divisor:
            w = self.det_zero_divisor.witness
            witness = {"kind": "annihilator", "element": None if w is None else str(w)}
        out = {
            "index": self.index,
            "dimK": "infinite" if self.dim == INFINITE else self.dim,
            "radical": radical,
            "detPhi": str(self.det),
            "detPhiUnit": unit,
            "witness": witness,
        }
        if self._computed("det_zero_divisor"):
            out["detPhiZeroDivisor"] = self.det_zero_divisor.is_zero_divisor
        if self._computed("etale"):
            out["etale"] = self.etale.answer
        return out


class Analysis:
    """Shared per-layer cache for all verdicts on one spec."""

    def __init__(self, spec: CellularAlgebraSpec):
        self.spec = spec
        self.layers = [LayerFacts(j, layer) for j, layer in enumerate(spec.layers, 1)]


@dataclass
class Verdict:
    property: str
    answer: Answer
    cited_statement: str
    reason: str = ""
    layers: list = field(default_factory=list)  # LayerFacts consulted

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "answer": self.answer.value,
            "reason": self.reason,
            "layers": [f.to_json() for f in self.layers],
            "citedStatement": self.cited_statement,
        }

    def __str__(self):
        return f"{self.property}: {self.answer.value}" + (f" ({self.reason})" if self.reason else "")


def _analysis(spec_or_analysis) -> Analysis:
    if isinstance(spec_or_analysis, Analysis):
        return spec_or_analysis
    return Analysis(spec_or_analysis)


def check_artinian(spec) -> Verdict:
    a = _analysis(spec)
    bad = [f.index for f in a.layers if not f.zero_dimensional]
    if bad:
        return Verdict("artinian", Answer.NO, CITATIONS["artinian"],
                       f"layer {bad[0]} ring is not zero-dimensional", a.layers)
    dims = [f.dim for f in a.layers]
    return Verdict("artinian", Answer.YES, CITATIONS["artinian"],
                   f"every layer ring is finite-dimensional (dims {dims})", a.layers)


def check_semisimple(spec) -> Verdict:
    a = _analysis(spec)
    seen = []
    for f in a.layers:
        seen.append(f)
        if not f.zero_dimensional:
            return Verdict("semisimple", Answer.NO, CITATIONS["semisimple"],
                           f"layer {f.index} ring is not zero-dimensional", seen)
        if not f.radical.answer:
            return Verdict("semisimple", Answer.NO, CITATIONS["semisimple"],
                           f"layer {f.index} ring is not reduced: {f.radical.reason}", seen)
        if not f.det_unit.is_unit:
            return Verdict("semisimple", Answer.NO, CITATIONS["semisimple"],
                           f"layer {f.index} form is not invertible: det = {f.det} is not a unit", seen)
    return Verdict("semisimple", Answer.YES, CITATIONS["semisimple"],
                   "all layer rings reduced and zero-dimensional, all determinants units", seen)


def _sufficient(spec, prop: str) -> Verdict:
    a = _analysis(spec)
    seen = []
    for f in a.layers:
        seen.append(f)
        if f.radical.answer is None:
            return Verdict(prop, Answer.UNKNOWN, CITATIONS[prop],
                           f"layer {f.index}: reducedness undecided ({f.radical.reason})", seen)
        if not f.radical.answer:
            return Verdict(prop, Answer.UNKNOWN, CITATIONS[prop],
                           f"layer {f.index} not reduced", seen)
        if f.det_zero_divisor.is_zero_divisor:
            return Verdict(prop, Answer.UNKNOWN, CITATIONS[prop],
                           f"layer {f.index}: pivot is a zero-divisor (det = {f.det})", seen)
    return Verdict(prop, Answer.YES, CITATIONS[prop],
                   "all layer rings reduced, no determinant is a zero-divisor", seen)


def check_jacobson_sufficient(spec) -> Verdict:
    """YES or UNKNOWN only; the criterion is sufficient, not necessary."""
    return _sufficient(spec, "jacobson_semisimple")


def check_semiprime_sufficient(spec) -> Verdict:
    return _sufficient(spec, "semiprime")


def check_separable(spec) -> Verdict:
    a = _analysis(spec)
    verdict = None
    seen = []
    for f in a.layers:
        seen.append(f)
        if not f.etale.answer:
            verdict = Verdict("separable", Answer.NO, CITATIONS["separable"],
                              f"layer {f.index} ring is not etale: {f.etale.reason}", seen)
            break
        if not f.det_unit.is_unit:
            verdict = Verdict("separable", Answer.NO, CITATIONS["separable"],
                              f"layer {f.index} form is not invertible: det = {f.det} is not a unit", seen)
            break
    if verdict is None:
        verdict = Verdict("separable", Answer.YES, CITATIONS["separable"],
                          "all layer rings etale, all determinants units", seen)
    # over a perfect field separability and semisimplicity coincide
    semisimple = check_semisimple(a)
    if a.spec.field.is_perfect and semisimple.answer != verdict.answer:
        raise InternalInconsistency(
            f"separable={verdict.answer.value} but semisimple={semisimple.answer.value}")
    return verdict


CHECKS = {
    "artinian": check_artinian,
    "semisimple": check_semisimple,
    "jacobson_semisimple": check_jacobson_sufficient,
    "semiprime": check_semiprime_sufficient,
    "separable": check_separable,
}


@dataclass
class Report:
    verdicts: dict
    asymptotic: dict
    combined: dict
    analysis: Analysis

    def to_json(self) -> dict:
        return {
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "layers": [f.to_json() for f in self.analysis.layers],
            "asymptotic": self.asymptotic,
            "asymptoticCriterion": self.combined,
        }


def full_report(spec: CellularAlgebraSpec) -> Report:
    """All five verdicts with full per-layer certificates and cross-verdict checks."""
    a = Analysis(spec)
    verdicts = {name: CHECKS[name](a) for name in PROPERTIES}
    # gather every certificate, not just the short-circuited ones
    for f in a.layers:
        f.radical, f.det_unit, f.det_zero_divisor
        if f.zero_dimensional:
            f.etale
        for v in verdicts.values():
            if f not in v.layers:
                v.layers.append(f)
    for v in verdicts.values():
        v.layers.sort(key=lambda f: f.index)

    all_units = all(f.det_unit.is_unit for f in a.layers)
    reduced_zero_dim = all(f.zero_dimensional and f.radical.answer for f in a.layers)
    semisimple = verdicts["semisimple"].answer is Answer.YES
    if semisimple != (all_units and reduced_zero_dim):
        raise InternalInconsistency("semisimple verdict disagrees with the asymptotic criterion")
    if verdicts["artinian"].answer is Answer.NO and semisimple:
        raise InternalInconsistency("semisimple but not artinian")
    if (verdicts["artinian"].answer is Answer.YES
            and verdicts["jacobson_semisimple"].answer is Answer.YES and not semisimple):
        raise InternalInconsistency("artinian and Jacobson semisimple but not semisimple")
    if semisimple and verdicts["jacobson_semisimple"].answer is not Answer.YES:
        raise InternalInconsistency("semisimple but the Jacobson criterion did not pass")

    asym = asymptotic_algebra(spec)
    asymptotic = {
        "description": asym.describe(),
        "dimK": "infinite" if asym.dim == INFINITE else asym.dim,
        "summands": [{"layer": s.layer, "n": s.n,
                      "dimB": "infinite" if s.dim_B == INFINITE else s.dim_B,
                      "dimK": "infinite" if s.dim == INFINITE else s.dim} for s in asym.summands],
    }
    combined = {
        "isomorphicToAsymptotic": all_units,
        "reducedZeroDimensional": reduced_zero_dim,
        "semisimple": semisimple,
        "equivalenceHolds": True,
        "citedStatement": CITATIONS["asymptotic"],
    }
    return Report(verdicts, asymptotic, combined, a)
