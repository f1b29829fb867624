import json
import random

import pytest

from affcell.cellular import CellLayer, CellularAlgebraSpec
from affcell.decide import (
    Analysis, Answer, CHECKS, InternalInconsistency, PROPERTIES, check_artinian,
    check_jacobson_sufficient, check_semiprime_sufficient, check_semisimple, check_separable,
    full_report,
)
from affcell.fields import GF, QQ
from affcell.groebner import Ideal, buchberger, ideal_sum
from affcell.oracle import random_instance
from affcell.polynomial import PolyRing
from affcell.quotient import QuotientRing, is_unit
from affcell.univariate import gcd_univariate

X = PolyRing(["x"], QQ)
Y = PolyRing(["y"], QQ)
K = PolyRing([], QQ)


def one_layer(ring, gens, phi, field=QQ, sigma=None):
    qr = QuotientRing(ring, [ring(g) for g in gens])
    return CellularAlgebraSpec(field, [CellLayer(len(phi), qr, phi, sigma)])


def test_artinian_examples():
    s = CellularAlgebraSpec(QQ, [
        CellLayer(1, QuotientRing(X, [X("x^2 - 1")]), [["1"]]),
        CellLayer(1, QuotientRing(Y, [Y("y^3")]), [["1"]]),
    ])
    v = check_artinian(s)
    assert v.answer is Answer.YES
    assert [f.dim for f in v.layers] == [2, 3]
    assert check_artinian(one_layer(X, [], [["1"]])).answer is Answer.NO
    v = check_artinian(one_layer(K, [], [["1"]]))
    assert v.answer is Answer.YES and v.layers[0].dim == 1


def test_semisimple_examples():
    assert check_semisimple(one_layer(X, ["x^2 - x"], [["1"]])).answer is Answer.YES
    v = check_semisimple(one_layer(X, ["x^2"], [["1"]]))
    assert v.answer is Answer.NO
    mins = v.layers[0].radical.minimal_polynomials
    assert [(name, str(m), sq) for name, m, sq in mins] == [("x", "t^2", False)]
    v = check_semisimple(one_layer(X, ["x^2 - 1"], [["1", "x"], ["x", "1"]]))
    assert v.answer is Answer.NO
    assert v.layers[0].det.is_zero() and not v.layers[0].det_unit.is_unit
    assert "not invertible" in v.reason


@pytest.mark.parametrize("check, prop", [
    (check_jacobson_sufficient, "jacobson_semisimple"),
    (check_semiprime_sufficient, "semiprime"),
])
def test_sufficient_criteria_examples(check, prop):
    v = check(one_layer(X, [], [["x"]]))
    assert v.answer is Answer.YES and v.property == prop
    v = check(one_layer(X, ["x^2"], [["1"]]))
    assert v.answer is Answer.UNKNOWN and "not reduced" in v.reason
    v = check(one_layer(X, ["x^2 - 2"], [["0", "0"], ["0", "0"]]))
    assert v.answer is Answer.UNKNOWN and "zero-divisor" in v.reason


def test_sufficient_criteria_undecidable_radical():
    R = PolyRing(["x", "y"], QQ)
    v = check_jacobson_sufficient(one_layer(R, ["x*y"], [["1"]]))
    assert v.answer is Answer.UNKNOWN and "undecided" in v.reason


def test_separable_examples():
    assert check_separable(one_layer(X, ["x^2 - 2"], [["1"]])).answer is Answer.YES
    F5 = PolyRing(["x"], GF(5))
    v = check_separable(one_layer(F5, ["x^5 - x"], [["1"]], field=GF(5)))
    assert v.answer is Answer.YES
    assert check_separable(one_layer(X, ["x^2"], [["1"]])).answer is Answer.NO


def test_separable_inconsistency_is_detected(monkeypatch):
    import affcell.decide as decide
    s = one_layer(X, ["x^2 - 2"], [["1"]])
    fake = decide.Verdict("semisimple", Answer.NO, "", "forced")
    monkeypatch.setattr(decide, "check_semisimple", lambda spec: fake)
    with pytest.raises(InternalInconsistency):
        decide.check_separable(s)


def test_report_examples():
    r = full_report(one_layer(X, ["x^2 - x"], [["1"]]))
    assert r.combined["semisimple"] and r.combined["equivalenceHolds"]
    r = full_report(one_layer(X, [], [["1"]]))
    assert r.verdicts["artinian"].answer is Answer.NO
    assert r.verdicts["semisimple"].answer is Answer.NO
    r = full_report(one_layer(X, ["x^3 - x"], [["x^2 + 1"]]))
    assert r.verdicts["artinian"].answer is Answer.YES
    assert r.verdicts["jacobson_semisimple"].answer is Answer.YES
    assert r.verdicts["semisimple"].answer is Answer.YES


def test_report_gathers_every_layer():
    s = CellularAlgebraSpec(QQ, [
        CellLayer(1, QuotientRing(X, [X("x^2")]), [["1"]]),
        CellLayer(1, QuotientRing(Y, [Y("y^2 - 1")]), [["y"]]),
    ])
    r = full_report(s)
    assert [f.index for f in r.verdicts["semisimple"].layers] == [1, 2]
    data = r.to_json()
    json.dumps(data)
    assert set(data) == {"verdicts", "layers", "asymptotic", "asymptoticCriterion"}
    assert set(data["verdicts"]) == set(PROPERTIES)
    for v in data["verdicts"].values():
        assert {"property", "answer", "reason", "layers", "citedStatement"} <= set(v)
    layer = data["layers"][1]
    assert layer["detPhiUnit"] is True and layer["witness"]["kind"] == "inverse"


def _verify_certificates(spec, report):
    """Re-check claimed facts with independent computations."""
    for f in report.analysis.layers:
        B = f.ring
        r = f.radical
        for _, m, sq in r.minimal_polynomials:
            d = gcd_univariate(m, m.diff(0))
            assert sq == d.is_constant()
        if f.det_unit.is_unit:
            assert B.equal(f.det_unit.inverse * f.det, B.ring.one())
        else:
            zd = f.det_zero_divisor
            if zd.is_zero_divisor and zd.witness is not None:
                assert B.is_zero(zd.witness * f.det) and not B.is_zero(zd.witness)
            else:
                # 1 not in I + (det)
                total = ideal_sum(B.ideal, Ideal(B.ring, [f.det]))
                assert not buchberger(total).is_unit_ideal()


def test_corpus_consistency():
    for seed in range(60):
        spec = random_instance(seed)
        r = full_report(spec)
        v = r.verdicts
        ss = v["semisimple"].answer
        assert v["separable"].answer is ss
        if ss is Answer.YES:
            assert v["artinian"].answer is Answer.YES
            assert v["jacobson_semisimple"].answer is Answer.YES
        if v["artinian"].answer is Answer.YES and v["jacobson_semisimple"].answer is Answer.YES:
            assert ss is Answer.YES
        assert v["jacobson_semisimple"].answer is not Answer.NO
        assert v["semiprime"].answer is v["jacobson_semisimple"].answer
        assert ss is not Answer.UNKNOWN and v["artinian"].answer is not Answer.UNKNOWN
        _verify_certificates(spec, r)


def test_verdicts_order_independent():
    rng = random.Random(0)
    for seed in range(10):
        spec = random_instance(seed)
        order = list(PROPERTIES)
        rng.shuffle(order)
        a = Analysis(spec)
        shuffled = {p: CHECKS[p](a).answer for p in order}
        fresh = {p: CHECKS[p](spec).answer for p in PROPERTIES}
        assert shuffled == fresh


def test_unit_determinant_matches_direct_check():
    for seed in range(20):
        spec = random_instance(seed)
        for f in Analysis(spec).layers:
            assert f.det_unit.is_unit == is_unit(f.ring, f.layer.det).is_unit
