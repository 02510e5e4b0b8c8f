import decimal

import pytest

from widthlab.bounds import (bound_records, nz_girth_threshold, nz_max_k, obstruction_search, survey_Wn,
                             verify_bounds)
from widthlab.cache import Cache
from widthlab.canonical import canonical_form
from widthlab.consistency import homomorphism_exists, width
from widthlab.errors import (BadParams, BoundViolation, Not4Chromatic, NoWitness, PreconditionViolated,
                             ResourceCap)
from widthlab.generators import complete, cycle, grotzsch, wheel
from widthlab.graphs import independence_number, treewidth_exact

K2, K3, K4, K5 = complete(2), complete(3), complete(4), complete(5)


def _threshold_decimal(k, m):
    ctx = decimal.Context(prec=4000)
    d = decimal.Decimal
    x = ctx.multiply(ctx.power(d(2), d(k + 2)), ctx.power(d(4 * k * m), d(4 * k * m - 1)))
    return int(ctx.add(x, d(2 * (k + 1))))


def test_threshold_values():
    assert nz_girth_threshold(1, 1) == 516
    assert nz_girth_threshold(1, 2) == 16_777_220


@pytest.mark.parametrize("k,m", [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (5, 5)])
def test_threshold_independent_evaluation(k, m):
    assert nz_girth_threshold(k, m) == _threshold_decimal(k, m)


def test_threshold_errors_and_inverse():
    with pytest.raises(BadParams):
        nz_girth_threshold(0, 1)
    assert nz_max_k(516, 1) == 0
    assert nz_max_k(517, 1) == 1
    big = 10 ** 40
    assert nz_max_k(big, 1) == max(k for k in range(0, 20) if k == 0 or _threshold_decimal(k, 1) < big) == 6


def test_verify_bounds_k4_k5_tight():
    for g in (K4, K5):
        rep = verify_bounds(g)
        assert not rep.violations
        ind = next(b for b in rep.bounds if b.name == "independence")
        assert rep.width == ind.value == 4


def test_verify_bounds_rejects_colorable():
    with pytest.raises(Not4Chromatic):
        verify_bounds(cycle(5))


def test_verify_bounds_grotzsch():
    rep = verify_bounds(grotzsch())
    assert (rep.width, rep.alpha, rep.treewidth) == (5, 5, 5)
    assert rep.to_json()["violations"] == []


def test_bound_violation_carries_dump():
    recs = bound_records(4, 9, 1, 3, 3)
    assert {b.name for b in recs if not b.holds} == {"independence", "freuder", "dynamic"}
    import widthlab.bounds as b
    orig = b.bound_records
    b.bound_records = lambda *a: orig(4, 9, 1, 3, 3)
    try:
        with pytest.raises(BoundViolation) as exc:
            verify_bounds(K4)
        assert exc.value.dump["certificate"]["k"] == 4
        assert not b.verify_bounds(K4, fatal=False).bounds[0].holds
    finally:
        b.bound_records = orig


def test_independence_bound_exhaustive(corpus6):
    for g in corpus6:
        a = independence_number(g)
        assert width(g, K3).width <= min(3 * a, g.n - a) + 1


def test_survey_small():
    s4 = survey_Wn(4)
    assert s4.W == 4 and s4.examined == 1
    assert s4.witness == canonical_form(K4).hex()
    s5 = survey_Wn(5)
    assert s5.W == 4 and s5.examined == 5


def test_survey_errors():
    with pytest.raises(NoWitness):
        survey_Wn(3)
    with pytest.raises(ResourceCap):
        survey_Wn(8)


def test_survey_uses_cache(tmp_path):
    cache = Cache(tmp_path)
    first = survey_Wn(5, cache)
    assert list(tmp_path.rglob("*.json"))
    assert survey_Wn(5, cache) == first


def test_obstruction_examples():
    res = obstruction_search(K4, K3, 4, 3)
    assert canonical_form(res.obstruction) == canonical_form(K4)
    assert res.width_upper_bound == 4 >= width(K4, K3).width
    res = obstruction_search(cycle(5), K2, 5, 2)
    assert canonical_form(res.obstruction) == canonical_form(cycle(5)) and res.treewidth == 2
    assert width(cycle(5), K2).width <= res.width_upper_bound
    assert not obstruction_search(K4, K3, 3, 3).obstruction
    with pytest.raises(PreconditionViolated):
        obstruction_search(cycle(5), K3, 5, 2)
    with pytest.raises(ResourceCap):
        obstruction_search(K4, K3, 8, 3)


def test_obstructions_certify_upper_bounds(corpus6):
    pairs = [(g, K3) for g in corpus6[:20]] + [(cycle(n), K2) for n in (3, 5, 7)] + [(wheel(5), K3)]
    for g, h in pairs:
        res = obstruction_search(g, h, g.n, treewidth_exact(g))
        f = res.obstruction
        assert f is not None
        assert homomorphism_exists(f, g) is not None and homomorphism_exists(f, h) is None
        assert treewidth_exact(f) == res.treewidth
        assert width(g, h).width <= res.width_upper_bound


def test_freuder_bound_on_corpus(corpus6):
    for g in corpus6:
        assert width(g, K3).width <= treewidth_exact(g) + 1
    for n in (3, 5, 7, 9):
        assert width(cycle(n), K2).width <= treewidth_exact(cycle(n)) + 1
