import pytest

from weightlab import (Box, LatticeSpec, MonoidSpec, bounded_perfect_closure,
                       build_root_datum, classify, component_support, dominant_weights_below,
                       enumerate_perfect, is_perfect_in_box, is_saturated_monoid,
                       predicted_members, root_coordinates, verify_classification)
from conftest import get_datum


def test_component_support_examples():
    datum = get_datum("A1xA2")
    assert component_support(MonoidSpec(datum, ((1, 0, 0),))) == {1}
    assert component_support(MonoidSpec(datum, ((1, 0, 0), (0, 1, 1)))) == {1, 2}
    assert component_support(MonoidSpec(datum, ())) == frozenset()


def test_bounded_closure_rank_one():
    a1 = get_datum("A1")
    assert bounded_perfect_closure(MonoidSpec(a1, ((1,),)), Box(4)) == \
        {(0,), (1,), (2,), (3,), (4,)}
    assert bounded_perfect_closure(MonoidSpec(a1, ((2,),)), Box(4)) == \
        {(0,), (2,), (4,)}
    assert bounded_perfect_closure(MonoidSpec(a1, ()), Box(3)) == {(0,)}


def test_closure_generator_must_fit_box():
    a1 = get_datum("A1")
    with pytest.raises(ValueError):
        bounded_perfect_closure(MonoidSpec(a1, ((5,),)), Box(4))


def test_is_perfect_in_box_examples():
    a1 = get_datum("A1")
    assert is_perfect_in_box(a1, {(0,), (2,), (4,)}, Box(4))
    assert not is_perfect_in_box(a1, {(0,), (2,)}, Box(4))
    assert is_perfect_in_box(a1, {(0,)}, Box(4))
    with pytest.raises(ValueError):
        is_perfect_in_box(a1, {(2,)}, Box(4))


def test_closure_output_is_perfect_and_inside_prediction():
    for ts, gens in [("A2", ((1, 0),)), ("A2", ((1, 1), (3, 0))),
                     ("B2", ((0, 1),)), ("A1xA1", ((1, 1),))]:
        datum = get_datum(ts)
        spec = MonoidSpec(datum, gens)
        box = Box(4)
        closure = bounded_perfect_closure(spec, box)
        assert is_perfect_in_box(datum, closure, box)
        predicted = predicted_members(datum, classify(spec), box)
        assert closure <= predicted


def test_classify_examples():
    a2 = get_datum("A2")
    desc = classify(MonoidSpec(a2, ((1, 0),)))
    assert desc.support == {1}
    assert desc.subgroup.order == 3
    desc = classify(MonoidSpec(a2, ((1, 1), (3, 0))))
    assert desc.support == {1}
    assert desc.subgroup.order == 1
    aa = get_datum("A1xA1")
    desc = classify(MonoidSpec(aa, ((1, 1),)))
    assert desc.support == {1, 2}
    assert desc.subgroup.members == ((0, 0), (1, 1))


def test_predicted_members_examples():
    a2 = get_datum("A2")
    full = classify(MonoidSpec(a2, ((1, 0),)))
    assert len(predicted_members(a2, full, Box(2))) == 9
    trivial = classify(MonoidSpec(a2, ((1, 1),)))
    assert predicted_members(a2, trivial, Box(2)) == {(0, 0), (1, 1), (2, 2)}
    empty = classify(MonoidSpec(a2, ()))
    assert predicted_members(a2, empty, Box(3)) == {(0, 0)}


def test_predicted_members_are_perfect():
    for ts in ["A2", "B2", "A1xA1", "A3"]:
        datum = get_datum(ts)
        for desc in enumerate_perfect(datum, range(1, datum.n_factors + 1)):
            members = predicted_members(datum, desc, Box(4))
            assert is_perfect_in_box(datum, members, Box(4))


def test_verification_examples():
    a2 = get_datum("A2")
    rep = verify_classification(MonoidSpec(a2, ((1, 0), (0, 1))), Box(3))
    assert rep.equal
    a1 = get_datum("A1")
    rep = verify_classification(MonoidSpec(a1, ((2,),)), Box(6))
    assert rep.equal
    assert rep.descriptor.subgroup.order == 1
    d4 = get_datum("D4")
    rep = verify_classification(MonoidSpec(d4, ((1, 0, 0, 0),)), Box(2))
    assert not rep.missing_from_prediction
    assert rep.equal


def test_enumerate_perfect_counts():
    assert len(enumerate_perfect(get_datum("A2"), (1,))) == 2
    assert len(enumerate_perfect(get_datum("D4"), (1,))) == 5
    assert len(enumerate_perfect(get_datum("A1xA1"), (1,))) == 2
    assert len(enumerate_perfect(get_datum("A1xA1"), (1, 2))) == 5


def test_enumerate_perfect_respects_lattice():
    # adjoint lattice: only the trivial class survives
    adj = get_datum("A3", "adjoint")
    descs = enumerate_perfect(adj, (1,))
    assert len(descs) == 1
    assert descs[0].subgroup.order == 1
    # intermediate lattice of A3 (index 2): Z/4 shrinks to Z/2, two subgroups
    half = build_root_datum("A3", LatticeSpec("subgroup", ((2,),)))
    descs = enumerate_perfect(half, (1,))
    assert len(descs) == 2


def test_enumerate_partial_support_intersects_not_projects():
    # lattice = preimage of the diagonal in Z/2 x Z/2; weights supported on a
    # single factor must have even coordinate there, so only one perfect
    # submonoid lives on factor 1
    datum = build_root_datum("A1xA1", LatticeSpec("subgroup", ((1, 1),)))
    descs = enumerate_perfect(datum, (1,))
    assert len(descs) == 1
    assert descs[0].subgroup.order == 1


def test_descriptor_members_closed_under_dominant_weight_systems():
    # membership is closed under taking dominant weights of the weight system
    for ts in ["A2", "B2", "A3"]:
        datum = get_datum(ts)
        box = Box(4)
        for desc in enumerate_perfect(datum, range(1, datum.n_factors + 1)):
            members = predicted_members(datum, desc, box)
            for lam in members:
                for mu in dominant_weights_below(datum, lam):
                    if mu in box:
                        assert mu in members


def test_root_lattice_dominants_always_predicted():
    for ts in ["A2", "B2", "D4"]:
        datum = get_datum(ts)
        box = Box(3)
        for desc in enumerate_perfect(datum, range(1, datum.n_factors + 1)):
            adjoint_members = {w for w in box.region(datum)
                               if all(k.denominator == 1
                                      for k in root_coordinates(datum, w))}
            predicted = predicted_members(datum, desc, box)
            assert adjoint_members <= predicted


def test_closure_monotone_in_box():
    a2 = get_datum("A2")
    spec = MonoidSpec(a2, ((1, 0),))
    small = bounded_perfect_closure(spec, Box(3))
    large = bounded_perfect_closure(spec, Box(5))
    assert {w for w in large if w in Box(3)} >= small


def test_saturation_examples():
    a1 = get_datum("A1")
    assert not is_saturated_monoid(a1, {(0,), (2,), (4,)}, Box(4))
    assert is_saturated_monoid(a1, {(0,), (1,), (2,), (3,), (4,)}, Box(4))
    a2 = get_datum("A2")
    trivial = classify(MonoidSpec(a2, ((1, 1),)))
    members = predicted_members(a2, trivial, Box(3))
    assert not is_saturated_monoid(a2, members, Box(3))


def test_center_subgroups_biject_with_predicted_monoids():
    # the two inverse maps: a center subgroup H yields the monoid of weights
    # restricting trivially to it, realized by the annihilator descriptor;
    # the double annihilator recovers H
    from weightlab import PerfectDescriptor, annihilator, enumerate_subgroups, weight_kills_subgroup
    for ts in ["A3", "D4"]:
        datum = get_datum(ts)
        g = datum.cocenter
        box = Box(3)
        seen = set()
        for H in enumerate_subgroups(g):
            ann = annihilator(g, H)
            desc = PerfectDescriptor(frozenset({1}), ann)
            members = predicted_members(datum, desc, box)
            killed = {w for w in box.region(datum)
                      if weight_kills_subgroup(g, w, H)}
            assert members == killed
            assert annihilator(g, ann).members == H.members
            seen.add(members_key(members))
        assert len(seen) == len(enumerate_subgroups(g))


def members_key(members):
    return tuple(sorted(members))


def test_closure_with_thread_pool(monkeypatch):
    monkeypatch.setenv("WEIGHTLAB_THREADS", "4")
    a2 = get_datum("A2")
    spec = MonoidSpec(a2, ((1, 0),))
    threaded = bounded_perfect_closure(spec, Box(4))
    monkeypatch.setenv("WEIGHTLAB_THREADS", "1")
    assert threaded == bounded_perfect_closure(spec, Box(4))


def test_spec_json_round_trip():
    spec = MonoidSpec(get_datum("A2"), ((1, 0), (0, 1)))
    again = MonoidSpec.from_json(spec.to_json())
    assert again.generators == spec.generators
    assert str(again.datum.ctype) == "A2"


def test_monoid_spec_validation():
    a2 = get_datum("A2", "adjoint")
    with pytest.raises(ValueError):
        MonoidSpec(a2, ((1, 0),))  # not in the adjoint lattice
    with pytest.raises(ValueError):
        MonoidSpec(get_datum("A2"), ((-1, 0),))
