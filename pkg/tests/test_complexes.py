import random

import pytest

from jester.complexes import (BudgetExceeded, CollapseSequence, ComplexError,
                              DegenerateWord, IdentificationPolygon,
                              NotFreePair, NotSubcomplex, SimplicialComplex,
                              elementary_collapse, euler_characteristic,
                              free_faces, is_collapsible,
                              polygon_complex_with_layout,
                              polygon_identification_complex, split_check,
                              subcomplex_from_maximal,
                              verify_collapse_sequence)
from jester.data_files import (dunce_hat, dunce_polygon, jester_hat,
                               jester_polygon, jester_split)


def triangle_complex():
    return SimplicialComplex([frozenset(["a", "b", "c"])])


def test_closure_and_validation():
    k = triangle_complex()
    assert len(k) == 7
    assert k.dimension() == 2
    with pytest.raises(ComplexError):
        SimplicialComplex([frozenset(["a", "b"])], closed=True)
    with pytest.raises(ComplexError):
        SimplicialComplex([frozenset("abcde")])


def test_euler_characteristic_examples():
    assert euler_characteristic(SimplicialComplex([frozenset(["p"])])) == 1
    assert euler_characteristic(triangle_complex()) == 1
    assert euler_characteristic(dunce_hat()) == 1


def test_json_round_trip():
    k = dunce_hat()
    obj = k.to_json_obj()
    assert SimplicialComplex.from_json_obj(obj) == k
    assert SimplicialComplex.from_json_obj(obj).to_json_obj() == obj


# ---------------------------------------------------------------------------
# free faces and elementary collapse


def test_triangle_has_three_free_edges():
    pairs = free_faces(triangle_complex())
    edges = [(sorted(f), sorted(c)) for f, c in pairs if len(f) == 2]
    assert len(edges) == 3
    assert all(c == ["a", "b", "c"] for _, c in edges)


def test_collapse_triangle_to_path():
    k = triangle_complex()
    k2 = elementary_collapse(k, ["a", "b"], ["a", "b", "c"])
    assert euler_characteristic(k2) == euler_characteristic(k) == 1
    assert len(k2) == 5
    # two edges remain
    assert sorted(len(s) for s in k2.maximal_simplices()) == [2, 2]


def test_collapse_rejects_non_free_pair():
    k = triangle_complex()
    with pytest.raises(NotFreePair):
        elementary_collapse(k, ["a"], ["a", "b"])


def test_chi_invariant_under_random_collapses():
    rng = random.Random(11)
    square = IdentificationPolygon((("a", 1), ("b", 1), ("a", -1), ("b", -1)))
    k = polygon_identification_complex(square)  # a torus, chi 0
    chi = euler_characteristic(k)
    assert chi == 0
    for _ in range(1000):
        pairs = free_faces(k)
        if not pairs:
            break
        k = elementary_collapse(k, *rng.choice(pairs))
        assert euler_characteristic(k) == chi


# ---------------------------------------------------------------------------
# builders


def test_sphere_from_square():
    word = IdentificationPolygon((("a", 1), ("a", -1), ("b", 1), ("b", -1)))
    k = polygon_identification_complex(word)
    assert euler_characteristic(k) == 2


def test_empty_word_rejected():
    with pytest.raises(DegenerateWord):
        IdentificationPolygon(())


def test_monogon_and_digon_still_simplicial():
    disk = polygon_identification_complex(IdentificationPolygon((("a", 1),)))
    assert euler_characteristic(disk) == 1
    sphere = polygon_identification_complex(
        IdentificationPolygon((("a", 1), ("a", -1))))
    assert euler_characteristic(sphere) == 2


def test_projective_plane():
    word = IdentificationPolygon((("a", 1), ("a", 1)))
    k = polygon_identification_complex(word)
    assert euler_characteristic(k) == 1
    assert free_faces(k) == []


def test_dunce_hat_pins():
    k = polygon_identification_complex(dunce_polygon())
    assert k == dunce_hat()
    assert euler_characteristic(k) == 1
    assert free_faces(k) == []


def test_jester_hat_pins():
    k = polygon_identification_complex(jester_polygon())
    assert k == jester_hat()
    assert euler_characteristic(k) == 1
    assert not any(len(f) == 2 for f, _ in free_faces(k))
    assert free_faces(k) == []


# ---------------------------------------------------------------------------
# collapsibility search


def test_triangle_collapses_in_three_steps():
    result = is_collapsible(triangle_complex(), seed=3)
    assert result.sequence is not None
    assert len(result.sequence.steps) == 3
    assert verify_collapse_sequence(triangle_complex(), result.sequence)


def test_dunce_hat_is_proven_noncollapsible_instantly():
    result = is_collapsible(dunce_hat())
    assert result.sequence is None
    assert result.proven_noncollapsible
    assert result.states == 0


def test_search_is_deterministic_given_seed():
    k = jester_hat()
    a_ids, _ = jester_split()
    sub = SimplicialComplex(subcomplex_from_maximal(k, a_ids), closed=True)
    r1 = is_collapsible(sub, seed=42)
    r2 = is_collapsible(sub, seed=42)
    assert r1.sequence == r2.sequence


def test_budget_exhaustion_raises():
    k = jester_hat()
    a_ids, _ = jester_split()
    sub = SimplicialComplex(subcomplex_from_maximal(k, a_ids), closed=True)
    with pytest.raises(BudgetExceeded):
        is_collapsible(sub, budget=3, restarts=1)


def test_two_spheres_rejected_as_disconnected():
    k = SimplicialComplex([frozenset(["a", "b"]), frozenset(["c", "d"])])
    with pytest.raises(ComplexError):
        is_collapsible(k)


def test_verify_rejects_broken_sequences():
    k = triangle_complex()
    good = is_collapsible(k).sequence
    assert verify_collapse_sequence(k, good)
    if len(good.steps) >= 2:
        swapped = CollapseSequence((good.steps[1], good.steps[0]) + good.steps[2:])
        # swapping may or may not break freeness; removing a step always does
        assert not verify_collapse_sequence(k, CollapseSequence(good.steps[:-1]))
        assert not verify_collapse_sequence(
            k, CollapseSequence(good.steps + good.steps[-1:]))
        verify_collapse_sequence(k, swapped)  # must not crash


# ---------------------------------------------------------------------------
# split checks


def test_split_single_edge_trivially():
    k = SimplicialComplex([frozenset(["a", "b"])])
    rep = split_check(k, set(k.simplices), set(k.simplices))
    assert rep["union_ok"]
    assert rep["intersection"] == set(k.simplices)
    assert rep["a_collapsible"] and rep["b_collapsible"] and rep["c_collapsible"]


def test_jester_hat_splits_into_collapsibles():
    k = jester_hat()
    a_ids, b_ids = jester_split()
    a = subcomplex_from_maximal(k, a_ids)
    b = subcomplex_from_maximal(k, b_ids)
    rep = split_check(k, a, b, budget=10 ** 6, seed=0)
    assert rep["union_ok"]
    assert rep["a_collapsible"] and rep["b_collapsible"] and rep["c_collapsible"]
    # the seam is a one-dimensional arc
    assert all(len(s) <= 2 for s in rep["intersection"])
    for part, ids in (("a", a), ("b", b)):
        sub = SimplicialComplex(ids, closed=True)
        assert verify_collapse_sequence(sub, rep[part + "_sequence"])


def test_split_reports_noncollapsible_side():
    k = dunce_hat()
    vertex = sorted(k.vertices())[0]
    b = {frozenset([vertex])}
    rep = split_check(k, set(k.simplices), b)
    assert rep["union_ok"]
    assert not rep["a_collapsible"]
    assert rep["b_collapsible"]


def test_split_rejects_non_subcomplex():
    k = triangle_complex()
    with pytest.raises(NotSubcomplex):
        split_check(k, {frozenset(["a", "b", "c"])}, set(k.simplices))
    with pytest.raises(NotSubcomplex):
        subcomplex_from_maximal(k, [frozenset(["x", "y"])])
