import math

import numpy as np
import pytest

from jester.hyperbolic import (Geodesic, HPoint, Isometry, J, NotHyperbolic,
                               NotSpacelike, OrientationReversing, angle_at,
                               classify, distance, evaluate_word,
                               geodesic_through, is_identity, reflect,
                               rotation, triangle_from_angles,
                               triangle_group_rep)
from jester.presentations import UnmappedGenerator, verify_homomorphism
from jester.presentations import Presentation
from jester.words import Word

PAPER_ANGLES = (math.pi / 7, math.pi / 2, math.pi / 5)  # at A, B, C


def quotient_presentation():
    return Presentation(
        ["beta", "gamma"],
        [Word.parse("gamma^7"), Word.parse("beta^5"),
         Word.parse("beta gamma beta gamma")])


def test_point_and_geodesic_validation():
    HPoint([0.0, 0.0, 1.0])
    with pytest.raises(Exception):
        HPoint([0.0, 0.0, -1.0])
    with pytest.raises(Exception):
        HPoint([1.0, 0.0, 1.0])
    Geodesic([1.0, 0.0, 0.0])
    with pytest.raises(NotSpacelike):
        Geodesic([0.0, 0.0, 1.0])


def test_reflection_is_an_involution():
    g = Geodesic.from_normal_direction([0.3, -1.2, 0.5])
    r = reflect(g)
    assert r.orientation == -1
    assert (r @ r).identity_distance() < 1e-10


def test_reflection_fixes_its_geodesic():
    g = Geodesic.from_normal_direction([1.0, 0.4, 0.3])
    r = reflect(g)
    # project a hyperboloid point onto the geodesic (remove the normal
    # component, renormalize to the sheet)
    p = HPoint([0.0, 1.0, math.sqrt(2.0)])
    v = p.coords - (p.coords @ J @ g.normal) * g.normal
    v = v / math.sqrt(-(v @ J @ v))
    q = HPoint(v)
    assert g.contains(q)
    assert np.abs(r.matrix @ q.coords - q.coords).max() < 1e-10


def test_two_reflections_make_the_paper_rotation(triangle_rep):
    triangle, images = triangle_rep
    r_bc = reflect(triangle["edges"]["BC"])
    r_ac = reflect(triangle["edges"]["AC"])
    composite = r_bc @ r_ac
    info = classify(composite)
    assert info["kind"] == "elliptic"
    assert abs(info["value"] - 2 * math.pi / 5) < 1e-9
    c = triangle["vertices"]["C"].coords
    assert np.abs(composite.matrix @ c - c).max() < 1e-9
    # double evaluation: the word generator equals the reflection composite
    assert np.abs(composite.matrix - images["beta"].matrix).max() < 1e-9


def test_gamma_double_evaluation(triangle_rep):
    triangle, images = triangle_rep
    composite = reflect(triangle["edges"]["AC"]) @ reflect(triangle["edges"]["AB"])
    assert np.abs(composite.matrix - images["gamma"].matrix).max() < 1e-9


def test_rotation_by_zero_is_identity():
    p = HPoint([0.3, -0.2, math.sqrt(1 + 0.09 + 0.04)])
    assert rotation(p, 0.0).identity_distance() < 1e-12


def test_rotation_order_five(triangle_rep):
    triangle, _ = triangle_rep
    r = rotation(triangle["vertices"]["C"], -2 * math.pi / 5)
    acc = Isometry.identity()
    for _ in range(5):
        acc = acc @ r
    assert acc.identity_distance() < 1e-9


def test_rotation_angles_add():
    p = HPoint([0.5, 0.1, math.sqrt(1.26)])
    lhs = rotation(p, 0.7) @ rotation(p, -1.9)
    rhs = rotation(p, -1.2)
    assert np.abs(lhs.matrix - rhs.matrix).max() < 1e-9


# ---------------------------------------------------------------------------
# triangle construction


def test_euclidean_triangle_rejected():
    with pytest.raises(NotHyperbolic):
        triangle_from_angles(math.pi / 3, math.pi / 3, math.pi / 3)
    with pytest.raises(NotHyperbolic):
        triangle_from_angles(-0.1, 0.2, 0.2)


def test_paper_triangle_angles_realized():
    tri = triangle_from_angles(*PAPER_ANGLES)
    a, b, c = tri["vertices"]["A"], tri["vertices"]["B"], tri["vertices"]["C"]
    assert abs(angle_at(a, b, c) - PAPER_ANGLES[0]) < 1e-9
    assert abs(angle_at(b, a, c) - PAPER_ANGLES[1]) < 1e-9
    assert abs(angle_at(c, a, b) - PAPER_ANGLES[2]) < 1e-9


def test_side_lengths_match_law_of_cosines():
    tri = triangle_from_angles(*PAPER_ANGLES)
    at_a, at_b, at_c = PAPER_ANGLES
    # independent evaluation of cosh(BC)
    expected = math.acosh(
        (math.cos(at_a) + math.cos(at_b) * math.cos(at_c))
        / (math.sin(at_b) * math.sin(at_c)))
    measured = distance(tri["vertices"]["B"], tri["vertices"]["C"])
    assert abs(measured - expected) < 1e-9
    assert abs(tri["sides"]["a"] - expected) < 1e-12


def test_edges_pass_through_their_vertices():
    tri = triangle_from_angles(*PAPER_ANGLES)
    for edge, (p, q) in (("AB", "AB"), ("BC", "BC"), ("AC", "AC")):
        for vertex in (p, q):
            assert tri["edges"][edge].contains(tri["vertices"][vertex])


# ---------------------------------------------------------------------------
# word evaluation and classification


def test_empty_word_evaluates_to_identity(triangle_rep):
    _, images = triangle_rep
    assert evaluate_word(Word(), images).identity_distance() == 0.0


def test_relator_words_die(triangle_rep):
    _, images = triangle_rep
    for relator in ("gamma^7", "beta^5", "beta gamma beta gamma"):
        m = evaluate_word(Word.parse(relator), images)
        assert m.identity_distance() < 1e-9


def test_verify_homomorphism_on_quotient(triangle_rep):
    _, images = triangle_rep
    report = verify_homomorphism(quotient_presentation(), images, tol=1e-9)
    assert report["holds"]
    assert max(report["residuals"]) < 1e-9


def test_wrong_sign_fails_on_the_half_turn_relator(triangle_rep):
    triangle, images = triangle_rep
    bad = dict(images)
    bad["beta"] = rotation(triangle["vertices"]["C"], 2 * math.pi / 5)
    report = verify_homomorphism(quotient_presentation(), bad, tol=1e-9)
    assert not report["holds"]
    assert report["residuals"][0] < 1e-9   # gamma^7 still fine
    assert report["residuals"][1] < 1e-9   # beta^5 still fine
    assert report["residuals"][2] > 0.1    # (beta gamma)^2 far from identity


def test_meridian_image_is_visibly_nontrivial(triangle_rep):
    _, images = triangle_rep
    m = evaluate_word(Word.parse("beta^-2 gamma"), images)
    assert not is_identity(m, 1e-3)
    assert m.identity_distance() > 3.2
    assert abs(m.identity_distance() - 3.221262121471372) < 1e-6


def test_unmapped_generator():
    with pytest.raises(UnmappedGenerator):
        evaluate_word(Word.parse("zz"), {})


def test_classify_identity_and_half_turn(triangle_rep):
    triangle, images = triangle_rep
    assert classify(Isometry.identity())["kind"] == "identity"
    bg = images["beta"] @ images["gamma"]
    info = classify(bg)
    assert info["kind"] == "elliptic"
    assert abs(info["value"] - math.pi) < 1e-6
    assert abs(bg.trace() - (-1.0)) < 1e-9
    # and it is the rotation at B coming from the outer reflections
    r_bc = reflect(triangle["edges"]["BC"])
    r_ab = reflect(triangle["edges"]["AB"])
    outer = r_bc @ r_ab
    assert classify(outer)["kind"] == "elliptic"
    assert abs(classify(outer)["value"] - math.pi) < 1e-9
    b = triangle["vertices"]["B"].coords
    assert np.abs(outer.matrix @ b - b).max() < 1e-9


def test_classify_rejects_reflections():
    with pytest.raises(OrientationReversing):
        classify(reflect(Geodesic([1.0, 0.0, 0.0])))


def test_classify_hyperbolic_translation():
    t = 1.3
    m = Isometry([[math.cosh(t), 0, math.sinh(t)],
                  [0, 1, 0],
                  [math.sinh(t), 0, math.cosh(t)]])
    info = classify(m)
    assert info["kind"] == "hyperbolic"
    assert abs(info["value"] - t) < 1e-9


def test_lorentz_conservation_under_bounded_words():
    # Entries of long products grow like cosh of the path length, and the
    # float error of M^T J M - J scales with the squared entry size, so the
    # conservation check draws generators with centers in a small disk:
    # 64-letter products then stay well conditioned at full length.
    rng = np.random.default_rng(20257)
    centers = []
    for _ in range(4):
        x, y = rng.uniform(-0.05, 0.05, size=2)
        centers.append(HPoint([x, y, math.sqrt(1 + x * x + y * y)]))
    gens = [rotation(p, rng.uniform(-math.pi, math.pi)) for p in centers[:3]]
    gens.append(reflect(geodesic_through(centers[0], centers[3])))
    mats = np.stack([g.matrix for g in gens])

    n_words = 10_000
    choices = rng.integers(0, len(gens), size=(n_words, 64))
    acc = np.broadcast_to(np.eye(3), (n_words, 3, 3)).copy()
    for step in range(64):
        acc = acc @ mats[choices[:, step]]
    err = np.abs(np.transpose(acc, (0, 2, 1)) @ J @ acc - J).max()
    assert err < 1e-9

    # spot-check the batched fold against evaluate_word on a sample
    names = ["g0", "g1", "g2", "g3"]
    assignment = dict(zip(names, gens))
    for k in range(25):
        word = Word([(names[i], 1) for i in choices[k]])
        m = evaluate_word(word, assignment)
        assert np.abs(m.matrix - acc[k]).max() < 1e-12
        assert m.lorentz_error() < 1e-9


def test_isometry_inverse_is_exact():
    tri, images = triangle_group_rep(7, 5, 2)
    m = images["beta"] @ images["gamma"]
    assert (m @ m.inverse()).identity_distance() < 1e-12
