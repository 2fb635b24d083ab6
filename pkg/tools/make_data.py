"""Regenerate every checked-in data file under src/jester/data/.

Deterministic: rerunning must reproduce the shipped files byte for byte.
The Mazur link transcription is the canonical survivor of the exhaustive
search in solve_mazur.py; the Jester's-hat hexagon word is the canonical
survivor of the search in solve_jester.py (see those scripts for the
filters).  The Jester curve diagram is the combinatorial double-cover lift
of the Mazur diagram built below.
"""

import json
import math
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from jester.complexes import (IdentificationPolygon, euler_characteristic,
                              free_faces, polygon_complex_with_layout,
                              split_check, subcomplex_from_maximal)
from jester.links import (Crossing, LinkDiagram, SurgeryRelator,
                          linking_number, longitude_word,
                          surgery_relators_to_json_obj, validate_diagram,
                          wirtinger, writhe, adjoin_relators)
from jester.presentations import Presentation, abelianization
from jester.prosequences import FiniteGroup, FactorSequence, INF
from jester.words import Word, longitude_equivalent

DATA = ROOT / "src" / "jester" / "data"

R_ZETA = Word.parse("x5 x2^-1 x1^-1")
R_GAMMA = Word.parse("x7^-1 x5^-1 x7 x3^-1 x2^-1 x7^-1")


def dump(name, obj):
    path = DATA / name
    path.write_text(json.dumps(obj, indent=1, sort_keys=False) + "\n")
    print("wrote", path.relative_to(ROOT))


# ---------------------------------------------------------------------------
# Mazur link (canonical solve_mazur.py survivor) and surgery relators

MAZUR = LinkDiagram(
    arcs=["x5", "x6", "x1", "x2", "x3", "x4", "x7", "x8", "x9"],
    components=[["x5", "x6", "x1", "x2", "x3", "x4"], ["x7", "x8", "x9"]],
    crossings=[
        Crossing("x3", "x5", "x6", -1),
        Crossing("x2", "x6", "x1", -1),
        Crossing("x7", "x2", "x3", -1),
        Crossing("x5", "x3", "x4", -1),
        Crossing("x7", "x4", "x5", 1),
        Crossing("x5", "x7", "x8", 1),
        Crossing("x2", "x8", "x9", -1),
        Crossing("x1", "x9", "x7", -1),
        Crossing("x7", "x1", "x2", -1),   # ninth relator: x1 = x7^-1 x2 x7
    ],
)


def check_mazur():
    report = validate_diagram(MAZUR)
    assert report["components"] == 2 and report["crossings"] == 9
    assert longitude_equivalent(longitude_word(MAZUR, 0, 0), R_GAMMA)
    assert longitude_word(MAZUR, 1, 0) == R_ZETA
    assert writhe(MAZUR, 0) == -3 and writhe(MAZUR, 1) == 0
    assert linking_number(MAZUR, 0, 1) == linking_number(MAZUR, 1, 0) == -1
    p = wirtinger(MAZUR)
    assert abelianization(p) == [0, 0]
    full = adjoin_relators(p, [SurgeryRelator("r_zeta", R_ZETA),
                               SurgeryRelator("r_Gamma", R_GAMMA)])
    assert abelianization(full) == []


# ---------------------------------------------------------------------------
# Double-cover lift: the Jester curve C with its surgery circle
#
# The Mazur curve winds once, so its preimage under the degree-2 cover of
# the ambient S^1 factor is a single curve traversing the pattern twice.
# Combinatorially: walk the Gamma event cycle twice, flipping sheets at the
# three disk passages (the short intervals between consecutive crossings
# with zeta); self-crossings lift to one crossing per slab, and the zeta
# weave survives only in slab 0, where the new surgery circle sits.

# event cycle along Gamma, in traversal order; flips sit right after the
# opening event of each passage (C5->U1, U3->C9, U2->C3)
EVENTS = [
    ("flip", None),
    ("over", "C4"), ("over", "U1"),
    ("under", "C1"),
    ("under", "C2"),
    ("over", "U3"), ("flip", None),
    ("under", "C9"),
    ("over", "U2"), ("flip", None), ("over", "C2"),
    ("under", "C3"),
    ("over", "C1"),
    ("under", "C4"),
    ("under", "C5"),
]

BASE = {
    "C1": ("x3", "x5", "x6", -1),
    "C2": ("x2", "x6", "x1", -1),
    "C3": ("x7", "x2", "x3", -1),
    "C4": ("x5", "x3", "x4", -1),
    "C5": ("x7", "x4", "x5", 1),
    "C9": ("x7", "x1", "x2", -1),
    "U1": ("x5", "x7", "x8", 1),
    "U2": ("x2", "x8", "x9", -1),
    "U3": ("x1", "x9", "x7", -1),
}
ZETA_UNDER = {"C3", "C5", "C9"}   # Gamma passes under zeta
ZETA_OVER = {"U1", "U2", "U3"}    # Gamma passes over zeta


def build_jester_curve():
    # sheet of each event position (flips excluded from the emitted list)
    sheet = 0
    positioned = []  # (kind, crossing, sheet)
    for kind, name in EVENTS:
        if kind == "flip":
            sheet ^= 1
        else:
            positioned.append((kind, name, sheet))
    assert sheet == 1, "an odd number of sheet flips is required"

    # double walk; slab of an event instance = sheet XOR walk
    instances = [(kind, name, s ^ w)
                 for w in (0, 1) for kind, name, s in positioned]

    # C's arc boundaries: lifted self-undercrossings always; zeta
    # undercrossings only in slab 0 (the surgery circle lives there)
    boundaries = []
    for idx, (kind, name, slab) in enumerate(instances):
        if kind != "under":
            continue
        if name in ZETA_UNDER and slab != 0:
            continue
        boundaries.append(idx)

    # name each C arc after the base arc it starts on, tagged a/b per walk
    arc_at = {}
    arc_order = []
    n = len(instances)
    for b_pos, idx in enumerate(boundaries):
        _, name, slab = instances[idx]
        start_arc = BASE[name][2]
        arc_name = "%s%s" % (start_arc, "ab"[slab])
        arc_order.append(arc_name)
        end = boundaries[(b_pos + 1) % len(boundaries)]
        j = (idx + 1) % n
        while True:
            arc_at[j] = arc_name
            if j == end:
                break
            j = (j + 1) % n
    assert len(set(arc_order)) == len(arc_order)

    # locate each over-instance's enclosing C arc, per slab
    over_arc = {}
    for idx, (kind, name, slab) in enumerate(instances):
        if kind == "over":
            over_arc[(name, slab)] = arc_at[idx]

    crossings = []
    for b_pos, idx in enumerate(boundaries):
        _, name, slab = instances[idx]
        over, _, _, sign = BASE[name]
        under_in = arc_at[idx]  # the arc that ends here
        under_out = arc_order[b_pos]
        if name in ZETA_UNDER:
            crossings.append(Crossing(over, under_in, under_out, sign))
        else:
            crossings.append(Crossing(over_arc[(name, slab)],
                                      under_in, under_out, sign))
    for name in sorted(ZETA_OVER):
        over, under_in, under_out, sign = BASE[name]
        crossings.append(Crossing(over_arc[(name, 0)], under_in, under_out, sign))

    components = [arc_order, ["x7", "x8", "x9"]]
    return LinkDiagram(arc_order + ["x7", "x8", "x9"], components, crossings)


def check_jester_curve(d):
    report = validate_diagram(d)
    assert report["components"] == 2
    assert report["crossings"] == 12 and report["arcs"] == 12
    assert len(d.components[0]) == 9
    assert abs(linking_number(d, 0, 1)) == 1
    assert linking_number(d, 0, 1) == linking_number(d, 1, 0)
    assert abelianization(wirtinger(d)) == [0, 0]


# ---------------------------------------------------------------------------
# Spine complexes

DUNCE_WORD = IdentificationPolygon((("a", 1), ("a", 1), ("a", -1)))
JESTER_WORD = IdentificationPolygon(
    (("a", 1), ("a", -1), ("a", 1), ("b", -1), ("b", 1), ("b", -1)))
JESTER_CUT = (0, 3)  # spoke corners separating the a fan from the b fan


def build_spines():
    dunce, _ = polygon_complex_with_layout(DUNCE_WORD)
    assert euler_characteristic(dunce) == 1
    assert free_faces(dunce) == []

    jester, layout = polygon_complex_with_layout(JESTER_WORD)
    assert euler_characteristic(jester) == 1
    assert all(len(f) != 2 for f, _ in free_faces(jester))

    i, j = JESTER_CUT
    fan_a = set(range(i, j))
    tris_a = sorted(sorted(t) for t, root in layout["fans"].items()
                    if root in fan_a)
    tris_b = sorted(sorted(t) for t, root in layout["fans"].items()
                    if root not in fan_a)
    a = subcomplex_from_maximal(jester, tris_a)
    b = subcomplex_from_maximal(jester, tris_b)
    rep = split_check(jester, a, b, budget=10 ** 6, seed=0)
    assert rep["union_ok"] and rep["a_collapsible"] and rep["b_collapsible"] \
        and rep["c_collapsible"]
    return dunce, jester, tris_a, tris_b


# ---------------------------------------------------------------------------
# Presentations, representation assignment, pipeline config

TWO_GENERATOR = Presentation(
    ["alpha", "beta"],
    [Word.parse("alpha^-7 beta^5"),
     Word.parse("beta^4 alpha^-2 beta^-1 alpha^-2")],
)

QUOTIENT = Presentation(
    ["beta", "gamma"],
    [Word.parse("gamma^7"), Word.parse("beta^5"),
     Word.parse("beta gamma beta gamma")],
)

ASSIGNMENT = {
    "triangle": {"angles": [math.pi / 7, math.pi / 2, math.pi / 5]},
    "map": {
        "beta": {"rotation": {"vertex": "C", "angle": -2 * math.pi / 5}},
        "gamma": {"rotation": {"vertex": "A", "angle": -2 * math.pi / 7}},
    },
    "presentation": QUOTIENT.to_json_obj(),
    "meridian": {
        "arc": "x5",
        "image": [["beta", -1], ["beta", -1], ["gamma", 1]],
        "tol": 1e-3,
        "min_distance": 3.2,
    },
}


# ---------------------------------------------------------------------------
# Pro-isomorphism example sequences


def factor_sequences():
    z2 = FiniteGroup.cyclic(2)
    z3 = FiniteGroup.cyclic(3)
    z5 = FiniteGroup.cyclic(5)
    sa = FactorSequence((z2, z3), {"Z2": INF, "Z3": INF})
    sb = FactorSequence((z3, z2), {"Z3": INF, "Z2": INF})
    sc = FactorSequence((z2, z3, z5), {"Z2": INF, "Z3": INF, "Z5": INF})
    return sa, sb, sc


def main():
    DATA.mkdir(parents=True, exist_ok=True)

    check_mazur()
    dump("mazur_link.json", MAZUR.to_json_obj())
    dump("mazur_relators.json", surgery_relators_to_json_obj([
        SurgeryRelator("r_zeta", R_ZETA, "longitude-of zeta"),
        SurgeryRelator("r_Gamma", R_GAMMA, "longitude-of Gamma"),
    ]))

    curve = build_jester_curve()
    check_jester_curve(curve)
    dump("jester_curve_link.json", curve.to_json_obj())

    dunce, jester, tris_a, tris_b = build_spines()
    dump("dunce_polygon.json", DUNCE_WORD.to_json_obj())
    dump("dunce_hat.json", dunce.to_json_obj())
    dump("jester_polygon.json", JESTER_WORD.to_json_obj())
    dump("jester_hat.json", jester.to_json_obj())
    dump("jester_split.json", {"a": tris_a, "b": tris_b})

    dump("two_generator_presentation.json", TWO_GENERATOR.to_json_obj())
    dump("quotient_presentation.json", QUOTIENT.to_json_obj())
    dump("triangle_assignment.json", ASSIGNMENT)

    sa, sb, sc = factor_sequences()
    dump("sequence_alternating_23.json", sa.to_json_obj())
    dump("sequence_alternating_32.json", sb.to_json_obj())
    dump("sequence_with_z5.json", sc.to_json_obj())


if __name__ == "__main__":
    main()
