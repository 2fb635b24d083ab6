"""Dev-time search for the Mazur link transcription.

The printed surgery relators pin most of the diagram: the zeta component
has three arcs (x7, x8, x9) and no self-crossings, Gamma has six arcs, and
the nine crossings split 3 self + 3 Gamma-over-zeta + 3 zeta-over-Gamma.
What remains free is which Gamma traversal slots carry x3,x4,x5,x6, the
rotation of zeta's crossing sequence, traversal directions, and the anchor
slot of the crossing realizing x1 = x7^-1 x2 x7.

A candidate survives iff the generator images forced by beta = x7,
lambda = x2, alpha = beta*lambda are consistent across all nine Wirtinger
relators plus r_zeta and r_Gamma inside the (2,5,7) rotation triangle
group (the faithful image of the quotient G), and the abelianization
pins hold.
"""

import itertools
import json
import sys
import pathlib

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from jester.hyperbolic import evaluate_word, triangle_group_rep, Isometry
from jester.links import (LinkDiagram, Crossing, validate_diagram, wirtinger,
                          longitude_word, adjoin_relators, SurgeryRelator,
                          writhe, linking_number)
from jester.presentations import abelianization
from jester.words import Word, free_reduce, longitude_equivalent

R_ZETA = Word.parse("x5 x2^-1 x1^-1")
R_GAMMA = Word.parse("x7^-1 x5^-1 x7 x3^-1 x2^-1 x7^-1")

_, H = triangle_group_rep(7, 5, 2)
M_beta = H["beta"]
M_gamma = H["gamma"]
M_alpha = evaluate_word(Word.parse("gamma^4"), H)  # q(alpha) = gamma^4 in G

KNOWN = {
    "x7": M_beta,
    "x2": M_beta.inverse() @ M_alpha,        # lambda = beta^-1 alpha
}
KNOWN["x1"] = M_beta.inverse() @ KNOWN["x2"] @ M_beta      # r9
KNOWN["x5"] = KNOWN["x1"] @ KNOWN["x2"]                    # r_zeta

def close(a, b, tol=1e-8):
    return np.abs(a.matrix - b.matrix).max() < tol


def words_as_letters(w):
    return list(w.letters)


def candidate_diagrams():
    """Yield (diagram, meta) over the full toggle space."""
    gamma_targets = [("r_gamma", words_as_letters(R_GAMMA)),
                     ("r_gamma_inv", words_as_letters(~R_GAMMA))]
    zeta_targets = [("r_zeta", words_as_letters(R_ZETA)),
                    ("r_zeta_inv", words_as_letters(~R_ZETA))]
    for gname, gletters in gamma_targets:
        # anchor slot: crossing over x7 realizing x1 = x7^-1 x2 x7,
        # i.e. (in=x2, out=x1, sign+1) or (in=x1, out=x2, sign-1)
        for slot in range(6):
            g, e = gletters[slot]
            if g != "x7":
                continue
            if e == 1:
                under_in, under_out = "x2", "x1"
            else:
                under_in, under_out = "x1", "x2"
            # rotate so the anchor slot is position 2 (crossing g3->g4)
            rot = gletters[slot - 2:] + gletters[:slot - 2] if slot >= 2 else \
                gletters[slot + 4:] + gletters[:slot + 4]
            # rot[2] is the anchor; arcs g3 = under_in, g4 = under_out
            for rest in itertools.permutations(["x3", "x4", "x5", "x6"]):
                g_arcs = [rest[0], rest[1], under_in, under_out, rest[2], rest[3]]
                for zname, zl in zeta_targets:
                    for zrot in range(3):
                        zletters = zl[zrot:] + zl[:zrot]
                        yield build(g_arcs, rot, zletters), {
                            "gamma_target": gname, "anchor_slot": slot,
                            "assignment": rest, "zeta_target": zname,
                            "zeta_rot": zrot,
                        }


def build(g_arcs, gletters, zletters):
    zeta_arcs = ["x7", "x8", "x9"]
    crossings = []
    anchor = None
    for i in range(6):
        over, sign = gletters[i]
        c = Crossing(over, g_arcs[i], g_arcs[(i + 1) % 6], sign)
        if i == 2:
            anchor = c
        else:
            crossings.append(c)
    for i in range(3):
        over, sign = zletters[i]
        crossings.append(Crossing(over, zeta_arcs[i], zeta_arcs[(i + 1) % 3], sign))
    crossings.append(anchor)  # r9 is the ninth relator
    return LinkDiagram(
        arcs=g_arcs + zeta_arcs,
        components=[g_arcs, zeta_arcs],
        crossings=crossings,
    )


def images_consistent(d):
    """Propagate generator images from the seeds; check all relators in the
    triangle group."""
    images = dict(KNOWN)
    # propagate x_out = over^-e x_in over^e both ways until stable
    changed = True
    while changed:
        changed = False
        for c in d.crossings:
            if c.over not in images:
                continue
            o = images[c.over] if c.sign == 1 else images[c.over].inverse()
            # x_out = o^-1 x_in o ; x_in = o x_out o^-1
            if c.under_in in images and c.under_out not in images:
                images[c.under_out] = o.inverse() @ images[c.under_in] @ o
                changed = True
            elif c.under_out in images and c.under_in not in images:
                images[c.under_in] = o @ images[c.under_out] @ o.inverse()
                changed = True
    if len(images) != 9:
        return None
    assignment = {g: images[g] for g in d.arcs}
    # every crossing relator + the surgery relators must die in the target
    for c in d.crossings:
        o = assignment[c.over] if c.sign == 1 else assignment[c.over].inverse()
        lhs = assignment[c.under_out]
        rhs = o.inverse() @ assignment[c.under_in] @ o
        if not close(lhs, rhs):
            return None
    for rel in (R_ZETA, R_GAMMA):
        m = Isometry.identity()
        for g, e in rel.letters:
            m = m @ (assignment[g] if e == 1 else assignment[g].inverse())
        if m.identity_distance() > 1e-8:
            return None
    return assignment


def main():
    survivors = []
    total = 0
    for d, meta in candidate_diagrams():
        total += 1
        try:
            validate_diagram(d)
        except Exception as exc:
            print("invalid candidate!?", meta, exc)
            continue
        if not longitude_equivalent(longitude_word(d, 0, 0), R_GAMMA):
            continue
        if not longitude_equivalent(longitude_word(d, 1, 0), R_ZETA):
            continue
        if images_consistent(d) is None:
            continue
        # both over-counts must compute the same linking number for the
        # diagram to be planar-realizable
        if linking_number(d, 0, 1) != linking_number(d, 1, 0):
            continue
        p = wirtinger(d)
        if abelianization(p) != [0, 0]:
            continue
        full = adjoin_relators(p, [SurgeryRelator("r_zeta", R_ZETA, "longitude-of zeta"),
                                   SurgeryRelator("r_Gamma", R_GAMMA, "explicit")])
        if abelianization(full) != []:
            continue
        survivors.append((d, meta))
    print("candidates:", total, "survivors:", len(survivors))
    for d, meta in survivors:
        print(json.dumps(meta, default=str))
        print("  components:", d.components)
        print("  writhe gamma:", writhe(d, 0), " lk:", linking_number(d, 0, 1),
              linking_number(d, 1, 0))
    if survivors:
        d, meta = survivors[0]
        print("\nchosen:", json.dumps(meta, default=str))
        print(json.dumps(d.to_json_obj(), indent=1))


if __name__ == "__main__":
    main()
