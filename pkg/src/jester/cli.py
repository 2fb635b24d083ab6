"""Batch command-line front end.

Every command reads JSON inputs, writes a single machine-diffable JSON
report to stdout (embedding input hashes and the tolerances used), and a
one-line human summary to stderr.  Exit codes: 0 = success / property
holds, 1 = checked and false, 2 = could not check (bad input, budget).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import links
from .complexes import (BudgetExceeded, SimplicialComplex, euler_characteristic,
                        free_faces, is_collapsible, split_check,
                        subcomplex_from_maximal, verify_collapse_sequence)
from .hyperbolic import evaluate_word, is_identity, rotation, triangle_from_angles
from .presentations import Presentation, abelianization, verify_homomorphism
from .prosequences import FactorSequence, build_ladder, ladder_verify, pro_isomorphic
from .words import Word


class InputError(Exception):
    """Anything that makes a stage impossible rather than false."""

    def __init__(self, stage, message):
        super().__init__(message)
        self.stage = stage


def _sha256(path):
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def _load_json(path, stage):
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(stage, "cannot read %s: %s" % (path, exc))


def _report(command, inputs, parameters, result):
    return {
        "command": command,
        "inputs": {path: _sha256(path) for path in inputs},
        "parameters": parameters,
        "result": result,
    }


def _emit(report, summary, exit_code):
    print(json.dumps(report, indent=1, sort_keys=True, default=str))
    print(summary, file=sys.stderr)
    return exit_code


def _word_from_json(letters):
    return Word((g, e) for g, e in letters)


def _load_assignment(obj, stage):
    """Build the rotation assignment of a rep-verify input file.

    The file names a triangle by its interior angles at A, B, C (radians)
    and maps each generator to a rotation about one vertex.
    """
    try:
        angles = obj["triangle"]["angles"]
        triangle = triangle_from_angles(*angles)
        assignment = {}
        for gen, spec in obj["map"].items():
            rot = spec["rotation"]
            center = triangle["vertices"][rot["vertex"]]
            assignment[gen] = rotation(center, float(rot["angle"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(stage, "bad assignment file: %s" % exc)
    return triangle, assignment


# ---------------------------------------------------------------------------
# commands


def cmd_wirtinger(args):
    stage = "load_diagram"
    inputs = [args.diagram]
    obj = _load_json(args.diagram, stage)
    try:
        diagram = links.LinkDiagram.from_json_obj(obj)
        validation = links.validate_diagram(diagram)
        presentation = links.wirtinger(diagram)
    except (links.MalformedDiagram, KeyError, TypeError) as exc:
        raise InputError("validate_diagram", str(exc))

    result = {
        "validation": validation,
        "generators": len(presentation.generators),
        "relators": len(presentation.relators),
    }
    if args.adjoin:
        inputs.append(args.adjoin)
        relators = links.surgery_relators_from_json_obj(
            _load_json(args.adjoin, "load_relators"))
        try:
            presentation = links.adjoin_relators(presentation, relators)
        except links.UnknownGenerator as exc:
            raise InputError("adjoin_relators", str(exc))
        result["relators_after_adjoin"] = len(presentation.relators)
    if args.abelianize:
        result["abelianization"] = abelianization(presentation)
    result["presentation"] = presentation.to_json_obj()

    report = _report("wirtinger", inputs,
                     {"adjoin": bool(args.adjoin), "abelianize": args.abelianize},
                     result)
    return _emit(report, "wirtinger: %d generators, %d relators"
                 % (result["generators"], result["relators"]), 0)


def cmd_rep_verify(args):
    pres = Presentation.from_json_obj(
        _load_json(args.presentation, "load_presentation"))
    assignment_obj = _load_json(args.assignment, "load_assignment")
    _, assignment = _load_assignment(assignment_obj, "build_assignment")
    try:
        check = verify_homomorphism(pres, assignment, args.tol)
    except Exception as exc:
        raise InputError("verify_homomorphism", str(exc))
    report = _report("rep-verify", [args.presentation, args.assignment],
                     {"tol": args.tol}, check)
    ok = check["holds"]
    return _emit(report, "rep verify: %s (max residual %.3g)"
                 % ("holds" if ok else "fails", max(check["residuals"], default=0.0)),
                 0 if ok else 1)


def cmd_collapse(args):
    obj = _load_json(args.complex, "load_complex")
    try:
        complex_ = SimplicialComplex.from_json_obj(obj)
    except Exception as exc:
        raise InputError("load_complex", str(exc))
    parameters = {"budget": args.budget, "seed": args.seed}
    try:
        result = is_collapsible(complex_, budget=args.budget, seed=args.seed)
    except BudgetExceeded as exc:
        raise InputError("is_collapsible", str(exc))

    if result.sequence is not None:
        ok = verify_collapse_sequence(complex_, result.sequence)
        payload = {
            "collapsible": True,
            "steps": len(result.sequence.steps),
            "verified": ok,
            "states": result.states,
            "sequence": [[sorted(f), sorted(c)] for f, c in result.sequence.steps],
        }
        report = _report("collapse", [args.complex], parameters, payload)
        return _emit(report, "collapse: collapsible in %d steps"
                     % len(result.sequence.steps), 0 if ok else 2)
    reason = ("no free face" if not free_faces(complex_)
              else "search exhausted" if result.proven_noncollapsible
              else "none found")
    payload = {"collapsible": False, "proven": result.proven_noncollapsible,
               "reason": reason, "states": result.states,
               "euler_characteristic": euler_characteristic(complex_)}
    report = _report("collapse", [args.complex], parameters, payload)
    return _emit(report, "collapse: not collapsible (%s)" % reason, 1)


def _load_part(path, key):
    obj = _load_json(path, "load_split_part")
    if isinstance(obj, dict):
        obj = obj[key]
    return [frozenset(t) for t in obj]


def cmd_split(args):
    complex_ = SimplicialComplex.from_json_obj(
        _load_json(args.complex, "load_complex"))
    try:
        a = subcomplex_from_maximal(complex_, _load_part(args.a, "a"))
        b = subcomplex_from_maximal(complex_, _load_part(args.b, "b"))
        rep = split_check(complex_, a, b, budget=args.budget, seed=args.seed)
    except BudgetExceeded as exc:
        raise InputError("split_check", str(exc))
    except Exception as exc:
        raise InputError("load_subcomplexes", str(exc))
    ok = (rep["union_ok"] and rep["a_collapsible"] and rep["b_collapsible"]
          and rep["c_collapsible"])
    payload = {
        "union_ok": rep["union_ok"],
        "a_collapsible": rep["a_collapsible"],
        "b_collapsible": rep["b_collapsible"],
        "c_collapsible": rep["c_collapsible"],
        "intersection_size": len(rep["intersection"]),
    }
    report = _report("split", [args.complex, args.a, args.b],
                     {"budget": args.budget, "seed": args.seed}, payload)
    return _emit(report, "split: %s" % ("all three collapse" if ok else "fails"),
                 0 if ok else 1)


def cmd_proiso(args):
    sa = FactorSequence.from_json_obj(_load_json(args.a, "load_sequence"))
    sb = FactorSequence.from_json_obj(_load_json(args.b, "load_sequence"))
    try:
        rep = pro_isomorphic(sa, sb)
    except Exception as exc:
        raise InputError("pro_isomorphic", str(exc))
    payload = dict(rep)
    if rep["decision"]:
        ladder = build_ladder(sa, sb, depth=args.refute_depth)
        payload["ladder_indices"] = {"left": list(ladder.left_indices),
                                     "right": list(ladder.right_indices)}
        payload["ladder_verified"] = ladder_verify(sa, sb, ladder,
                                                   depth=args.refute_depth)
    report = _report("proiso", [args.a, args.b],
                     {"refute_depth": args.refute_depth}, payload)
    if rep["decision"]:
        return _emit(report, "proiso: pro-isomorphic (ladder verified: %s)"
                     % payload["ladder_verified"],
                     0 if payload["ladder_verified"] else 2)
    cert = rep["certificate"]
    return _emit(report, "proiso: distinct; distinguishing factor %s (%s vs %s)"
                 % (cert["distinguishing_class"], cert["multiplicity_a"],
                    cert["multiplicity_b"]), 1)


def cmd_mazur(args):
    inputs = [args.diagram, args.relators, args.assignment]
    result = {"stages": {}}

    obj = _load_json(args.diagram, "load_diagram")
    try:
        diagram = links.LinkDiagram.from_json_obj(obj)
        result["stages"]["validate_diagram"] = links.validate_diagram(diagram)
    except (links.MalformedDiagram, KeyError, TypeError) as exc:
        raise InputError("validate_diagram", str(exc))

    presentation = links.wirtinger(diagram)
    result["stages"]["wirtinger"] = {
        "generators": len(presentation.generators),
        "relators": len(presentation.relators),
    }

    relators = links.surgery_relators_from_json_obj(
        _load_json(args.relators, "load_relators"))
    try:
        presentation = links.adjoin_relators(presentation, relators)
    except links.UnknownGenerator as exc:
        raise InputError("adjoin_relators", str(exc))
    result["stages"]["adjoin_relators"] = {
        "labels": [r.label for r in relators],
        "relators": len(presentation.relators),
    }

    factors = abelianization(presentation)
    result["stages"]["abelianization"] = factors
    if factors:
        # a visibly nontrivial abelianization already certifies the group
        result["verdict"] = "nontrivial"
        result["certified_by"] = "abelianization"
        result["rep_stage"] = "skipped"
        report = _report("mazur", inputs, {"tol": args.tol}, result)
        return _emit(report, "mazur: nontrivial (abelianization %s)" % factors, 0)

    assignment_obj = _load_json(args.assignment, "load_assignment")
    _, assignment = _load_assignment(assignment_obj, "build_assignment")
    try:
        quotient = Presentation.from_json_obj(assignment_obj["presentation"])
    except KeyError:
        raise InputError("load_assignment",
                         "assignment file lacks the quotient presentation")
    check = verify_homomorphism(quotient, assignment, args.tol)
    result["stages"]["rep_verify"] = check
    if not check["holds"]:
        result["verdict"] = "inconclusive"
        report = _report("mazur", inputs, {"tol": args.tol}, result)
        return _emit(report, "mazur: representation fails its relators", 1)

    meridian = assignment_obj.get("meridian")
    if not meridian:
        raise InputError("meridian", "assignment file lacks a meridian block")
    image = evaluate_word(_word_from_json(meridian["image"]), assignment)
    distance = image.identity_distance()
    nontrivial = not is_identity(image, float(meridian.get("tol", 1e-3)))
    result["stages"]["meridian"] = {
        "arc": meridian.get("arc"),
        "identity_distance": distance,
        "nontrivial": nontrivial,
    }
    result["verdict"] = "nontrivial" if nontrivial else "inconclusive"
    result["certified_by"] = "triangle representation" if nontrivial else None
    report = _report("mazur", inputs, {"tol": args.tol}, result)
    if nontrivial:
        return _emit(report, "mazur: nontrivial (meridian image distance %.3f)"
                     % distance, 0)
    return _emit(report, "mazur: inconclusive", 1)


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jester",
        description="Surgery presentations, triangle-group certificates, "
                    "collapsibility search, and pro-isomorphism invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wirtinger", help="Wirtinger presentation of a diagram")
    p.add_argument("diagram")
    p.add_argument("--adjoin", metavar="RELATORS")
    p.add_argument("--abelianize", action="store_true")
    p.set_defaults(func=cmd_wirtinger)

    rep = sub.add_parser("rep", help="representation checks")
    rep_sub = rep.add_subparsers(dest="rep_command", required=True)
    p = rep_sub.add_parser("verify", help="verify relators under an assignment")
    p.add_argument("--presentation", required=True)
    p.add_argument("--assignment", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_rep_verify)

    p = sub.add_parser("collapse", help="search for a collapse to a point")
    p.add_argument("complex")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("split", help="check an A-union-B splitting premise")
    p.add_argument("complex")
    p.add_argument("--a", required=True, metavar="IDS")
    p.add_argument("--b", required=True, metavar="IDS")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("proiso", help="compare two factor sequences")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--refute-depth", type=int, default=3)
    p.set_defaults(func=cmd_proiso)

    p = sub.add_parser("mazur", help="full boundary nontriviality pipeline")
    p.add_argument("diagram")
    p.add_argument("relators")
    p.add_argument("assignment")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_mazur)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        report = {"command": args.command, "error": str(exc), "stage": exc.stage}
        print(json.dumps(report, indent=1, sort_keys=True))
        print("error at stage %s: %s" % (exc.stage, exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
