"""Loaders for the checked-in example data (importlib.resources based).

The files under data/ are generated by tools/make_data.py; see that script
for the construction and the machine checks each file passes.
"""

from __future__ import annotations

import json
from importlib import resources

from .complexes import IdentificationPolygon, SimplicialComplex
from .links import LinkDiagram, surgery_relators_from_json_obj
from .presentations import Presentation
from .prosequences import FactorSequence


def _load(name: str):
    ref = resources.files("jester.data").joinpath(name)
    return json.loads(ref.read_text())


def mazur_link() -> LinkDiagram:
    """The two-component surgery diagram of the Mazur manifold boundary."""
    return LinkDiagram.from_json_obj(_load("mazur_link.json"))


def mazur_relators():
    """The filling relator r_zeta and the handle relator r_Gamma."""
    return surgery_relators_from_json_obj(_load("mazur_relators.json"))


def jester_curve_link() -> LinkDiagram:
    """Double-cover lift of the Mazur diagram: the Jester attaching curve."""
    return LinkDiagram.from_json_obj(_load("jester_curve_link.json"))


def dunce_polygon() -> IdentificationPolygon:
    return IdentificationPolygon.from_json_obj(_load("dunce_polygon.json"))


def dunce_hat() -> SimplicialComplex:
    return SimplicialComplex.from_json_obj(_load("dunce_hat.json"))


def jester_polygon() -> IdentificationPolygon:
    return IdentificationPolygon.from_json_obj(_load("jester_polygon.json"))


def jester_hat() -> SimplicialComplex:
    return SimplicialComplex.from_json_obj(_load("jester_hat.json"))


def jester_split():
    """Triangle lists for the two halves of the hexagon-spine decomposition."""
    obj = _load("jester_split.json")
    return ([frozenset(t) for t in obj["a"]], [frozenset(t) for t in obj["b"]])


def two_generator_presentation() -> Presentation:
    return Presentation.from_json_obj(_load("two_generator_presentation.json"))


def quotient_presentation() -> Presentation:
    return Presentation.from_json_obj(_load("quotient_presentation.json"))


def triangle_assignment() -> dict:
    """Rep-verify input: named triangle, rotation map, meridian block."""
    return _load("triangle_assignment.json")


def factor_sequence(name: str) -> FactorSequence:
    """One of the shipped example sequences:
    'alternating_23', 'alternating_32', 'with_z5'."""
    return FactorSequence.from_json_obj(_load("sequence_%s.json" % name))
