"""Oriented link diagrams, Wirtinger presentations, and surgery relators.

Crossing convention (fixed once, used everywhere):

        out |         ^
            |         |  over arc o, sign e = +1 (right-handed):
      o ----+---->    |  the under strand enters at `in`, leaves at `out`,
            |         |  and the Wirtinger relator at the crossing is
         in |
                x_out * x_o^(-e) * x_in^(-1) * x_o^(e)  =  1,

i.e. x_out = x_o^(-e) x_in x_o^(e).  A left-handed crossing carries e = -1
and conjugates the other way.  Traversing a component, each undercrossing
contributes the letter x_o^e to the component's longitude.

Framings are counted relative to the diagram (blackboard) framing:
``longitude_word(d, comp, framing)`` is the raw over-arc product times
meridian^framing, so framing 0 is the "as drawn, no extra twists" parallel.
The 0-linking (Seifert) parallel is ``framing = -writhe(d, comp)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation, UnknownGenerator
from .words import Word, free_reduce


class MalformedDiagram(ValueError):
    pass


class UnknownArc(KeyError):
    pass


class UnknownComponent(KeyError):
    pass


@dataclass(frozen=True)
class Crossing:
    over: str
    under_in: str
    under_out: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise MalformedDiagram("crossing sign must be +1 or -1")


@dataclass(frozen=True)
class SurgeryRelator:
    """A relator adjoined for a Dehn filling or a 2-handle attachment."""

    label: str
    word: Word
    provenance: str = "explicit"  # or "longitude-of <component>"


class LinkDiagram:
    """Arcs partitioned into cyclically ordered components, plus crossings.

    Arcs are named; each component lists its arcs in traversal order.  The
    diagram is purely combinatorial: planarity or realizability is never
    checked, only the incidence structure.
    """

    __slots__ = ("arcs", "components", "crossings")

    def __init__(self, arcs, components, crossings):
        object.__setattr__(self, "arcs", tuple(str(a) for a in arcs))
        object.__setattr__(self, "components",
                           tuple(tuple(str(a) for a in comp) for comp in components))
        object.__setattr__(self, "crossings", tuple(
            c if isinstance(c, Crossing) else Crossing(*c) for c in crossings))

    def __setattr__(self, name, value):
        raise AttributeError("LinkDiagram is immutable")

    def component_of(self, arc: str) -> int:
        for i, comp in enumerate(self.components):
            if arc in comp:
                return i
        raise UnknownArc(arc)

    def component_index(self, component) -> int:
        """Accept a component index or any arc name on the component."""
        if isinstance(component, int):
            if not 0 <= component < len(self.components):
                raise UnknownComponent(component)
            return component
        if component in self.arcs:
            return self.component_of(component)
        raise UnknownComponent(component)

    def successor(self, arc: str) -> str:
        comp = self.components[self.component_of(arc)]
        return comp[(comp.index(arc) + 1) % len(comp)]

    def to_json_obj(self):
        return {
            "arcs": list(self.arcs),
            "components": [list(c) for c in self.components],
            "crossings": [
                {"over": c.over, "under_in": c.under_in,
                 "under_out": c.under_out, "sign": c.sign}
                for c in self.crossings
            ],
        }

    @classmethod
    def from_json_obj(cls, obj):
        crossings = [Crossing(c["over"], c["under_in"], c["under_out"], int(c["sign"]))
                     for c in obj["crossings"]]
        return cls(obj["arcs"], obj["components"], crossings)


def validate_diagram(d: LinkDiagram) -> dict:
    """Check the arc/crossing incidence invariants.

    Raises MalformedDiagram naming the first violation; returns a report
    with component, arc and crossing counts plus per-component writhes.
    """
    arcs = set(d.arcs)
    if len(arcs) != len(d.arcs):
        raise MalformedDiagram("duplicate arc names")
    seen = set()
    for comp in d.components:
        if not comp:
            raise MalformedDiagram("empty component")
        for a in comp:
            if a not in arcs:
                raise MalformedDiagram("component arc %r not declared" % a)
            if a in seen:
                raise MalformedDiagram("arc %r in more than one component" % a)
            seen.add(a)
    if seen != arcs:
        raise MalformedDiagram(
            "arcs %s not in any component" % sorted(arcs - seen))

    under_in_count = {a: 0 for a in arcs}
    under_out_count = {a: 0 for a in arcs}
    for c in d.crossings:
        for a in (c.over, c.under_in, c.under_out):
            if a not in arcs:
                raise MalformedDiagram("crossing references unknown arc %r" % a)
        if d.component_of(c.under_in) != d.component_of(c.under_out):
            raise MalformedDiagram(
                "under arcs %r -> %r lie on different components"
                % (c.under_in, c.under_out))
        if d.successor(c.under_in) != c.under_out:
            raise MalformedDiagram(
                "under arcs %r -> %r are not consecutive" % (c.under_in, c.under_out))
        under_in_count[c.under_in] += 1
        under_out_count[c.under_out] += 1

    for i, comp in enumerate(d.components):
        n_under = sum(under_in_count[a] for a in comp)
        if n_under == 0:
            if len(comp) != 1:
                raise MalformedDiagram(
                    "component %d has no undercrossings but %d arcs" % (i, len(comp)))
            continue
        for a in comp:
            if under_in_count[a] != 1:
                raise MalformedDiagram(
                    "arc %r is under-in %d times (expected 1)" % (a, under_in_count[a]))
            if under_out_count[a] != 1:
                raise MalformedDiagram(
                    "arc %r is under-out %d times (expected 1)" % (a, under_out_count[a]))

    return {
        "valid": True,
        "components": len(d.components),
        "arcs": len(d.arcs),
        "crossings": len(d.crossings),
        "writhe": [writhe(d, i) for i in range(len(d.components))],
    }


def writhe(d: LinkDiagram, component) -> int:
    """Sum of signs of the component's self-crossings."""
    i = d.component_index(component)
    comp = set(d.components[i])
    return sum(c.sign for c in d.crossings
               if c.over in comp and c.under_in in comp)


def linking_number(d: LinkDiagram, comp_a, comp_b) -> int:
    """Sum of signs of crossings where comp_a passes over comp_b.

    For a diagram of an actual link this equals the linking number.
    """
    a = set(d.components[d.component_index(comp_a)])
    b = set(d.components[d.component_index(comp_b)])
    return sum(c.sign for c in d.crossings if c.over in a and c.under_in in b)


def wirtinger(d: LinkDiagram) -> Presentation:
    """Wirtinger presentation: one generator per arc, one relator per crossing.

    The relator at a crossing is x_out * x_over^(-sign) * x_in^(-1) *
    x_over^(sign); relator order follows the crossing list.
    """
    validate_diagram(d)
    relators = []
    for c in d.crossings:
        relators.append(Word([
            (c.under_out, 1),
            (c.over, -c.sign),
            (c.under_in, -1),
            (c.over, c.sign),
        ]))
    return Presentation(d.arcs, relators)


def meridian_word(d: LinkDiagram, arc: str) -> Word:
    """Single-letter word for the arc's Wirtinger generator."""
    if arc not in d.arcs:
        raise UnknownArc(arc)
    return Word([(arc, 1)])


def longitude_word(d: LinkDiagram, component, framing: int = 0) -> Word:
    """Longitude of a component as a word in the Wirtinger generators.

    Product, along the component, of the over-arc letters x_over^sign at its
    undercrossings, times meridian^framing; freely reduced.  Framing counts
    full twists relative to the blackboard framing of the diagram (framing 0
    is the parallel as drawn; -writhe gives the 0-linking parallel).
    """
    i = d.component_index(component)
    comp = d.components[i]
    under_in_to_crossing = {c.under_in: c for c in d.crossings
                            if c.under_in in set(comp)}
    letters = []
    for arc in comp:
        c = under_in_to_crossing.get(arc)
        if c is not None:
            letters.append((c.over, c.sign))
    meridian = comp[0]
    letters.extend([(meridian, 1 if framing > 0 else -1)] * abs(framing))
    return free_reduce(Word(letters))


def adjoin_relators(p: Presentation, relators) -> Presentation:
    """Append surgery relators to a presentation, preserving what is there."""
    new = list(p.relators)
    for r in relators:
        word = r.word if isinstance(r, SurgeryRelator) else r
        unknown = word.generators() - set(p.generators)
        if unknown:
            raise UnknownGenerator(
                "surgery relator uses unknown generators %s" % sorted(unknown))
        new.append(free_reduce(word))
    return Presentation(p.generators, new)


def surgery_relators_from_json_obj(obj) -> list:
    return [
        SurgeryRelator(
            label=item["label"],
            word=Word((g, e) for g, e in item["word"]),
            provenance=item.get("provenance", "explicit"),
        )
        for item in obj["relators"]
    ]


def surgery_relators_to_json_obj(relators) -> dict:
    return {
        "relators": [
            {"label": r.label,
             "word": [[g, e] for g, e in r.word.letters],
             "provenance": r.provenance}
            for r in relators
        ]
    }
