import pytest

from jester.links import Crossing, LinkDiagram


def unknot():
    return LinkDiagram(["u"], [["u"]], [])


def trefoil():
    arcs = ["a1", "a2", "a3"]
    crossings = [Crossing(arcs[(i + 2) % 3], arcs[i], arcs[(i + 1) % 3], 1)
                 for i in range(3)]
    return LinkDiagram(arcs, [arcs], crossings)


def figure_eight():
    # standard 4-crossing alternating diagram
    arcs = ["a1", "a2", "a3", "a4"]
    crossings = [
        Crossing("a3", "a1", "a2", 1),
        Crossing("a1", "a3", "a4", 1),
        Crossing("a4", "a2", "a3", -1),
        Crossing("a2", "a4", "a1", -1),
    ]
    return LinkDiagram(arcs, [arcs], crossings)


def hopf_link():
    return LinkDiagram(
        ["p", "q"], [["p"], ["q"]],
        [Crossing("q", "p", "p", 1), Crossing("p", "q", "q", 1)])


def two_component_unlink():
    return LinkDiagram(["p", "q"], [["p"], ["q"]], [])


def trefoil_with_split_unknot():
    base = trefoil()
    return LinkDiagram(list(base.arcs) + ["u"],
                       [list(base.components[0]), ["u"]],
                       base.crossings)


@pytest.fixture(scope="session")
def diagram_corpus():
    """Small valid diagrams (<= 12 crossings) with known component counts."""
    from jester.data_files import jester_curve_link, mazur_link
    return [
        (unknot(), 1),
        (trefoil(), 1),
        (figure_eight(), 1),
        (hopf_link(), 2),
        (two_component_unlink(), 2),
        (trefoil_with_split_unknot(), 2),
        (mazur_link(), 2),
        (jester_curve_link(), 2),
    ]


@pytest.fixture(scope="session")
def triangle_rep():
    from jester.hyperbolic import triangle_group_rep
    return triangle_group_rep(7, 5, 2)
