"""Simplicial complexes from polygon identifications, elementary collapses,
collapsibility search, and the union-of-collapsibles splitting premise.

Complexes are stored as the full face-closed set of simplices (frozensets
of vertex names).  Dimension is capped at 3; everything the builders emit
is dimension 2, which is all the search is tuned for.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import chain, combinations

MAX_SIMPLEX_SIZE = 4


class ComplexError(ValueError):
    pass


class DegenerateWord(ComplexError):
    pass


class NotFreePair(ComplexError):
    pass


class NotSubcomplex(ComplexError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, states):
        super().__init__("search budget exhausted after %d states" % states)
        self.states = states


def _proper_subsets(s):
    items = sorted(s)
    for k in range(1, len(items)):
        for sub in combinations(items, k):
            yield frozenset(sub)


class SimplicialComplex:
    """A finite simplicial complex: a face-closed family of vertex sets."""

    __slots__ = ("simplices",)

    def __init__(self, simplices, closed=False):
        sims = set(frozenset(s) for s in simplices)
        for s in sims:
            if not s:
                raise ComplexError("empty simplex")
            if len(s) > MAX_SIMPLEX_SIZE:
                raise ComplexError("simplex %s exceeds dimension %d"
                                   % (sorted(s), MAX_SIMPLEX_SIZE - 1))
        if not closed:
            for s in list(sims):
                sims.update(_proper_subsets(s))
        else:
            for s in sims:
                for f in _proper_subsets(s):
                    if f not in sims:
                        raise ComplexError("not face-closed at %s" % sorted(f))
        object.__setattr__(self, "simplices", frozenset(sims))

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.simplices == other.simplices)

    def __hash__(self):
        return hash(self.simplices)

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return frozenset(s) in self.simplices

    def __repr__(self):
        counts = self.counts_by_dimension()
        return "SimplicialComplex(%s)" % ", ".join(
            "%d %d-cells" % (c, d) for d, c in enumerate(counts))

    def vertices(self):
        return {v for s in self.simplices for v in s}

    def dimension(self):
        return max(len(s) for s in self.simplices) - 1

    def counts_by_dimension(self):
        counts = [0] * (self.dimension() + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def maximal_simplices(self):
        maximal = []
        for s in self.simplices:
            if not any(s < t for t in self.simplices):
                maximal.append(s)
        return maximal

    def is_connected(self):
        verts = list(self.vertices())
        if not verts:
            return True
        seen = {verts[0]}
        frontier = [verts[0]]
        adj = {}
        for s in self.simplices:
            if len(s) == 2:
                a, b = tuple(s)
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
        while frontier:
            v = frontier.pop()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(verts)

    def to_json_obj(self):
        return {
            "vertices": sorted(self.vertices()),
            "simplices": sorted(sorted(s) for s in self.maximal_simplices()),
        }

    @classmethod
    def from_json_obj(cls, obj):
        sims = [frozenset(s) for s in obj["simplices"]]
        sims.extend(frozenset([v]) for v in obj.get("vertices", []))
        return cls(sims)


def euler_characteristic(k: SimplicialComplex) -> int:
    """Alternating sum of simplex counts by dimension."""
    return sum((-1) ** (len(s) - 1) for s in k.simplices)


def free_faces(k: SimplicialComplex):
    """All (face, coface) pairs where face lies in exactly one larger simplex.

    The unique coface then necessarily has dimension one more.  Pairs come
    back sorted for deterministic downstream search.
    """
    cofaces = {}
    for s in k.simplices:
        for f in _proper_subsets(s):
            cofaces.setdefault(f, []).append(s)
    out = []
    for f, over in cofaces.items():
        if len(over) == 1:
            out.append((f, over[0]))
    out.sort(key=lambda p: (sorted(p[0]), sorted(p[1])))
    return out


def elementary_collapse(k: SimplicialComplex, face, coface) -> SimplicialComplex:
    """Remove a free face together with its unique coface."""
    face, coface = frozenset(face), frozenset(coface)
    if (face, coface) not in set(free_faces(k)):
        raise NotFreePair("(%s, %s) is not a free pair" %
                          (sorted(face), sorted(coface)))
    return SimplicialComplex(k.simplices - {face, coface}, closed=True)


@dataclass(frozen=True)
class CollapseSequence:
    steps: tuple  # of (face, coface) frozenset pairs


@dataclass(frozen=True)
class CollapseResult:
    sequence: object        # CollapseSequence or None
    proven_noncollapsible: bool
    states: int

    @property
    def none_found(self):
        return self.sequence is None

    @property
    def search_exhausted(self):
        return self.proven_noncollapsible


class _SearchSpace:
    """Indexed view of a complex for incremental free-pair bookkeeping.

    Simplices get bit positions; a state is the bitmask of present
    simplices, which makes memoizing visited dead ends cheap.
    """

    def __init__(self, k: SimplicialComplex):
        self.simplices = sorted(k.simplices, key=lambda s: (len(s), sorted(s)))
        self.index = {s: i for i, s in enumerate(self.simplices)}
        n = len(self.simplices)
        self.cofaces = [[] for _ in range(n)]  # strictly larger present simplices
        self.faces = [[] for _ in range(n)]    # strictly smaller
        for s, i in self.index.items():
            for f in _proper_subsets(s):
                j = self.index[f]
                self.cofaces[j].append(i)
                self.faces[i].append(j)
        self.count = [len(c) for c in self.cofaces]
        self.present = [True] * n
        self.n_present = n
        self.mask = (1 << n) - 1

    def free_pairs(self):
        pairs = []
        for i in range(len(self.simplices)):
            if self.present[i] and self.count[i] == 1:
                coface = next(j for j in self.cofaces[i] if self.present[j])
                pairs.append((i, coface))
        return pairs

    def remove_pair(self, face, coface):
        for s in (face, coface):
            self.present[s] = False
            self.mask &= ~(1 << s)
            for j in self.faces[s]:
                self.count[j] -= 1
        self.n_present -= 2

    def restore_pair(self, face, coface):
        for s in (face, coface):
            self.present[s] = True
            self.mask |= 1 << s
            for j in self.faces[s]:
                self.count[j] += 1
        self.n_present += 2

    def name_pair(self, pair):
        return (self.simplices[pair[0]], self.simplices[pair[1]])


def is_collapsible(k: SimplicialComplex, budget: int = 1_000_000,
                   seed: int = 0, restarts: int = 16) -> CollapseResult:
    """Search for a collapse of k to a single vertex.

    Seeded randomized greedy rollouts first, then systematic backtracking
    over free pairs in a fixed order with visited-state memoization; the
    outcome is deterministic given the seed.  A negative answer is *proven*
    only when the root has no free pair, the Euler characteristic rules a
    collapse out, or the backtracking search exhausts the state space
    within budget; running out of budget raises BudgetExceeded instead.
    """
    if not len(k.simplices):
        raise ComplexError("empty complex")
    if not k.is_connected():
        raise ComplexError("complex must be connected")

    states = 0
    if len(k.simplices) == 1:
        return CollapseResult(CollapseSequence(()), False, states)
    # chi is preserved by collapses and a point has chi 1
    if euler_characteristic(k) != 1:
        return CollapseResult(None, True, states)

    space = _SearchSpace(k)
    if not space.free_pairs():
        return CollapseResult(None, True, states)

    rng = random.Random(seed)
    for _ in range(restarts):
        steps = []
        while True:
            states += 1
            if states > budget:
                raise BudgetExceeded(states)
            if space.n_present == 1:
                for f, c in reversed(steps):
                    space.restore_pair(f, c)
                seq = CollapseSequence(tuple(space.name_pair(p) for p in steps))
                return CollapseResult(seq, False, states)
            pairs = space.free_pairs()
            if not pairs:
                break
            pair = rng.choice(pairs)
            space.remove_pair(*pair)
            steps.append(pair)
        for f, c in reversed(steps):
            space.restore_pair(f, c)

    dead = set()
    steps = []

    def dfs():
        nonlocal states
        states += 1
        if states > budget:
            raise BudgetExceeded(states)
        if space.n_present == 1:
            return True
        if space.mask in dead:
            return False
        for pair in space.free_pairs():
            space.remove_pair(*pair)
            steps.append(pair)
            if dfs():
                return True
            steps.pop()
            space.restore_pair(*pair)
        dead.add(space.mask)
        return False

    if dfs():
        seq = CollapseSequence(tuple(space.name_pair(p) for p in steps))
        for f, c in reversed(steps):
            space.restore_pair(f, c)
        return CollapseResult(seq, False, states)
    return CollapseResult(None, True, states)


def verify_collapse_sequence(k: SimplicialComplex, seq: CollapseSequence) -> bool:
    """Replay a sequence: every step must be a free pair and the end a point."""
    current = set(k.simplices)
    for face, coface in seq.steps:
        face, coface = frozenset(face), frozenset(coface)
        if face not in current or coface not in current:
            return False
        present_cofaces = [s for s in current if face < s]
        if present_cofaces != [coface]:
            return False
        if len(coface) != len(face) + 1:
            return False
        current -= {face, coface}
    return len(current) == 1 and len(next(iter(current))) == 1


def subcomplex_from_maximal(k: SimplicialComplex, simplices) -> set:
    """Face closure of the given simplices of k, as a simplex set."""
    out = set()
    for s in simplices:
        s = frozenset(s)
        if s not in k.simplices:
            raise NotSubcomplex("%s is not a simplex of the complex" % sorted(s))
        out.add(s)
        out.update(_proper_subsets(s))
    return out


def split_check(k: SimplicialComplex, a_simplices, b_simplices,
                budget: int = 1_000_000, seed: int = 0) -> dict:
    """Check the splitting premise: A union B covers k and A, B, and
    C = A intersection B are each collapsible.

    a_simplices/b_simplices must be face-closed simplex sets of k (build
    them with subcomplex_from_maximal).  Collapse searches are re-verified
    by replay before being reported.
    """
    a = set(frozenset(s) for s in a_simplices)
    b = set(frozenset(s) for s in b_simplices)
    for name, part in (("A", a), ("B", b)):
        for s in part:
            if s not in k.simplices:
                raise NotSubcomplex("%s contains %s, not a simplex of k"
                                    % (name, sorted(s)))
            for f in _proper_subsets(s):
                if f not in part:
                    raise NotSubcomplex("%s is not face-closed at %s"
                                        % (name, sorted(f)))
    c = a & b
    union_ok = (a | b) == set(k.simplices)

    report = {"union_ok": union_ok, "intersection": c}
    for name, part in (("a", a), ("b", b), ("c", c)):
        if not part:
            report[name + "_collapsible"] = False
            report[name + "_sequence"] = None
            continue
        sub = SimplicialComplex(part, closed=True)
        result = is_collapsible(sub, budget=budget, seed=seed)
        ok = result.sequence is not None
        if ok and not verify_collapse_sequence(sub, result.sequence):
            raise AssertionError("search returned an invalid sequence")
        report[name + "_collapsible"] = ok
        report[name + "_sequence"] = result.sequence
    return report


# ---------------------------------------------------------------------------
# Polygon identification complexes


@dataclass(frozen=True)
class IdentificationPolygon:
    """An n-gon whose boundary reads a word of labeled, directed sides."""

    word: tuple  # of (label: str, direction: +1|-1)

    def __post_init__(self):
        if not self.word:
            raise DegenerateWord("empty identification word")
        for label, d in self.word:
            if d not in (1, -1):
                raise DegenerateWord("direction must be +1 or -1")

    def to_json_obj(self):
        return {"word": [[label, d] for label, d in self.word]}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(tuple((label, int(d)) for label, d in obj["word"]))


def _barycentric_subdivide(triangles, paths):
    """One barycentric round on a pure 2-complex given by triangle ancestry.

    triangles: dict frozenset -> root id; paths: dict name -> vertex list
    (boundary side and spoke paths, refined in place in the result).
    Barycenter naming is canonical in the parent vertex names.
    """
    def bary(simplex):
        return "(" + "+".join(sorted(simplex)) + ")"

    new_triangles = {}
    for tri, root in triangles.items():
        verts = sorted(tri)
        b_tri = bary(tri)
        for v in verts:
            for edge in combinations(verts, 2):
                if v in edge:
                    new_triangles[frozenset([v, bary(frozenset(edge)), b_tri])] = root

    new_paths = {}
    for name, path in paths.items():
        refined = [path[0]]
        for u, v in zip(path, path[1:]):
            refined.append(bary(frozenset([u, v])))
            refined.append(v)
        new_paths[name] = refined
    return new_triangles, new_paths


def _build_polygon_disk(n_sides):
    """Cone triangulation of an n-gon, twice barycentrically subdivided.

    Returns (triangles: dict tri->fan index, side_paths, spoke_paths,
    corners).  Sides with fewer than 3 corners are pre-split so the cone is
    honestly simplicial; fan indices still refer to the original sides.
    """
    # pre-split sides so the cone has >= 3 distinct rim corners
    per_side = 1 if n_sides >= 3 else (3 if n_sides == 1 else 2)
    rim = []
    for i in range(n_sides):
        rim.append("c%d" % i)
        rim.extend("s%d_%d" % (i, j) for j in range(1, per_side))
    center = "O"

    triangles = {}
    side_paths = {}
    m = len(rim)
    for i in range(n_sides):
        side_paths["side%d" % i] = rim[i * per_side:(i + 1) * per_side] \
            + [rim[((i + 1) * per_side) % m]]
    for j in range(m):
        tri = frozenset([center, rim[j], rim[(j + 1) % m]])
        triangles[tri] = j // per_side
    spoke_paths = {"spoke%d" % i: [rim[i * per_side], center]
                   for i in range(n_sides)}

    paths = dict(side_paths)
    paths.update(spoke_paths)
    for _ in range(2):
        triangles, paths = _barycentric_subdivide(triangles, paths)
    corners = ["c%d" % i for i in range(n_sides)]
    return triangles, paths, corners


class _UnionFind(dict):
    def find(self, x):
        root = x
        while self.get(root, root) != root:
            root = self[root]
        while self.get(x, x) != x:
            self[x], x = root, self[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self[max(rx, ry)] = min(rx, ry)


def polygon_complex_with_layout(p: IdentificationPolygon):
    """Identification complex plus the layout data the quotient retains.

    Returns (complex, layout) where layout maps: "corner_class" per corner,
    "side_path"/"spoke_path" vertex paths in final names, and "fans": final
    triangle -> original side index.  The identification glues all sides
    carrying one label along their refined vertex paths (direction -1 sides
    enter reversed); the result is checked to still be honestly simplicial:
    no simplex degenerates and no two triangles merge.
    """
    word = p.word
    triangles, paths, corners = _build_polygon_disk(len(word))

    uf = _UnionFind()
    by_label = {}
    for i, (label, d) in enumerate(word):
        path = paths["side%d" % i]
        by_label.setdefault(label, []).append(path if d == 1 else path[::-1])
    for label, oriented in by_label.items():
        first = oriented[0]
        for other in oriented[1:]:
            if len(other) != len(first):
                raise AssertionError("side refinement mismatch")
            for u, v in zip(first, other):
                uf.union(u, v)

    def final(v):
        return uf.find(v)

    quotient = {}
    for tri, root in triangles.items():
        image = frozenset(final(v) for v in tri)
        if len(image) != 3:
            raise ComplexError("identification degenerates a triangle")
        if image in quotient:
            raise ComplexError("identification merges two triangles")
        quotient[image] = root

    # canonical short vertex names, deterministic in the quotient names
    rename = {v: "v%03d" % i
              for i, v in enumerate(sorted({w for t in quotient for w in t}))}
    complex_ = SimplicialComplex(
        [frozenset(rename[v] for v in tri) for tri in quotient])

    layout = {
        "corner_class": {c: rename[final(c)] for c in corners},
        "side_paths": {name: [rename[final(v)] for v in path]
                       for name, path in paths.items() if name.startswith("side")},
        "spoke_paths": {name: [rename[final(v)] for v in path]
                        for name, path in paths.items() if name.startswith("spoke")},
        "fans": {frozenset(rename[final(v)] for v in tri): root
                 for tri, root in triangles.items()},
    }
    return complex_, layout


def polygon_identification_complex(p: IdentificationPolygon) -> SimplicialComplex:
    """Triangulated quotient of a polygon with identified boundary sides.

    Cone triangulation of the polygon, two barycentric subdivisions, then
    identification of same-label sides; the output is verified to be a
    genuine (face-closed, non-degenerate) simplicial complex.
    """
    complex_, _ = polygon_complex_with_layout(p)
    return complex_
