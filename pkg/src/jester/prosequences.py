"""Free products of finite groups, normal forms, projection bonding maps,
and the pro-isomorphism invariant of factor sequences.

Infinite factor sequences are represented by a finite alphabet of groups
with multiplicities in N union {infinity}; the invariant compared here
depends only on the multiset of factors up to isomorphism.  Only finite
factors are supported: the mechanism is demonstrated on finite proxies of
the (infinite) boundary groups it models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

INF = math.inf


class GroupTableError(ValueError):
    pass


class InvalidSyllable(ValueError):
    pass


class OrderTooLarge(ValueError):
    pass


class InadmissibleFactor(ValueError):
    pass


class MalformedLadder(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table on 0..order-1.

    The table is verified to be a group on construction (identity,
    inverses, associativity) — bad tables fail loudly here rather than
    corrupting normal forms later.
    """

    __slots__ = ("label", "table", "order", "identity", "inverse")

    def __init__(self, label, table):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise GroupTableError("empty table")
        if any(len(row) != n for row in table):
            raise GroupTableError("table is not square")
        arr = np.array(table, dtype=np.int64)
        if arr.min() < 0 or arr.max() >= n:
            raise GroupTableError("table entries out of range")
        identity = None
        for e in range(n):
            if all(arr[e, x] == x and arr[x, e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise GroupTableError("no identity element")
        inverse = [None] * n
        for x in range(n):
            for y in range(n):
                if arr[x, y] == identity and arr[y, x] == identity:
                    inverse[x] = y
                    break
            if inverse[x] is None:
                raise GroupTableError("element %d has no inverse" % x)
        if not (arr[arr] == arr[:, arr]).all():  # (xy)z == x(yz), vectorized
            raise GroupTableError("table is not associative")
        object.__setattr__(self, "label", str(label))
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverse", tuple(inverse))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def __repr__(self):
        return "FiniteGroup(%r, order=%d)" % (self.label, self.order)

    def mul(self, x, y):
        return self.table[x][y]

    def element_order(self, x):
        k, acc = 1, x
        while acc != self.identity:
            acc = self.table[acc][x]
            k += 1
        return k

    def order_profile(self):
        """Sorted multiset of element orders — an isomorphism prefilter."""
        return tuple(sorted(self.element_order(x) for x in range(self.order)))

    def is_abelian(self):
        return all(self.table[x][y] == self.table[y][x]
                   for x in range(self.order) for y in range(self.order))

    def to_json_obj(self):
        return {"label": self.label, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["label"], obj["table"])

    @classmethod
    def cyclic(cls, n, label=None):
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(label or "Z%d" % n, table)

    @classmethod
    def direct_product(cls, g, h, label=None):
        pairs = list(product(range(g.order), range(h.order)))
        index = {p: i for i, p in enumerate(pairs)}
        table = [[index[(g.table[a][c], h.table[b][d])] for (c, d) in pairs]
                 for (a, b) in pairs]
        return cls(label or "%sx%s" % (g.label, h.label), table)

    @classmethod
    def symmetric(cls, n, label=None):
        perms = list(_permutations(tuple(range(n))))
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms]
                 for p in perms]
        return cls(label or "S%d" % n, table)


def _permutations(items):
    if len(items) <= 1:
        yield items
        return
    for i in range(len(items)):
        rest = items[:i] + items[i + 1:]
        for tail in _permutations(rest):
            yield (items[i],) + tail


def is_admissible_factor(g: FiniteGroup) -> bool:
    """Admissible free-product factors here: nontrivial finite groups.

    Every nontrivial finite group is indecomposable (free products of
    nontrivial groups are infinite) and is not infinite cyclic.
    """
    return g.order >= 2


@dataclass(frozen=True)
class FreeProductWord:
    """Alternating syllables (factor position, non-identity element index).

    A word is in normal form iff adjacent syllables lie in distinct factor
    positions and no syllable is an identity element.
    """

    syllables: tuple = ()

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other):
        return FreeProductWord(self.syllables + other.syllables)


class FreeProduct:
    """The free product of an ordered list of finite factor groups."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))

    def __setattr__(self, name, value):
        raise AttributeError("FreeProduct is immutable")

    def __len__(self):
        return len(self.factors)

    def check_word(self, w: FreeProductWord):
        for pos, elem in w.syllables:
            if not 0 <= pos < len(self.factors):
                raise InvalidSyllable("no factor at position %d" % pos)
            if not 0 <= elem < self.factors[pos].order:
                raise InvalidSyllable("element %d out of range for factor %d"
                                      % (elem, pos))

    def normal_form(self, w: FreeProductWord) -> FreeProductWord:
        """Merge adjacent same-factor syllables, drop identities, repeat."""
        self.check_word(w)
        stack = []
        for pos, elem in w.syllables:
            stack.append((pos, elem))
            while len(stack) >= 2 and stack[-1][0] == stack[-2][0]:
                pos2, b = stack.pop()
                _, a = stack.pop()
                merged = self.factors[pos2].table[a][b]
                if merged != self.factors[pos2].identity:
                    stack.append((pos2, merged))
            if stack and stack[-1][1] == self.factors[stack[-1][0]].identity:
                stack.pop()
        return FreeProductWord(tuple(stack))

    def multiply(self, u, v):
        return self.normal_form(u * v)

    def inverse(self, w: FreeProductWord) -> FreeProductWord:
        self.check_word(w)
        return FreeProductWord(tuple(
            (pos, self.factors[pos].inverse[elem])
            for pos, elem in reversed(w.syllables)))

    def conjugate(self, w, g):
        """g * w * g^-1, normalized."""
        return self.normal_form(g * w * self.inverse(g))


def normal_form(fp: FreeProduct, w: FreeProductWord) -> FreeProductWord:
    """Module-level alias for :meth:`FreeProduct.normal_form`."""
    return fp.normal_form(w)


def projection(fp: FreeProduct, w: FreeProductWord) -> FreeProductWord:
    """The bonding map onto the one-shorter truncation: kill the last factor.

    Restricting to the shorter product it is the identity; syllables of the
    last factor are deleted and the result renormalized.
    """
    fp.check_word(w)
    last = len(fp.factors) - 1
    kept = tuple(s for s in w.syllables if s[0] != last)
    return fp.normal_form(FreeProductWord(kept))


def cyclic_syllable_reduce(fp: FreeProduct, w: FreeProductWord):
    """Split w (normalized) as g * core * g^-1 with core cyclically reduced
    at the syllable level; returns (core, g)."""
    core = fp.normal_form(w)
    prefix = []
    while len(core.syllables) >= 2 and core.syllables[0][0] == core.syllables[-1][0]:
        head = core.syllables[0]
        prefix.append(head)
        rest = FreeProductWord(core.syllables[1:])
        g_inv = FreeProductWord((( head[0], fp.factors[head[0]].inverse[head[1]]),))
        core = fp.normal_form(rest * g_inv)
    return core, FreeProductWord(tuple(prefix))


def conjugate_into_factor(fp: FreeProduct, w: FreeProductWord):
    """Whether w is conjugate into a single free factor.

    Some (position, conjugator) with conjugator * core * conjugator^-1 == w
    iff the syllable-level cyclic reduction has length <= 1; the identity
    word lies in every factor and reports position 0 with an empty
    conjugator.  Returns None otherwise.
    """
    core, conj = cyclic_syllable_reduce(fp, w)
    if len(core.syllables) == 0:
        return 0, FreeProductWord()
    if len(core.syllables) == 1:
        return core.syllables[0][0], conj
    return None


# ---------------------------------------------------------------------------
# Finite-group isomorphism


def _generating_sequence(g: FiniteGroup):
    """Greedy generating elements plus a word (index sequence) per element."""
    words = {g.identity: ()}
    gens = []
    while len(words) < g.order:
        new_gen = next(x for x in range(g.order) if x not in words)
        gens.append(new_gen)
        words[new_gen] = (len(gens) - 1,)
        changed = True
        while changed:
            changed = False
            for x, wx in list(words.items()):
                for k, gen in enumerate(gens):
                    y = g.table[x][gen]
                    if y not in words:
                        words[y] = wx + (k,)
                        changed = True
    return gens, words


def group_isomorphic(g: FiniteGroup, h: FiniteGroup, max_order: int = 128):
    """An isomorphism g -> h as an index list, or None.

    Prefilters by order and element-order profile, then backtracks over
    generator images with partial-consistency pruning.
    """
    if g.order > max_order or h.order > max_order:
        raise OrderTooLarge("isomorphism testing capped at order %d" % max_order)
    if g.order != h.order:
        return None
    if g.order_profile() != h.order_profile():
        return None

    gens, words = _generating_sequence(g)
    g_orders = {x: g.element_order(x) for x in range(g.order)}
    h_by_order = {}
    for y in range(h.order):
        h_by_order.setdefault(h.element_order(y), []).append(y)

    def evaluate(word, images):
        acc = h.identity
        for k in word:
            acc = h.table[acc][images[k]]
        return acc

    def extend(images):
        if len(images) == len(gens):
            phi = [evaluate(words[x], images) for x in range(g.order)]
            if len(set(phi)) != g.order:
                return None
            arr_g = np.array(g.table)
            arr_h = np.array(h.table)
            p = np.array(phi)
            if (arr_h[p[:, None], p[None, :]] == p[arr_g]).all():
                return phi
            return None
        k = len(images)
        for y in h_by_order.get(g_orders[gens[k]], ()):
            candidate = images + [y]
            # prune: the partial map must stay injective and multiplicative
            # on everything already expressible
            expressible = {x: evaluate(wx, candidate)
                           for x, wx in words.items()
                           if all(idx <= k for idx in wx)}
            if len(set(expressible.values())) != len(expressible):
                continue
            ok = True
            for x, px in expressible.items():
                for x2, px2 in expressible.items():
                    z = g.table[x][x2]
                    if z in expressible and h.table[px][px2] != expressible[z]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            result = extend(candidate)
            if result is not None:
                return result
        return None

    return extend([])


# ---------------------------------------------------------------------------
# Factor sequences and pro-isomorphism


@dataclass(frozen=True)
class FactorSequence:
    """Finite alphabet of factor groups with multiplicities in N or inf.

    The represented infinite (or finite) factor list is the round-robin
    expansion over the alphabet order, skipping exhausted labels.
    """

    alphabet: tuple           # of FiniteGroup
    multiplicity: dict = field(default_factory=dict)  # label -> int | INF

    def __post_init__(self):
        labels = [g.label for g in self.alphabet]
        if len(set(labels)) != len(labels):
            raise InadmissibleFactor("duplicate alphabet labels")
        for label in self.multiplicity:
            if label not in labels:
                raise InadmissibleFactor("multiplicity for unknown label %r" % label)
        if not any(self.mult(label) > 0 for label in labels):
            raise InadmissibleFactor("no positive multiplicity")

    def mult(self, label):
        m = self.multiplicity.get(label, 0)
        return INF if m == INF else int(m)

    def group(self, label):
        for g in self.alphabet:
            if g.label == label:
                return g
        raise KeyError(label)

    def expand(self, n: int):
        """First n factor labels of the round-robin expansion."""
        remaining = {g.label: self.mult(g.label) for g in self.alphabet}
        out = []
        while len(out) < n:
            progressed = False
            for g in self.alphabet:
                if len(out) >= n:
                    break
                if remaining[g.label] > 0:
                    out.append(g.label)
                    remaining[g.label] -= 1
                    progressed = True
            if not progressed:
                raise ValueError(
                    "sequence has only %d factors, %d requested" % (len(out), n))
        return out

    def total(self):
        return sum(self.mult(g.label) for g in self.alphabet)

    def truncation(self, j: int) -> FreeProduct:
        return FreeProduct([self.group(label) for label in self.expand(j)])

    def check_admissible(self):
        for g in self.alphabet:
            if not is_admissible_factor(g):
                raise InadmissibleFactor(
                    "factor %r is trivial; factors must be nontrivial finite"
                    % g.label)

    def to_json_obj(self):
        return {
            "alphabet": [g.to_json_obj() for g in self.alphabet],
            "multiplicity": {label: ("inf" if self.mult(label) == INF else self.mult(label))
                             for label in (g.label for g in self.alphabet)},
        }

    @classmethod
    def from_json_obj(cls, obj):
        alphabet = tuple(FiniteGroup.from_json_obj(g) for g in obj["alphabet"])
        mult = {}
        for label, m in obj["multiplicity"].items():
            mult[label] = INF if m == "inf" else int(m)
        return cls(alphabet, mult)


def _isomorphism_classes(groups):
    """Partition groups into isomorphism classes (list of lists of labels)."""
    classes = []  # (representative group, [labels])
    for g in groups:
        placed = False
        for rep, labels in classes:
            if group_isomorphic(g, rep) is not None:
                labels.append(g.label)
                placed = True
                break
        if not placed:
            classes.append((g, [g.label]))
    return classes


def pro_isomorphic(sa: FactorSequence, sb: FactorSequence) -> dict:
    """Compare the factor multisets of two sequences up to isomorphism.

    decision is True iff every isomorphism class has equal (possibly
    infinite) total multiplicity on both sides; the certificate is either
    the class-level matching or the first distinguishing class with both
    multiplicities.
    """
    sa.check_admissible()
    sb.check_admissible()
    classes = _isomorphism_classes(list(sa.alphabet) + list(sb.alphabet))

    matching = []
    for rep, labels in classes:
        a_labels = [l for l in labels if l in {g.label for g in sa.alphabet}]
        b_labels = [l for l in labels if l in {g.label for g in sb.alphabet}]
        ma = sum(sa.mult(l) for l in a_labels) if a_labels else 0
        mb = sum(sb.mult(l) for l in b_labels) if b_labels else 0
        entry = {
            "class_representative": rep.label,
            "order": rep.order,
            "a_labels": a_labels,
            "b_labels": b_labels,
            "multiplicity_a": ma,
            "multiplicity_b": mb,
        }
        if ma != mb:
            return {"decision": False, "certificate": {
                "distinguishing_class": entry["class_representative"],
                "multiplicity_a": ma,
                "multiplicity_b": mb,
            }}
        if ma != 0:
            matching.append(entry)
    return {"decision": True, "certificate": {"matching": matching}}


# ---------------------------------------------------------------------------
# Ladders


@dataclass(frozen=True)
class FactorMap:
    """Factor-wise piece of a ladder map: send a whole source factor into a
    conjugate of a target factor (or kill it with the trivial homomorphism).
    """

    target: int                # factor position in the target truncation
    images: tuple              # element index map source -> target factor
    conjugator: FreeProductWord = FreeProductWord()


@dataclass(frozen=True)
class Ladder:
    """Subsequence indices and factor-wise up/down maps between two
    truncated free-product towers.

    up_maps[i] : H_{k_i} -> G_{j_i}; down_maps[i] : G_{j_{i+1}} -> H_{k_i}.
    """

    left_indices: tuple        # j_1 < j_2 < ...
    right_indices: tuple       # k_1 < k_2 < ...
    up_maps: tuple             # dict factor_pos -> FactorMap, one per rung
    down_maps: tuple           # dict factor_pos -> FactorMap, one per gap


def _check_factor_map(source: FiniteGroup, target: FiniteGroup, fm: FactorMap):
    if len(fm.images) != source.order:
        raise MalformedLadder("image table has wrong size")
    for x in range(source.order):
        for y in range(source.order):
            if target.table[fm.images[x]][fm.images[y]] != fm.images[source.table[x][y]]:
                raise MalformedLadder("factor map is not a homomorphism")


def apply_factorwise(source: FreeProduct, target: FreeProduct, maps: dict,
                     w: FreeProductWord) -> FreeProductWord:
    source.check_word(w)
    out = FreeProductWord()
    for pos, elem in w.syllables:
        if pos not in maps:
            raise MalformedLadder("no map for factor %d" % pos)
        fm = maps[pos]
        image = fm.images[elem]
        piece = FreeProductWord(((fm.target, image),)) \
            if image != target.factors[fm.target].identity else FreeProductWord()
        out = out * fm.conjugator * piece * target.inverse(fm.conjugator)
    return target.normal_form(out)


def _projection_to(fp: FreeProduct, keep: int, w: FreeProductWord) -> FreeProductWord:
    kept = tuple(s for s in w.syllables if s[0] < keep)
    return fp.normal_form(FreeProductWord(kept))


def ladder_verify(sa: FactorSequence, sb: FactorSequence, ladder: Ladder,
                  depth: int) -> bool:
    """Check both commuting-triangle families on all factor elements.

    For each rung i (up to depth): up_i(down_i(x)) must equal the tower
    bonding G_{j_{i+1}} -> G_{j_i} on every syllable x, and
    down_i(up_{i+1}(y)) the bonding H_{k_{i+1}} -> H_{k_i}.
    """
    js, ks = ladder.left_indices, ladder.right_indices
    if len(js) != len(ks) or len(js) < 2:
        raise MalformedLadder("need equally many left and right indices (>= 2)")
    if list(js) != sorted(set(js)) or list(ks) != sorted(set(ks)):
        raise MalformedLadder("indices must be strictly increasing")
    if len(ladder.up_maps) != len(js) or len(ladder.down_maps) != len(js) - 1:
        raise MalformedLadder("map counts do not match the indices")

    towers_g = [sa.truncation(j) for j in js]
    towers_h = [sb.truncation(k) for k in ks]

    for i, (fp_h, fp_g) in enumerate(zip(towers_h, towers_g)):
        for pos, fm in ladder.up_maps[i].items():
            _check_factor_map(fp_h.factors[pos], fp_g.factors[fm.target], fm)
    for i in range(len(js) - 1):
        for pos, fm in ladder.down_maps[i].items():
            _check_factor_map(towers_g[i + 1].factors[pos],
                              towers_h[i].factors[fm.target], fm)

    rungs = min(depth, len(js) - 1)
    for i in range(rungs):
        g_big, g_small = towers_g[i + 1], towers_g[i]
        h_big, h_small = towers_h[i + 1], towers_h[i]
        for pos in range(len(g_big.factors)):
            for elem in range(1, g_big.factors[pos].order):
                x = FreeProductWord(((pos, elem),))
                via = apply_factorwise(
                    h_small, g_small, ladder.up_maps[i],
                    apply_factorwise(g_big, h_small, ladder.down_maps[i], x))
                direct = _projection_to(g_small, len(g_small.factors),
                                        x if pos < len(g_small.factors)
                                        else FreeProductWord())
                if via != direct:
                    return False
        for pos in range(len(h_big.factors)):
            for elem in range(1, h_big.factors[pos].order):
                y = FreeProductWord(((pos, elem),))
                via = apply_factorwise(
                    g_big, h_small, ladder.down_maps[i],
                    apply_factorwise(h_big, g_big, ladder.up_maps[i + 1], y))
                direct = _projection_to(h_small, len(h_small.factors),
                                        y if pos < len(h_small.factors)
                                        else FreeProductWord())
                if via != direct:
                    return False
    return True


def _identity_factor_map(g: FiniteGroup, target: int) -> FactorMap:
    return FactorMap(target, tuple(range(g.order)))


def _trivial_factor_map(g: FiniteGroup, target_group: FiniteGroup,
                        target: int) -> FactorMap:
    return FactorMap(target, tuple(target_group.identity for _ in range(g.order)))


def build_ladder(sa: FactorSequence, sb: FactorSequence, depth: int = 3) -> Ladder:
    """Mechanically build a commuting ladder from a positive comparison.

    Positions are matched class-by-class in expansion order (the i-th
    factor of a class on the left pairs with the i-th on the right); rung
    indices grow just fast enough that every surviving factor's partner is
    already present, which is exactly what the commuting triangles need.
    """
    report = pro_isomorphic(sa, sb)
    if not report["decision"]:
        raise MalformedLadder("sequences are not pro-isomorphic")

    # enough expansion to cover the requested depth on both sides
    bound = 4 * depth + 4
    n_a = int(min(sa.total(), bound))
    n_b = int(min(sb.total(), bound))
    ea, eb = sa.expand(n_a), sb.expand(n_b)
    label_class = {}
    for entry in report["certificate"]["matching"]:
        for l in entry["a_labels"] + entry["b_labels"]:
            label_class[l] = entry["class_representative"]

    sigma = {}     # a-position -> b-position (1-based), partial
    sigma_inv = {}
    counters = {}
    b_positions = {}
    for pos, label in enumerate(eb, start=1):
        b_positions.setdefault(label_class[label], []).append(pos)
    for pos, label in enumerate(ea, start=1):
        cls = label_class[label]
        i = counters.get(cls, 0)
        if i < len(b_positions.get(cls, ())):
            sigma[pos] = b_positions[cls][i]
            sigma_inv[b_positions[cls][i]] = pos
            counters[cls] = i + 1

    js, ks = [1], []
    for _ in range(depth):
        j = js[-1]
        covered = [sigma[t] for t in range(1, j + 1) if t in sigma]
        k = max(covered + [1])
        if ks:
            k = max(k, ks[-1] + 1)
        if k > n_b:
            break
        ks.append(k)
        back = [sigma_inv[s] for s in range(1, k + 1) if s in sigma_inv]
        nxt = max(back + [j + 1])
        if nxt > n_a:
            break
        js.append(nxt)
    js = js[:len(ks)]
    if len(js) < 2:
        raise MalformedLadder("sequences too short for a ladder of that depth")

    towers_g = [sa.truncation(j) for j in js]
    towers_h = [sb.truncation(k) for k in ks]

    up_maps = []
    for i, (k, fp_h, fp_g) in enumerate(zip(ks, towers_h, towers_g)):
        maps = {}
        for pos in range(k):
            s = pos + 1
            t = sigma_inv.get(s)
            if t is not None and t <= js[i]:
                source = fp_h.factors[pos]
                target = fp_g.factors[t - 1]
                iso = group_isomorphic(source, target)
                maps[pos] = FactorMap(t - 1, tuple(iso))
            else:
                maps[pos] = _trivial_factor_map(fp_h.factors[pos],
                                                fp_g.factors[0], 0)
        up_maps.append(maps)

    down_maps = []
    for i in range(len(js) - 1):
        fp_g = towers_g[i + 1]
        fp_h = towers_h[i]
        maps = {}
        for pos in range(js[i + 1]):
            t = pos + 1
            s = sigma.get(t)
            if s is not None and s <= ks[i]:
                source = fp_g.factors[pos]
                target = fp_h.factors[s - 1]
                iso = group_isomorphic(source, target)
                maps[pos] = FactorMap(s - 1, tuple(iso))
            else:
                maps[pos] = _trivial_factor_map(fp_g.factors[pos],
                                                fp_h.factors[0], 0)
        down_maps.append(maps)

    return Ladder(tuple(js), tuple(ks), tuple(up_maps), tuple(down_maps))
