"""Finitely presented groups: presentations, certified Tietze moves,
substitution homomorphisms, and abelianization.

Tietze moves are *verified*, never searched for: a move carries a
certificate expressing the added/removed relator as a product of conjugates
of retained relators, and application fails unless the certificate checks
out in the free group.  (Consequence search would be a word-problem solver,
which is out of scope by design.)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .snf import invariant_factors
from .words import Word, free_reduce


class PresentationError(ValueError):
    pass


class UnknownGenerator(PresentationError):
    pass


class UnmappedGenerator(PresentationError):
    pass


class InvalidCertificate(PresentationError):
    pass


class NoEliminatingRelator(PresentationError):
    pass


class Presentation:
    """Ordered generators plus freely reduced relator words.

    Relator order is preserved; equality is ordered comparison.  Instances
    are immutable, so sharing across threads needs no synchronization.
    """

    __slots__ = ("generators", "relators")

    def __init__(self, generators, relators=()):
        gens = tuple(str(g) for g in generators)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generator names")
        reduced = []
        for r in relators:
            r = free_reduce(r)
            unknown = r.generators() - set(gens)
            if unknown:
                raise UnknownGenerator(
                    "relator %s uses undeclared generators %s" % (r, sorted(unknown)))
            reduced.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("Presentation is immutable")

    def __eq__(self, other):
        return (isinstance(other, Presentation)
                and self.generators == other.generators
                and self.relators == other.relators)

    def __hash__(self):
        return hash((self.generators, self.relators))

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return "<%s | %s>" % (", ".join(self.generators), rels)

    def to_json_obj(self):
        return {
            "generators": list(self.generators),
            "relators": [[[g, e] for g, e in r.letters] for r in self.relators],
        }

    @classmethod
    def from_json_obj(cls, obj):
        gens = obj["generators"]
        relators = [Word((g, e) for g, e in letters) for letters in obj["relators"]]
        return cls(gens, relators)


# ---------------------------------------------------------------------------
# Tietze moves


@dataclass(frozen=True)
class RelatorProduct:
    """A word spelled as a product of conjugated relators:
    prod_i  c_i * r_{index_i}^{sign_i} * c_i^-1.
    Indices refer to the relator list of the presentation the move is
    applied to.
    """

    factors: tuple  # of (relator_index: int, conjugator: Word, sign: +1|-1)

    def evaluate(self, relators) -> Word:
        acc = Word()
        for index, conj, sign in self.factors:
            if not 0 <= index < len(relators):
                raise InvalidCertificate("relator index %d out of range" % index)
            if sign not in (1, -1):
                raise InvalidCertificate("conjugate sign must be +1 or -1")
            piece = relators[index] if sign == 1 else ~relators[index]
            acc = acc * conj * piece * ~conj
        return free_reduce(acc)


@dataclass(frozen=True)
class AddRelator:
    word: Word
    payload: RelatorProduct


@dataclass(frozen=True)
class RemoveRelator:
    index: int
    payload: RelatorProduct  # must not cite the removed index


@dataclass(frozen=True)
class AddGenerator:
    generator: str
    defining_word: Word  # over the existing generators; adds relator g * w^-1


@dataclass(frozen=True)
class RemoveGenerator:
    generator: str
    relator_index: Optional[int] = None  # eliminating relator; searched if None


TietzeCertificate = Union[AddRelator, RemoveRelator, AddGenerator, RemoveGenerator]


def _eliminating_form(relator: Word, gen: str):
    """If some cyclic rotation of the relator reads g^e * u with g absent
    from u, return the replacement word for g (namely u^-e ... as g = u^-1
    when e = +1).  Otherwise None."""
    letters = relator.letters
    for k in range(len(letters)):
        g, e = letters[k]
        if g != gen:
            continue
        rest = letters[k + 1:] + letters[:k]
        if any(h == gen for h, _ in rest):
            continue
        u = Word(rest)
        # rotation reads g^e * u = 1, so g^e = u^-1
        return ~u if e == 1 else u
    return None


def tietze_apply(p: Presentation, cert: TietzeCertificate) -> Presentation:
    """Apply a certified Tietze move; the certificate is validated first.

    Raises InvalidCertificate when a relator payload does not reduce to its
    claim, and NoEliminatingRelator when a generator cannot be removed.
    """
    if isinstance(cert, AddRelator):
        claim = free_reduce(cert.word)
        if cert.payload.evaluate(p.relators) != claim:
            raise InvalidCertificate(
                "payload does not reduce to the claimed relator %s" % claim)
        return Presentation(p.generators, p.relators + (claim,))

    if isinstance(cert, RemoveRelator):
        if not 0 <= cert.index < len(p.relators):
            raise InvalidCertificate("relator index %d out of range" % cert.index)
        if any(index == cert.index for index, _, _ in cert.payload.factors):
            raise InvalidCertificate("payload may not cite the removed relator")
        if cert.payload.evaluate(p.relators) != p.relators[cert.index]:
            raise InvalidCertificate(
                "payload does not reduce to the removed relator")
        rels = p.relators[:cert.index] + p.relators[cert.index + 1:]
        return Presentation(p.generators, rels)

    if isinstance(cert, AddGenerator):
        if cert.generator in p.generators:
            raise InvalidCertificate("generator %s already present" % cert.generator)
        if not cert.defining_word.generators() <= set(p.generators):
            raise InvalidCertificate("defining word must use existing generators")
        defining = free_reduce(Word([(cert.generator, 1)]) * ~cert.defining_word)
        return Presentation(p.generators + (cert.generator,),
                            p.relators + (defining,))

    if isinstance(cert, RemoveGenerator):
        gen = cert.generator
        if gen not in p.generators:
            raise UnknownGenerator(gen)
        indices = ([cert.relator_index] if cert.relator_index is not None
                   else range(len(p.relators)))
        chosen = None
        for i in indices:
            if not 0 <= i < len(p.relators):
                raise InvalidCertificate("relator index %d out of range" % i)
            replacement = _eliminating_form(p.relators[i], gen)
            if replacement is not None:
                chosen = (i, replacement)
                break
        if chosen is None:
            raise NoEliminatingRelator(
                "no relator of the form %s * u with %s absent from u" % (gen, gen))
        i, replacement = chosen
        mapping = {g: Word([(g, 1)]) for g in p.generators if g != gen}
        mapping[gen] = replacement
        new_rels = [substitute(r, mapping)
                    for k, r in enumerate(p.relators) if k != i]
        new_gens = tuple(g for g in p.generators if g != gen)
        return Presentation(new_gens, [r for r in new_rels if len(r)])

    raise TypeError("not a Tietze certificate: %r" % (cert,))


# ---------------------------------------------------------------------------
# Abelianization and homomorphisms


def exponent_matrix(p: Presentation):
    """Relator-by-generator integer matrix of exponent sums."""
    return [[r.exponent_sum(g) for g in p.generators] for r in p.relators]


def abelianization(p: Presentation) -> list:
    """Invariant factors of the abelianized group.

    Torsion factors (each > 1, in divisor order) followed by one 0 per
    infinite cyclic summand; [] means the trivial group.
    """
    return invariant_factors(exponent_matrix(p), n_columns=len(p.generators))


def substitute(w: Word, assignment: dict) -> Word:
    """Homomorphic image of w under generator -> Word, freely reduced."""
    out = Word()
    for g, e in w.letters:
        if g not in assignment:
            raise UnmappedGenerator(g)
        image = assignment[g]
        out = out * (image if e == 1 else ~image)
    return free_reduce(out)


def compose_assignments(first: dict, second: dict) -> dict:
    """Assignment equal to substituting by `first`, then by `second`."""
    return {g: substitute(w, second) for g, w in first.items()}


def evaluate_in_target(w: Word, assignment: dict):
    """Fold a word through generator images supporting `@` and .inverse().

    Returns None for the empty word (no identity element is known here).
    """
    result = None
    for g, e in w.letters:
        if g not in assignment:
            raise UnmappedGenerator(g)
        factor = assignment[g] if e == 1 else assignment[g].inverse()
        result = factor if result is None else result @ factor
    return result


def verify_homomorphism(p: Presentation, assignment: dict, tol: float) -> dict:
    """Check that generator images satisfy every relator within tol.

    Targets must support composition via ``@``, ``.inverse()`` and
    ``.identity_distance()``.  Returns {"holds": bool, "residuals": [...]}
    with one residual per relator (0.0 for empty relators).
    """
    for g in p.generators:
        if g not in assignment:
            raise UnmappedGenerator(g)
    residuals = []
    for r in p.relators:
        image = evaluate_in_target(r, assignment)
        residuals.append(0.0 if image is None else float(image.identity_distance()))
    return {"holds": all(res < tol for res in residuals), "residuals": residuals}
