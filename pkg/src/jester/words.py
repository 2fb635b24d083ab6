"""Words over a named generator alphabet, with free and cyclic reduction."""

from __future__ import annotations


class Word:
    """An ordered product of generators, each with exponent +1 or -1.

    Words are immutable and are *not* reduced on construction; call
    :func:`free_reduce` for the unique freely reduced representative.
    Exponents are stored letter by letter (``x^3`` is three letters), which
    keeps reduction and relator bookkeeping trivial; run-length grouping is
    a display concern only.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        letters = tuple((str(g), int(e)) for g, e in letters)
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError("exponent must be +1 or -1, got %s^%d" % (g, e))
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"x5 x2^-1 b^3"`` style strings (whitespace separated)."""
        letters = []
        for token in text.split():
            if "^" in token:
                gen, _, power = token.partition("^")
                power = int(power)
            else:
                gen, power = token, 1
            if not gen:
                raise ValueError("empty generator in %r" % text)
            sign = 1 if power >= 0 else -1
            letters.extend((gen, sign) for _ in range(abs(power)))
        return cls(letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        return Word(base.letters * abs(n))

    def __repr__(self):
        return "Word(%s)" % str(self)

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables():
            parts.append(g if e == 1 else "%s^%d" % (g, e))
        return " ".join(parts)

    def syllables(self):
        """Collect adjacent equal generators into (generator, exponent) runs."""
        runs = []
        for g, e in self.letters:
            if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (e > 0):
                runs[-1][1] += e
            else:
                runs.append([g, e])
        return [(g, e) for g, e in runs]

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def is_reduced(self) -> bool:
        return all(
            self.letters[i][0] != self.letters[i + 1][0]
            or self.letters[i][1] != -self.letters[i + 1][1]
            for i in range(len(self.letters) - 1)
        )

    def is_cyclically_reduced(self) -> bool:
        if not self.is_reduced():
            return False
        if len(self.letters) < 2:
            return True
        (g0, e0), (g1, e1) = self.letters[0], self.letters[-1]
        return not (g0 == g1 and e0 == -e1)

    def rotate(self, k: int) -> "Word":
        """Cyclic rotation moving the first k letters to the end."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain (single stack pass)."""
    stack = []
    for g, e in w.letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return Word(stack)


def cyclic_reduce(w: Word):
    """Return (reduced, conjugator) with conjugator * reduced * conjugator^-1 == w.

    The reduced part is cyclically reduced; equality holds after free
    reduction.
    """
    core = free_reduce(w)
    prefix = []
    letters = list(core.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] \
            and letters[0][1] == -letters[-1][1]:
        prefix.append(letters[0])
        letters = letters[1:-1]
    return Word(letters), Word(prefix)


def cyclic_rotations(w: Word):
    """All cyclic rotations of w (the word itself if empty)."""
    if not w.letters:
        return [w]
    return [w.rotate(k) for k in range(len(w.letters))]


def words_conjugate_free(u: Word, v: Word) -> bool:
    """Whether u and v are conjugate in the free group on their generators.

    Two words are conjugate iff their cyclic reductions agree up to rotation.
    """
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    return any(cu == rot for rot in cyclic_rotations(cv))


def longitude_equivalent(u: Word, v: Word) -> bool:
    """Equality up to cyclic rotation, inversion, and (free) conjugation.

    This is the equivalence under which a diagram longitude is compared with
    a surgery relator: the basepoint on the component (rotation/conjugation)
    and the traversal direction (inversion) are not pinned by the relator.
    """
    return words_conjugate_free(u, v) or words_conjugate_free(u, ~v)
