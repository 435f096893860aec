"""
Braid words and the bookkeeping attached to their closures.

A braid word on n strands is a sequence of letters in the Artin generators
σ₁ … σₙ₋₁.  A letter is stored as a signed index: ``i`` means σᵢ and ``-i``
means σᵢ⁻¹.  Words are kept exactly as written: group operations
(:func:`multiply`, :func:`invert`, :func:`conjugate`) apply free reduction
(cancelling adjacent σᵢ σᵢ⁻¹ pairs) but braid relations are never applied
implicitly, so letter-level crossing attribution stays meaningful.

Strand positions are 1-based and words read left to right as the closed
braid is traversed with increasing angle.  The closure joins position j at
the bottom to position j at the top; its components are the cycles of the
underlying permutation, numbered so that component 1 contains start
position 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class BraidSyntaxError(ValueError):
    """Raised when a braid word string does not conform to the grammar."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the n-strand braid group.

    ``letters[k] == i`` encodes σᵢ, ``letters[k] == -i`` encodes σᵢ⁻¹, with
    1 ≤ i ≤ n-1.  The empty word is the identity braid.
    """

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"strand count must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) >= self.n:
                raise ValueError(f"letter {x!r} invalid for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"BraidWord({self.n}, {format_word(self)!r})"

    def as_pair(self) -> tuple[int, list[int]]:
        """The (strand count, signed index list) serialization."""
        return self.n, list(self.letters)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, …, n}, stored as the tuple of images of 1 … n."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images!r} is not a permutation of 1..{len(self.images)}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """The composite mapping i ↦ other(self(i)): apply self first."""
        return Permutation(tuple(other.images[v - 1] for v in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycles ordered by least element; each cycle starts at its least element."""
        seen = [False] * (self.n + 1)
        out = []
        for s in range(1, self.n + 1):
            if seen[s]:
                continue
            cyc = []
            j = s
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j - 1]
            out.append(tuple(cyc))
        return tuple(out)

    def one_line(self) -> str:
        return " ".join(str(v) for v in self.images)


@dataclass(frozen=True)
class ComponentPartition:
    """The strand cycles of a closure, with component ids 1 … c.

    Components are ordered by their least start position, so component 1
    always contains start position 1.
    """

    cycles: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]  # component_of[i-1] = component id of start position i

    @property
    def n_components(self) -> int:
        return len(self.cycles)

    def component(self, start_position: int) -> int:
        return self.component_of[start_position - 1]


@dataclass(frozen=True)
class CrossingRecord:
    """One crossing of a word: the two strand start positions that meet, and its sign."""

    strands: tuple[int, int]  # sorted pair of start positions
    sign: int


_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


def parse_braid_word(text: str, n: int) -> BraidWord:
    """Parse a word like ``"s1^5 s2^4 s1^6 s2^-1"`` into a :class:`BraidWord`.

    The grammar is whitespace-separated tokens ``s<i>`` or ``s<i>^<k>`` with
    integer k ≠ 0; negative k gives inverse letters.  No reduction is applied.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"strand count must be a positive integer, got {n!r}")
    letters: list[int] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise BraidSyntaxError(f"bad token {tok!r}: expected s<i> or s<i>^<k>")
        i = int(m.group(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise BraidSyntaxError(f"bad token {tok!r}: exponent must be nonzero")
        if i < 1 or i >= n:
            raise BraidSyntaxError(f"index {i} invalid for n={n}")
        letters.extend([i if k > 0 else -i] * abs(k))
    return BraidWord(n, tuple(letters))


def format_word(w: BraidWord) -> str:
    """Render a word back into the ``s<i>^<k>`` grammar, merging equal runs."""
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        idx, k = abs(letters[i]), (j - i) * (1 if letters[i] > 0 else -1)
        parts.append(f"s{idx}" if k == 1 else f"s{idx}^{k}")
        i = j
    return " ".join(parts)


def exponent_sum(w: BraidWord) -> int:
    """Sum of letter signs; invariant under braid relations and conjugation."""
    return sum(1 if x > 0 else -1 for x in w.letters)


def free_reduce(letters) -> tuple[int, ...]:
    """Cancel adjacent σᵢ σᵢ⁻¹ pairs until none remain."""
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def _require_same_strands(u: BraidWord, v: BraidWord) -> None:
    if u.n != v.n:
        raise ValueError(f"strand-count mismatch: {u.n} vs {v.n}")


def multiply(u: BraidWord, v: BraidWord) -> BraidWord:
    """Concatenate two words on the same strand count, freely reduced."""
    _require_same_strands(u, v)
    return BraidWord(u.n, free_reduce(u.letters + v.letters))


def invert(w: BraidWord) -> BraidWord:
    """The letter-reversed, sign-flipped word."""
    return BraidWord(w.n, tuple(-x for x in reversed(w.letters)))


def conjugate(w: BraidWord, g: BraidWord) -> BraidWord:
    """g⁻¹ w g, freely reduced."""
    _require_same_strands(w, g)
    return BraidWord(w.n, free_reduce(invert(g).letters + w.letters + g.letters))


def mirror(w: BraidWord) -> BraidWord:
    """Flip the sign of every letter (the mirror-image closure)."""
    return BraidWord(w.n, tuple(-x for x in w.letters))


def rotate(w: BraidWord, k: int) -> BraidWord:
    """Cyclic rotation moving the first k letters to the end (a conjugation)."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return BraidWord(w.n, w.letters[k:] + w.letters[:k])


def underlying_permutation(w: BraidWord) -> Permutation:
    """The permutation sending each start position to its end position."""
    sap = list(range(w.n + 1))  # sap[p] = start position of the strand at position p
    for x in w.letters:
        i = abs(x)
        sap[i], sap[i + 1] = sap[i + 1], sap[i]
    images = [0] * (w.n + 1)
    for p in range(1, w.n + 1):
        images[sap[p]] = p
    return Permutation(tuple(images[1:]))


def closure_components(w: BraidWord) -> ComponentPartition:
    """Cycles of the closure permutation; component 1 contains start position 1."""
    cycles = underlying_permutation(w).cycles()
    comp_of = [0] * w.n
    for cid, cyc in enumerate(cycles, start=1):
        for s in cyc:
            comp_of[s - 1] = cid
    return ComponentPartition(tuple(tuple(sorted(c)) for c in cycles), tuple(comp_of))


def crossing_records(w: BraidWord) -> tuple[CrossingRecord, ...]:
    """Attribute each letter to the pair of strand start positions that cross there."""
    sap = list(range(w.n + 1))
    out = []
    for x in w.letters:
        i = abs(x)
        a, b = sap[i], sap[i + 1]
        out.append(CrossingRecord((min(a, b), max(a, b)), 1 if x > 0 else -1))
        sap[i], sap[i + 1] = sap[i + 1], sap[i]
    return tuple(out)


def word_to_json(w: BraidWord) -> dict:
    return {"n": w.n, "letters": list(w.letters)}


def word_from_json(obj: dict) -> BraidWord:
    return BraidWord(int(obj["n"]), tuple(int(x) for x in obj["letters"]))
