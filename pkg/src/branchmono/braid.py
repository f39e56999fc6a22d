"""Braid words and their action on free-group generators.

The generator b_i acts on loops by x_i -> x_i x_{i+1} x_i^-1 and
x_{i+1} -> x_i (conjugation inside the larger braid group).  That rule
extends to words as a group anti-homomorphism; ``braid_action`` turns it
into a homomorphism by letting the rightmost letter act first, which is
the single place this convention is fixed.  Equality of braids is always
tested through the action, never through normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .clusters import Cluster
from .errors import DimensionMismatch, IndexOutOfRange, IntervalOutOfRange, InvalidInput
from .freegroup import FreeAutomorphism, FreeWord, format_letters, parse_letters


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid generators b_1..b_{strands-1} (signed indices)."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise InvalidInput(f"braid group needs at least 2 strands, got {self.strands}")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise IndexOutOfRange(
                    f"braid letter {x} out of range for {self.strands} strands"
                )
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def identity(cls, strands: int) -> "BraidWord":
        return cls(strands, ())

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        return cls(strands, tuple(parse_letters(text, symbol="b")))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise DimensionMismatch(f"strand mismatch {self.strands} != {other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def inv(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "BraidWord":
        base = self if n >= 0 else self.inv()
        return BraidWord(self.strands, base.letters * abs(n))

    def permutation(self) -> tuple[int, ...]:
        """Induced strand permutation; position k ends holding start strand perm[k]."""
        perm = list(range(self.strands))
        for x in self.letters:
            k = abs(x) - 1
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        return tuple(perm)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.strands))

    def __str__(self) -> str:
        return format_letters(self.letters, symbol="b")

    def __repr__(self) -> str:
        return f"BraidWord({self.strands}, {format_letters(self.letters, 'b')!r})"


def _generator_action(i: int, d: int) -> FreeAutomorphism:
    """Action of b_i (i > 0) or b_i^-1 (i < 0) on the rank-d free group."""
    k = abs(i)
    images = [FreeWord.generator(j) for j in range(1, d + 1)]
    if i > 0:
        images[k - 1] = FreeWord((k, k + 1, -k))
        images[k] = FreeWord.generator(k)
    else:
        images[k - 1] = FreeWord.generator(k + 1)
        images[k] = FreeWord((-(k + 1), k, k + 1))
    return FreeAutomorphism(d, tuple(images))


def braid_action(b: BraidWord, d: Optional[int] = None) -> FreeAutomorphism:
    """The automorphism of the rank-d free group induced by a braid word.

    Homomorphism convention: the rightmost letter acts first, so
    braid_action(u * v) = compose(braid_action(u), braid_action(v)).
    """
    if d is None:
        d = b.strands
    if d != b.strands:
        raise DimensionMismatch(f"braid on {b.strands} strands cannot act on rank {d}")
    images = [FreeWord.generator(j) for j in range(1, d + 1)]
    # Building compose(acc, letter) left to right keeps each step cheap:
    # the letter automorphism has images of length <= 3.
    for letter in b.letters:
        step = _generator_action(letter, d)
        acc = FreeAutomorphism(d, tuple(images))
        images = [acc.apply(w) for w in step.images]
    return FreeAutomorphism(d, tuple(images))


def lambda_braid(c: Cluster, d: int) -> BraidWord:
    """The pure braid (b_m ... b_{m+l-2})^l rotating the points of a cluster."""
    m, l = c.start, c.length
    if l < 2 or m < 1 or m + l - 1 > d:
        raise IntervalOutOfRange(
            f"interval [{m}, {m + l - 1}] (length {l}) does not fit in {d} strands"
        )
    block = tuple(range(m, m + l - 1))
    return BraidWord(d, block * l)


def lambda_braid_for_forest(clusters: Iterable[Cluster], d: int) -> BraidWord:
    """Concatenation of the cluster braids in the given order."""
    word = BraidWord.identity(d)
    for c in clusters:
        word = word * lambda_braid(c, d)
    return word


def puncture_loop_braid(i: int, d: int) -> BraidWord:
    """The loop generator x_i written as a braid on d+1 strands:
    (b_d ... b_{i+1}) b_i^2 (b_d ... b_{i+1})^-1."""
    if not 1 <= i <= d:
        raise IndexOutOfRange(f"puncture index {i} out of range 1..{d}")
    prefix = tuple(range(d, i, -1))
    letters = prefix + (i, i) + tuple(-x for x in reversed(prefix))
    return BraidWord(d + 1, letters)
