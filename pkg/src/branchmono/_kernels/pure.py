"""Pure-Python kernels: free-word reduction/substitution and Cayley-table
tuple operations.

These are the hot inner loops of the package.  A compiled Cython twin with
the same signatures lives in ``_fast.pyx``; the package selects one at
import time (see ``__init__``).  Everything here works on plain ints,
lists and tuples so both backends are interchangeable.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "pure"


def reduce_word(letters: Sequence[int]) -> list[int]:
    """Freely reduce a word given as signed generator indices.

    A letter +i is the i-th generator, -i its inverse; adjacent cancelling
    pairs are removed until none remain.
    """
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def substitute(images: Sequence[Sequence[int]], word: Sequence[int]) -> list[int]:
    """Apply a generator-wise substitution to ``word`` and reduce.

    ``images[i]`` is the (reduced) image word of generator i+1; the letter
    -(i+1) receives the reversed, negated image.
    """
    out: list[int] = []
    for letter in word:
        if letter > 0:
            seq = images[letter - 1]
        else:
            seq = [-x for x in reversed(images[-letter - 1])]
        for x in seq:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return out


def evaluate_word(
    table: Sequence[Sequence[int]],
    inv: Sequence[int],
    tup: Sequence[int],
    word: Sequence[int],
) -> int:
    """Evaluate a free word at a tuple of group elements (0 = identity)."""
    acc = 0
    for letter in word:
        g = tup[letter - 1] if letter > 0 else inv[tup[-letter - 1]]
        acc = table[acc][g]
    return acc


def canonical_tuple(
    table: Sequence[Sequence[int]], inv: Sequence[int], tup: Sequence[int]
) -> tuple[int, ...]:
    """Lexicographically least tuple in the simultaneous-conjugation orbit."""
    best = tuple(tup)
    for h in range(len(inv)):
        hi = inv[h]
        cand = tuple(table[table[hi][g]][h] for g in tup)
        if cand < best:
            best = cand
    return best


def product_one_classes_chunk(
    table: Sequence[Sequence[int]],
    inv: Sequence[int],
    d: int,
    first_lo: int,
    first_hi: int,
) -> set[tuple[int, ...]]:
    """Canonical representatives of product-one d-tuples whose first
    coordinate lies in [first_lo, first_hi).

    The last coordinate is forced to the inverse of the product of the
    first d-1, so the walk is an odometer over d-1 coordinates.
    """
    n = len(inv)
    classes: set[tuple[int, ...]] = set()
    free = d - 1
    coords = [0] * free
    coords[0] = first_lo
    if first_lo >= first_hi:
        return classes
    while True:
        acc = 0
        for g in coords:
            acc = table[acc][g]
        tup = tuple(coords) + (inv[acc],)
        classes.add(canonical_tuple(table, inv, tup))
        pos = free - 1
        while pos >= 0:
            coords[pos] += 1
            limit = first_hi if pos == 0 else n
            if coords[pos] < limit:
                break
            coords[pos] = first_lo if pos == 0 else 0
            pos -= 1
        if pos < 0:
            return classes
