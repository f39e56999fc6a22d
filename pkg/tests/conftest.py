"""Shared test helpers: seeded generators for ultrametric matrices and
independent brute-force oracles used to freeze expected values."""

from __future__ import annotations

import random

import pytest

from branchmono.intersection import IntersectionMatrix


def random_ultrametric_entries(
    rng: random.Random, d: int, max_depth: int
) -> list[list[int]]:
    """Random ultrametric matrix already in canonical (interval) order.

    Built from a random nested partition into consecutive blocks: pairs
    split apart at level n receive entry n-1.
    """
    e = [[0] * d for _ in range(d)]

    def build(block: list[int], n: int) -> None:
        if len(block) == 1:
            return
        if n > max_depth:
            parts = [[i] for i in block]
        else:
            k = rng.randint(1, len(block))
            cuts = sorted(rng.sample(range(1, len(block)), k - 1))
            parts = [block[a:b] for a, b in zip([0] + cuts, cuts + [len(block)])]
        for ai in range(len(parts)):
            for bi in range(ai + 1, len(parts)):
                for i in parts[ai]:
                    for j in parts[bi]:
                        e[i][j] = e[j][i] = n - 1
        for part in parts:
            build(part, n + 1)

    build(list(range(d)), 1)
    return e


def random_ultrametric_matrix(
    rng: random.Random, d: int, max_depth: int
) -> IntersectionMatrix:
    return IntersectionMatrix(d, tuple(tuple(r) for r in random_ultrametric_entries(rng, d, max_depth)))


def shuffled(m: IntersectionMatrix, rng: random.Random) -> IntersectionMatrix:
    perm = list(range(m.d))
    rng.shuffle(perm)
    return IntersectionMatrix(
        m.d,
        tuple(tuple(m.e[perm[i]][perm[j]] for j in range(m.d)) for i in range(m.d)),
    )


def brute_force_clusters(m: IntersectionMatrix) -> set[tuple[frozenset[int], int]]:
    """Independent oracle: enumerate every subset and depth, keep maximal
    ones (1-based indices, |I| >= 2)."""
    import itertools

    found = set()
    indices = range(1, m.d + 1)
    for n in range(1, m.max_depth() + 1):
        for size in range(2, m.d + 1):
            for sub in itertools.combinations(indices, size):
                if any(m.entry(i, j) < n for i, j in itertools.combinations(sub, 2)):
                    continue
                maximal = True
                for extra in indices:
                    if extra in sub:
                        continue
                    if all(m.entry(extra, i) >= n for i in sub):
                        maximal = False
                        break
                if maximal:
                    found.add((frozenset(sub), n))
    return found


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
