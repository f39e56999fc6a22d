"""Input modes, valuations, matrix validation, and canonical ordering."""

import itertools
from fractions import Fraction as F

import pytest

from branchmono.errors import (
    DuplicatePoint,
    IndistinguishableTruncation,
    InvalidInput,
    NonIntegralPoint,
    UltrametricViolation,
)
from branchmono.intersection import (
    BranchInput,
    IntersectionMatrix,
    canonical_order,
    compute_matrix,
    padic_valuation,
    reindex,
    satisfies_interval_hypothesis,
)
from conftest import random_ultrametric_matrix, shuffled


def test_padic_valuation():
    assert padic_valuation(F(9), 3) == 2
    assert padic_valuation(F(1, 3), 3) == -1
    assert padic_valuation(F(10, 7), 5) == 1
    with pytest.raises(ValueError):
        padic_valuation(F(0), 5)


def test_example2_matrix():
    bi = BranchInput(mode="padic", p=3, points=(F(0), F(3), F(1), F(2)))
    m = compute_matrix(bi)
    assert m.entry(1, 2) == 1
    for i, j in itertools.combinations(range(1, 5), 2):
        if (i, j) != (1, 2):
            assert m.entry(i, j) == 0


def test_example1_matrix_all_zero():
    bi = BranchInput(mode="padic", p=5, points=(F(0), F(1), F(2)))
    m = compute_matrix(bi)
    assert all(m.entry(i, j) == 0 for i, j in itertools.combinations(range(1, 4), 2))


def test_padic_errors():
    with pytest.raises(NonIntegralPoint):
        BranchInput(mode="padic", p=5, points=(F(1, 5), F(0)))
    with pytest.raises(DuplicatePoint):
        BranchInput(mode="padic", p=5, points=(F(2), F(2)))
    with pytest.raises(InvalidInput):
        BranchInput(mode="padic", p=6, points=(F(0), F(1)))
    with pytest.raises(InvalidInput):
        BranchInput(mode="padic", p=5, points=(F(0),))


def test_series_mode():
    bi = BranchInput(
        mode="series",
        truncation=3,
        points=((F(0), F(1), F(0)), (F(0), F(2), F(0)), (F(1), F(1), F(0))),
    )
    m = compute_matrix(bi)
    assert m.entry(1, 2) == 1
    assert m.entry(1, 3) == 0
    assert m.entry(2, 3) == 0


def test_series_indistinguishable():
    bi = BranchInput(
        mode="series",
        truncation=2,
        points=((F(0), F(1)), (F(0), F(1)), (F(1), F(0))),
    )
    with pytest.raises(IndistinguishableTruncation):
        compute_matrix(bi)


def test_matrix_mode_ultrametric_violation():
    # spec example: e12=2, e13=0, e23=1 -> min 0 attained once
    bi = BranchInput(mode="matrix", matrix=((0, 2, 0), (2, 0, 1), (0, 1, 0)))
    with pytest.raises(UltrametricViolation):
        compute_matrix(bi)


def test_matrix_mode_passthrough():
    rows = ((0, 1, 0), (1, 0, 0), (0, 0, 0))
    m = compute_matrix(BranchInput(mode="matrix", matrix=rows))
    assert m.e == rows


def test_from_json_dict():
    bi = BranchInput.from_json_dict(
        {"mode": "padic", "p": 5, "points": ["1/5" if False else "2", 0, "7"]}
    )
    assert bi.points == (F(2), F(0), F(7))
    with pytest.raises(InvalidInput):
        BranchInput.from_json_dict({"mode": "nope"})
    with pytest.raises(InvalidInput):
        BranchInput.from_json_dict({"mode": "padic", "p": 5, "points": [0.5, 1]})


def test_computed_matrices_are_ultrametric(rng):
    """Valuation axioms force the two-minima rule; the validator must
    accept every padic input."""
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        pts = rng.sample(range(0, 200), rng.randint(2, 6))
        try:
            bi = BranchInput(mode="padic", p=p, points=tuple(F(x) for x in pts))
        except DuplicatePoint:
            continue
        compute_matrix(bi)  # construction validates


def test_series_matrices_are_ultrametric(rng):
    for _ in range(50):
        d, t = rng.randint(2, 5), rng.randint(1, 4)
        pts = tuple(tuple(F(rng.randint(0, 2)) for _ in range(t)) for _ in range(d))
        bi = BranchInput(mode="series", truncation=t, points=pts)
        try:
            compute_matrix(bi)  # construction validates
        except IndistinguishableTruncation:
            continue


# -- canonical order ---------------------------------------------------------

def brute_force_lex_least_order(m: IntersectionMatrix):
    """Oracle: try all d! permutations, keep valid ones, pick lex least."""
    best = None
    for perm in itertools.permutations(range(1, m.d + 1)):
        if satisfies_interval_hypothesis(reindex(m, perm)):
            if best is None or perm < best:
                best = perm
    return best


def test_canonical_order_spec_example():
    m = IntersectionMatrix(3, ((0, 0, 2), (0, 0, 0), (2, 0, 0)))
    sigma, m2 = canonical_order(m)
    assert sigma == (1, 3, 2)
    assert sigma == brute_force_lex_least_order(m)
    assert m2.entry(1, 2) == 2


def test_canonical_order_identity_when_ordered():
    m = IntersectionMatrix(4, ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
    sigma, m2 = canonical_order(m)
    assert sigma == (1, 2, 3, 4)
    assert m2 == m


def test_canonical_order_all_zero():
    m = IntersectionMatrix(3, ((0, 0, 0), (0, 0, 0), (0, 0, 0)))
    sigma, _ = canonical_order(m)
    assert sigma == (1, 2, 3)


def test_canonical_order_matches_brute_force(rng):
    for _ in range(60):
        m = shuffled(random_ultrametric_matrix(rng, rng.randint(2, 5), 3), rng)
        sigma, m2 = canonical_order(m)
        assert satisfies_interval_hypothesis(m2)
        assert sigma == brute_force_lex_least_order(m)


def test_reindex_commutes_with_cluster_relabeling(rng):
    """Clusters of the reordered matrix, pushed back through sigma, are the
    brute-force clusters of the original."""
    from branchmono.clusters import compute_clusters
    from conftest import brute_force_clusters

    for _ in range(30):
        m = shuffled(random_ultrametric_matrix(rng, rng.randint(2, 6), 3), rng)
        sigma, m2 = canonical_order(m)
        relabeled = {
            (frozenset(sigma[i - 1] for i in c.indices()), c.depth)
            for c in compute_clusters(m2).clusters
        }
        assert relabeled == brute_force_clusters(m)


def test_canonical_order_idempotent(rng):
    for _ in range(40):
        m = shuffled(random_ultrametric_matrix(rng, rng.randint(2, 6), 4), rng)
        _, m2 = canonical_order(m)
        sigma2, m3 = canonical_order(m2)
        assert sigma2 == tuple(range(1, m.d + 1))
        assert m3 == m2
