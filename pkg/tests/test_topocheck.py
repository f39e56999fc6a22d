"""Separating-circle geometry and the strand-tracking oracle."""

from fractions import Fraction as F

import pytest

from branchmono.clusters import Cluster, ClusterForest
from branchmono.errors import (
    InvalidInput,
    NotCanonicallyOrdered,
    ParametersTooLarge,
    UnresolvedCrossing,
)
from branchmono.freegroup import is_inner_shift
from branchmono.monodromy import monodromy_automorphism
from branchmono.topocheck import (
    RationalComplex,
    WitnessFamily,
    eval_poly,
    track_braid,
    verify_cluster_bound,
    verify_monodromy_oracle,
    verify_separation,
)

Z0 = RationalComplex(F(3, 64))
PARAMS = dict(eta=F(1, 8), r=F(1, 16), z0=Z0)


def family_3pt(**kw):
    # a1 = 0, a2 = x^2, a3 = x
    return WitnessFamily(
        polys=((F(0),), (F(0), F(0), F(1)), (F(0), F(1))), **{**PARAMS, **kw}
    )


def family_4pt(**kw):
    # a1 = 0, a2 = x, a3 = 1, a4 = 1 + x^2
    return WitnessFamily(
        polys=((F(0),), (F(0), F(1)), (F(1),), (F(1), F(0), F(1))), **{**PARAMS, **kw}
    )


def test_rational_complex_arithmetic():
    a = RationalComplex(F(1, 2), F(1, 3))
    b = RationalComplex(F(2), F(-1))
    assert (a + b).re == F(5, 2)
    assert (a * b).abs2() == a.abs2() * b.abs2()
    assert RationalComplex.from_json(["3/64", 0]) == Z0


def test_eval_poly_exact():
    z = RationalComplex(F(1, 2), F(1, 2))
    val = eval_poly((F(1), F(0), F(1)), z)  # 1 + z^2
    assert val == RationalComplex(F(1), F(1, 2))


def test_family_validation():
    with pytest.raises(InvalidInput):
        family_3pt(z0=RationalComplex(F(1, 16)))  # |z0| = r
    with pytest.raises(InvalidInput):
        family_3pt(z0=RationalComplex(F(1, 40)))  # |z0| < r/2
    with pytest.raises(InvalidInput):
        WitnessFamily(polys=((F(0),), (F(0), F(0))), **PARAMS)  # duplicates after trim


def test_family_requires_canonical_order():
    fam = WitnessFamily(
        polys=((F(0),), (F(0), F(1)), (F(0), F(0), F(1))), **PARAMS
    )  # e12=1, e13=2: row not weakly decreasing
    with pytest.raises(NotCanonicallyOrdered):
        fam.forest()


def test_forest_of_families():
    assert family_3pt().forest().clusters == (Cluster(1, 3, 1), Cluster(1, 2, 2))
    assert family_4pt().forest().clusters == (
        Cluster(1, 2, 1),
        Cluster(3, 2, 1),
        Cluster(3, 2, 2),
    )


def test_separation_passes_frozen_parameters():
    rep = verify_separation(family_3pt())
    assert rep.passed
    rep = verify_separation(family_4pt())
    assert rep.passed


def test_separation_vacuous_without_clusters():
    fam = WitnessFamily(polys=((F(0),), (F(1),)), **PARAMS)
    rep = verify_separation(fam)
    assert rep.passed
    assert all(r.kind == "distinct-values" for r in rep.records)


def test_separation_oversized_eta():
    with pytest.raises(ParametersTooLarge) as info:
        verify_separation(family_3pt(eta=F(10)))
    assert "membership" in str(info.value) or info.value.details["violations"]


def test_cluster_bound_passes():
    assert verify_cluster_bound(family_3pt()).passed
    assert verify_cluster_bound(family_4pt()).passed


def test_cluster_bound_exact_center():
    # a_i equal to the center polynomial: left side is 0, eta > 0
    fam = WitnessFamily(
        polys=((F(0),), (F(0), F(0), F(1))), **PARAMS
    )  # a1 = 0 = b_{I,n} for every depth
    rep = verify_cluster_bound(fam)
    assert rep.passed


def test_cluster_bound_eta_zero_fails():
    with pytest.raises(ParametersTooLarge):
        verify_cluster_bound(family_3pt(eta=F(0)))


def test_track_braid_full_twist():
    fam = WitnessFamily(polys=((F(0),), (F(0), F(1))), samples=256, **PARAMS)
    assert track_braid(fam).letters == (1, 1)


def test_track_braid_constant_family_empty():
    fam = WitnessFamily(polys=((F(0),), (F(1),)), samples=256, **PARAMS)
    assert track_braid(fam).letters == ()


def test_track_braid_is_pure():
    braid = track_braid(family_3pt(samples=1024))
    assert braid.is_pure()


def test_track_braid_invariant_under_doubling():
    fam = family_3pt()
    assert track_braid(fam, samples=1024) == track_braid(fam, samples=2048)
    fam4 = family_4pt()
    assert track_braid(fam4, samples=1024) == track_braid(fam4, samples=2048)


def test_track_braid_collision_unresolved():
    # a2 = x^2 + 9/4096 meets a1 = 0 on the tracking circle at t = 1/4
    fam = WitnessFamily(
        polys=((F(0),), (F(9, 4096), F(0), F(1))), samples=256, **PARAMS
    )
    with pytest.raises(UnresolvedCrossing):
        track_braid(fam)


def test_track_braid_rejects_unordered_basepoint():
    # a1 = x, a2 = 0: matrix is canonical (single pair) but at z0 the
    # values sort as a2 < a1, so strand 1 does not start leftmost.
    fam = WitnessFamily(polys=((F(0), F(1)), (F(0),)), samples=256, **PARAMS)
    with pytest.raises(UnresolvedCrossing, match="label order"):
        track_braid(fam)


def test_oracle_3pt_family():
    """End-to-end: the tracked braid acts like the composed twists for the
    nested three-point family (this re-derives the d=3 composition example
    through an independent computation path)."""
    report = verify_monodromy_oracle(family_3pt(), samples=1024)
    assert report.consistent
    forest_aut = monodromy_automorphism(
        ClusterForest(3, (Cluster(1, 3, 1), Cluster(1, 2, 2)))
    )
    assert is_inner_shift(report.tracked, forest_aut) is not None


def test_oracle_4pt_family():
    report = verify_monodromy_oracle(family_4pt(), samples=1024)
    assert report.consistent
    assert report.braid.is_pure()


def family_from_matrix(mat, eta=F(1, 8), r=F(1, 64), z0re=F(3, 256), samples=1024):
    """Realize a canonical ultrametric matrix as a polynomial family.

    Coefficient n of a_i is the least member of i's block in the
    "pairwise e >= n+1" partition, so v(a_i - a_j) = e_ij exactly, and at
    a small real z0 the values stay in label order.
    """
    from branchmono.intersection import depth_partition

    d = mat.d
    coeffs = [[F(0)] * (mat.max_depth() + 1) for _ in range(d)]
    for n in range(mat.max_depth() + 1):
        for block in depth_partition(mat, range(d), n + 1):
            for i in block:
                coeffs[i][n] = F(block[0])
    return WitnessFamily(
        polys=tuple(tuple(c) for c in coeffs),
        eta=eta,
        r=r,
        z0=RationalComplex(z0re),
        samples=samples,
    )


def test_oracle_random_structures(rng):
    """Randomized end-to-end check: for random cluster structures realized
    as polynomial families, the tracked braid action matches the twist
    product up to one inner automorphism."""
    from conftest import random_ultrametric_matrix

    seen = set()
    for _ in range(40):
        mat = random_ultrametric_matrix(rng, rng.randint(2, 4), 3)
        key = mat.e
        if key in seen:
            continue
        seen.add(key)
        fam = family_from_matrix(mat)
        assert fam.matrix() == mat
        assert verify_separation(fam).passed
        assert verify_cluster_bound(fam).passed
        report = verify_monodromy_oracle(fam)
        assert report.consistent, f"oracle mismatch for {mat.e}"
    assert len(seen) >= 15


def test_oracle_report_json():
    doc = verify_monodromy_oracle(family_3pt(), samples=512).to_json_dict()
    assert doc["kind"] == "oracle"
    assert doc["consistent"] is True


def test_oracle_deeper_nesting():
    # a = (0, x^3, x^2): forest {({1,2,3},1), ({1,2,3},2), ({1,2},3)}
    fam = WitnessFamily(
        polys=((F(0),), (F(0), F(0), F(0), F(1)), (F(0), F(0), F(1))),
        samples=2048,
        **PARAMS,
    )
    assert fam.forest().clusters == (
        Cluster(1, 3, 1),
        Cluster(1, 3, 2),
        Cluster(1, 2, 3),
    )
    assert verify_separation(fam).passed
    assert verify_cluster_bound(fam).passed
    report = verify_monodromy_oracle(fam)
    assert report.consistent


def test_oracle_mixed_structure_d5():
    # a = (0, x^2, x, 1, 1+x): two root clusters, one nested pair
    fam = WitnessFamily(
        polys=(
            (F(0),),
            (F(0), F(0), F(1)),
            (F(0), F(1)),
            (F(1),),
            (F(1), F(1)),
        ),
        samples=2048,
        **PARAMS,
    )
    assert fam.forest().clusters == (
        Cluster(1, 3, 1),
        Cluster(4, 2, 1),
        Cluster(1, 2, 2),
    )
    assert verify_separation(fam).passed
    assert verify_cluster_bound(fam).passed
    report = verify_monodromy_oracle(fam)
    assert report.consistent


def test_track_braid_imaginary_basepoint_uses_rotation():
    # purely imaginary z0 puts both strands on the same vertical line at
    # t = 0; the tracker must fall back to a rotated projection frame.
    fam = WitnessFamily(
        polys=((F(0),), (F(0), F(1))),
        eta=F(1, 8),
        r=F(1, 16),
        z0=RationalComplex(F(0), F(3, 64)),
        samples=256,
    )
    assert track_braid(fam).letters == (1, 1)
