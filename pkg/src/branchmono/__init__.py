"""Monodromy and prime-to-p fundamental-group presentations from the
intersection behavior of branch points, verified by finite-quotient brute
force and a braid-tracking oracle."""

from ._kernels import BACKEND as kernel_backend
from .braid import BraidWord, braid_action, lambda_braid, puncture_loop_braid
from .clusters import Cluster, ClusterForest, compute_clusters, nesting_tree
from .freegroup import (
    FreeAutomorphism,
    FreeWord,
    compose,
    inner,
    is_inner_shift,
    reduce_word,
)
from .intersection import (
    BranchInput,
    IntersectionMatrix,
    canonical_order,
    compute_matrix,
)
from .monodromy import (
    Presentation,
    dehn_twist_automorphism,
    emit_presentation,
    monodromy_automorphism,
)
from .quotients import (
    CoverClass,
    FiniteGroup,
    center_and_exponent,
    delta_on_class,
    enumerate_classes,
    load_group,
    moduli_degree,
    moduli_report,
)
from .topocheck import (
    WitnessFamily,
    track_braid,
    verify_cluster_bound,
    verify_monodromy_oracle,
    verify_separation,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BraidWord",
    "BranchInput",
    "Cluster",
    "ClusterForest",
    "CoverClass",
    "FiniteGroup",
    "FreeAutomorphism",
    "FreeWord",
    "IntersectionMatrix",
    "Presentation",
    "WitnessFamily",
    "braid_action",
    "canonical_order",
    "center_and_exponent",
    "compose",
    "compute_clusters",
    "compute_matrix",
    "dehn_twist_automorphism",
    "delta_on_class",
    "emit_presentation",
    "enumerate_classes",
    "inner",
    "is_inner_shift",
    "kernel_backend",
    "lambda_braid",
    "load_group",
    "moduli_degree",
    "moduli_report",
    "monodromy_automorphism",
    "nesting_tree",
    "puncture_loop_braid",
    "reduce_word",
    "track_braid",
    "verify_cluster_bound",
    "verify_monodromy_oracle",
    "verify_separation",
    "__version__",
]
