"""Monodromy automorphism as a product of cluster twists, and the
resulting generators-and-relations presentation.

Each cluster (I, n) with I = {m..m+l-1} contributes the twist
x_i -> (x_m...x_{m+l-1}) x_i (x_m...x_{m+l-1})^-1 for i in I, identity
elsewhere.  The twists of a cluster forest commute, so the composition
order (the forest's canonical sort) is unobservable.  The emitter performs
free reduction only and never simplifies across relations, so output is
stable for golden files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .clusters import Cluster, ClusterForest
from .errors import IntervalOutOfRange
from .freegroup import FreeAutomorphism, FreeWord, compose


def dehn_twist_automorphism(c: Cluster, d: int) -> FreeAutomorphism:
    """Conjugate the generators of the interval by their ordered product."""
    if c.end > d:
        raise IntervalOutOfRange(f"cluster {c} does not fit in rank {d}")
    conj = FreeWord(tuple(c.indices()))
    images = [
        FreeWord.generator(i).conjugated_by(conj) if i in c.indices() else FreeWord.generator(i)
        for i in range(1, d + 1)
    ]
    return FreeAutomorphism(d, tuple(images))


def monodromy_automorphism(forest: ClusterForest) -> FreeAutomorphism:
    """Composition of the twist automorphisms over the forest's canonical
    order; the empty forest gives the identity."""
    acc = FreeAutomorphism.identity(forest.d)
    for c in forest.clusters:
        acc = compose(acc, dehn_twist_automorphism(c, forest.d))
    return acc


@dataclass(frozen=True)
class Presentation:
    """Generators x_1..x_d and delta with the product relation and the
    delta-conjugation relations."""

    d: int
    images: tuple[FreeWord, ...]
    p: int = 0
    point_labels: tuple[str, ...] = ()
    sigma: tuple[int, ...] = ()

    def generators(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.d + 1)] + ["delta"]

    def product_word(self) -> str:
        return "*".join(f"x{i}" for i in range(1, self.d + 1))

    def relation_pairs(self) -> list[tuple[str, str]]:
        """Machine form: every relation as (lhs word, rhs word)."""
        rels = [(self.product_word(), "1")]
        for i, w in enumerate(self.images, start=1):
            rels.append((f"delta^-1*x{i}*delta", str(w)))
        return rels

    def relation_displays(self) -> list[str]:
        """Paper-style display: commutators for fixed generators."""
        out = [f"{self.product_word()} = 1"]
        for i, w in enumerate(self.images, start=1):
            if w.letters == (i,):
                out.append(f"[delta, x{i}] = 1")
            else:
                out.append(f"delta^-1*x{i}*delta = {w}")
        return out

    def text(self) -> str:
        lines = []
        if self.p:
            lines.append(f"# p = {self.p}")
        if self.point_labels:
            lines.append("# points (reordered) = " + ", ".join(self.point_labels))
        if self.sigma:
            lines.append("# sigma = [" + ", ".join(str(s) for s in self.sigma) + "]")
        body = self.relation_displays()
        lines.append("< " + ", ".join(self.generators()) + " |")
        for k, rel in enumerate(body):
            sep = "," if k + 1 < len(body) else " >"
            lines.append(f"  {rel}{sep}")
        return "\n".join(lines) + "\n"

    def relator_lines(self) -> list[str]:
        """Flat relator list: every relation as a word equal to 1."""
        out = [self.product_word()]
        for i, w in enumerate(self.images, start=1):
            inv = str(w.inv()) if w.letters else "1"
            if inv == "1":
                out.append(f"delta^-1*x{i}*delta")
            else:
                out.append(f"delta^-1*x{i}*delta*{inv}")
        return out

    def relators_text(self) -> str:
        lines = ["generators: " + ", ".join(self.generators())]
        lines.extend(self.relator_lines())
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "schema": "branchmono/1",
            "kind": "presentation",
            "d": self.d,
            "p": self.p,
            "points": list(self.point_labels),
            "sigma": list(self.sigma),
            "generators": self.generators(),
            "relations": [
                {"lhs": lhs, "rhs": rhs} for lhs, rhs in self.relation_pairs()
            ],
        }


def emit_presentation(
    forest: ClusterForest,
    p: int = 0,
    point_labels: Optional[Sequence[str]] = None,
    sigma: Optional[Sequence[int]] = None,
) -> Presentation:
    aut = monodromy_automorphism(forest)
    return Presentation(
        d=forest.d,
        images=aut.images,
        p=p,
        point_labels=tuple(point_labels or ()),
        sigma=tuple(sigma or ()),
    )
