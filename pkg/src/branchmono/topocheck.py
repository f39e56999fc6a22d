"""Numerical verification layer: separating-circle geometry for witness
polynomial families, and monodromy recovery by strand tracking.

The circle/membership inequalities are all comparisons of squared moduli
of Gaussian rationals, so they are checked exactly; circle samples come
from the tan-half-angle parametrization z0*(1-t^2+2it)/(1+t^2), which lies
exactly on |z| = |z0| for rational t.  Only the braid tracker itself runs
in double precision, with crossings located by bisection.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

from .braid import BraidWord, braid_action
from .clusters import Cluster, ClusterForest, compute_clusters
from .errors import InvalidInput, ParametersTooLarge, UnresolvedCrossing
from .freegroup import FreeAutomorphism, FreeWord, is_inner_shift
from .intersection import (
    BranchInput,
    IntersectionMatrix,
    compute_matrix,
    format_rational,
    parse_rational,
)
from .monodromy import monodromy_automorphism


@dataclass(frozen=True)
class RationalComplex:
    """Gaussian rational: exact real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "RationalComplex") -> "RationalComplex":
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        return f"{format_rational(self.re)} + {format_rational(self.im)}i"

    @classmethod
    def from_json(cls, obj: Any) -> "RationalComplex":
        if isinstance(obj, Sequence) and not isinstance(obj, (str, bytes)):
            if len(obj) != 2:
                raise InvalidInput(f"complex rational needs [re, im], got {obj!r}")
            return cls(parse_rational(obj[0]), parse_rational(obj[1]))
        return cls(parse_rational(obj))


def eval_poly(coeffs: Sequence[Fraction], z: RationalComplex) -> RationalComplex:
    acc = RationalComplex()
    for c in reversed(coeffs):
        acc = acc * z + RationalComplex(c)
    return acc


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class WitnessFamily:
    """Polynomials a_1..a_d with the loop parameters (eta, r, z0).

    The standing constraint r/2 < |z0| < r is validated exactly; the
    polynomial list must already be in canonical (cluster-interval) order.
    """

    polys: tuple[tuple[Fraction, ...], ...]
    eta: Fraction
    r: Fraction
    z0: RationalComplex
    samples: int = 4096

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(_trim(p) for p in self.polys))
        if len(self.polys) < 2:
            raise InvalidInput("need at least 2 polynomials")
        if len(set(self.polys)) != len(self.polys):
            raise InvalidInput("witness polynomials must be pairwise distinct")
        if self.eta < 0:
            raise InvalidInput("eta must be nonnegative")
        if self.r <= 0:
            raise InvalidInput("r must be positive")
        a2 = self.z0.abs2()
        if not (self.r * self.r / 4 < a2 < self.r * self.r):
            raise InvalidInput(
                f"z0 must satisfy r/2 < |z0| < r; got |z0|^2 = {a2}, r = {self.r}"
            )
        if self.samples < 16:
            raise InvalidInput("need at least 16 samples")

    @property
    def d(self) -> int:
        return len(self.polys)

    def matrix(self) -> IntersectionMatrix:
        length = max(len(p) for p in self.polys) + 1
        padded = tuple(p + (Fraction(0),) * (length - len(p)) for p in self.polys)
        return compute_matrix(
            BranchInput(mode="series", points=padded, truncation=length)
        )

    def forest(self) -> ClusterForest:
        return compute_clusters(self.matrix())

    def center_poly(self, c: Cluster) -> tuple[Fraction, ...]:
        """The common degree-<n truncation of the cluster's polynomials."""
        coeffs = [
            tuple(p[k] if k < len(p) else Fraction(0) for k in range(c.depth))
            for p in (self.polys[i - 1] for i in c.indices())
        ]
        assert all(t == coeffs[0] for t in coeffs)
        return coeffs[0]

    def circle(self, c: Cluster) -> tuple[RationalComplex, Fraction]:
        """(center w_{I,n}, radius eta * r^(n-1)) of the separating circle."""
        return eval_poly(self.center_poly(c), self.z0), self.eta * self.r ** (c.depth - 1)

    def values_at_z0(self) -> tuple[RationalComplex, ...]:
        return tuple(eval_poly(p, self.z0) for p in self.polys)

    @classmethod
    def from_json_dict(cls, obj: Mapping[str, Any]) -> "WitnessFamily":
        if not isinstance(obj, Mapping):
            raise InvalidInput("witness family must be a JSON object")
        coeffs = obj.get("coefficients")
        if not isinstance(coeffs, Sequence):
            raise InvalidInput("witness family needs a 'coefficients' array of arrays")
        polys = tuple(tuple(parse_rational(c) for c in row) for row in coeffs)
        kwargs: dict[str, Any] = {}
        if "samples" in obj:
            kwargs["samples"] = obj["samples"]
        return cls(
            polys=polys,
            eta=parse_rational(obj.get("eta")),
            r=parse_rational(obj.get("r")),
            z0=RationalComplex.from_json(obj.get("z0")),
            **kwargs,
        )


@dataclass(frozen=True)
class CheckRecord:
    kind: str
    subject: str
    ok: bool
    detail: str = ""

    def to_json_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "subject": self.subject, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class GeometryReport:
    kind: str
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(rec.ok for rec in self.records)

    def violations(self) -> list[CheckRecord]:
        return [rec for rec in self.records if not rec.ok]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "schema": "branchmono/1",
            "kind": self.kind,
            "passed": self.passed,
            "checks": [rec.to_json_dict() for rec in self.records],
        }


def _raise_if_failed(report: GeometryReport) -> GeometryReport:
    if not report.passed:
        bad = report.violations()
        exc = ParametersTooLarge(
            f"{len(bad)} check(s) failed; first: {bad[0].subject}: {bad[0].detail}",
            violations=[f"{rec.subject}: {rec.detail}" for rec in bad],
        )
        exc.report = report  # type: ignore[attr-defined]
        raise exc
    return report


def verify_separation(w: WitnessFamily) -> GeometryReport:
    """Pairwise disjointness of the separating circles, nesting matching
    cluster containment, and membership of exactly the cluster's points."""
    forest = w.forest()
    values = w.values_at_z0()
    records: list[CheckRecord] = []

    for i in range(w.d):
        for j in range(i + 1, w.d):
            ok = values[i] != values[j]
            records.append(
                CheckRecord(
                    "distinct-values",
                    f"a{i + 1}(z0) vs a{j + 1}(z0)",
                    ok,
                    "values coincide at z0" if not ok else "distinct",
                )
            )

    circles = {c: w.circle(c) for c in forest.clusters}
    cl = list(forest.clusters)
    for a_idx in range(len(cl)):
        for b_idx in range(a_idx + 1, len(cl)):
            c1, c2 = cl[a_idx], cl[b_idx]
            (w1, r1), (w2, r2) = circles[c1], circles[c2]
            dist2 = (w1 - w2).abs2()
            if c1.contains_interval(c2) and c1.depth <= c2.depth:
                ok = r2 < r1 and dist2 < (r1 - r2) ** 2
                expect = f"{c2} nested inside {c1}"
            elif c2.contains_interval(c1) and c2.depth <= c1.depth:
                ok = r1 < r2 and dist2 < (r2 - r1) ** 2
                expect = f"{c1} nested inside {c2}"
            else:
                ok = dist2 > (r1 + r2) ** 2
                expect = f"{c1} and {c2} external"
            records.append(
                CheckRecord(
                    "circle-separation",
                    f"{c1} vs {c2}",
                    ok,
                    expect + ("" if ok else " violated: |w-w'|^2 = " f"{dist2}, radii {r1}, {r2}"),
                )
            )

    for c in forest.clusters:
        wc, rc = circles[c]
        rc2 = rc * rc
        for i in range(1, w.d + 1):
            dist2 = (values[i - 1] - wc).abs2()
            if i in c.indices():
                ok = dist2 < rc2
                want = "inside"
            else:
                ok = dist2 > rc2
                want = "outside"
            records.append(
                CheckRecord(
                    "membership",
                    f"a{i}(z0) vs circle of {c}",
                    ok,
                    f"expected strictly {want}: |a - w|^2 = {dist2}, radius^2 = {rc2}",
                )
            )
    return _raise_if_failed(GeometryReport("separation", tuple(records)))


def _circle_samples(z0: RationalComplex, count: int) -> list[RationalComplex]:
    """Exact points on |z| = |z0| via z0 * (1-t^2+2it)/(1+t^2), rational t."""
    out = [RationalComplex(-z0.re, -z0.im)]
    for k in range(count - 1):
        angle = math.pi * ((k + 0.5) / (count - 1) - 0.5)
        t = Fraction(math.tan(angle)).limit_denominator(10**6)
        den = 1 + t * t
        unit = RationalComplex((1 - t * t) / den, 2 * t / den)
        out.append(z0 * unit)
    return out


def verify_cluster_bound(w: WitnessFamily, bound_samples: int = 128) -> GeometryReport:
    """|a_i(z) - b_{I,n}(z)| < |z|^(n-1) * eta at sampled z with |z| = |z0|,
    for every cluster (I, n) and i in I."""
    forest = w.forest()
    zs = _circle_samples(w.z0, bound_samples)
    z0_abs2 = w.z0.abs2()
    records: list[CheckRecord] = []
    for c in forest.clusters:
        b = w.center_poly(c)
        bound2 = z0_abs2 ** (c.depth - 1) * w.eta * w.eta
        for i in c.indices():
            worst: Optional[Fraction] = None
            ok = True
            for z in zs:
                diff2 = (eval_poly(w.polys[i - 1], z) - eval_poly(b, z)).abs2()
                if not diff2 < bound2:
                    ok = False
                if worst is None or diff2 > worst:
                    worst = diff2
            records.append(
                CheckRecord(
                    "cluster-bound",
                    f"a{i} vs b of {c}",
                    ok,
                    f"max |a_i(z) - b(z)|^2 = {worst} vs bound^2 = {bound2} "
                    f"over {len(zs)} samples",
                )
            )
    return _raise_if_failed(GeometryReport("cluster-bound", tuple(records)))


# ---------------------------------------------------------------------------
# Strand tracking


class _NeedsRotation(Exception):
    pass


@dataclass
class _Tracker:
    coeffs: list[list[float]]
    z0: complex
    samples: int
    max_depth: int
    frame: complex = 1.0
    scale: float = 1.0

    def positions(self, t: float) -> list[complex]:
        z = self.z0 * cmath.exp(2j * math.pi * t)
        out = []
        for cs in self.coeffs:
            acc = 0j
            for c in reversed(cs):
                acc = acc * z + c
            out.append(acc)
        return out

    def proj(self, p: complex) -> float:
        return (p * self.frame).real

    def orth(self, p: complex) -> float:
        return (p * self.frame).imag

    def order_at(self, t: float) -> list[int]:
        pos = self.positions(t)
        projs = [self.proj(p) for p in pos]
        order = sorted(range(len(pos)), key=lambda i: projs[i])
        for a, b in zip(order, order[1:]):
            if abs(projs[a] - projs[b]) < 1e-12 * self.scale:
                raise _NeedsRotation()
        return order

    def run(self) -> tuple[list[int], list[int]]:
        """Returns (letters, initial order as strand ids)."""
        letters: list[int] = []
        t_grid = [k / self.samples for k in range(self.samples + 1)]
        start = self.order_at(0.0)
        current = list(start)

        def disjoint_adjacent_swaps(a: list[int], b: list[int]) -> Optional[list[int]]:
            """Positions k where b is a product of disjoint transpositions
            (k, k+1) applied to a; None if the difference is anything else.
            Disjoint swaps arise generically: clusters at equal depths
            rotate at the same angular speed and cross simultaneously."""
            swaps: list[int] = []
            k = 0
            while k < len(a):
                if a[k] == b[k]:
                    k += 1
                elif k + 1 < len(a) and a[k] == b[k + 1] and a[k + 1] == b[k]:
                    swaps.append(k)
                    k += 2
                else:
                    return None
            return swaps if swaps else None

        def emit(k: int, t_lo: float, t_hi: float) -> float:
            """Locate the crossing of adjacent positions k, k+1 in (t_lo,
            t_hi), append its letter and swap; returns the crossing time.
            Assumes current == order at t_lo, so the gap starts positive."""
            left, right = current[k], current[k + 1]

            def gap(t: float) -> float:
                pos = self.positions(t)
                return self.proj(pos[right]) - self.proj(pos[left])

            lo, hi = t_lo, t_hi
            g_lo = gap(lo)
            for _ in range(64):
                if hi - lo < 1e-9 * max(t_hi - t_lo, 1e-12):
                    break
                mid = (lo + hi) / 2
                g_mid = gap(mid)
                if (g_mid > 0) == (g_lo > 0):
                    lo, g_lo = mid, g_mid
                else:
                    hi = mid
            t_star = (lo + hi) / 2
            pos = self.positions(t_star)
            if abs(pos[right] - pos[left]) < 1e-11 * self.scale:
                raise UnresolvedCrossing(
                    f"strands {left + 1} and {right + 1} collide near t = {t_star:.6f}"
                )
            o_l, o_r = self.orth(pos[left]), self.orth(pos[right])
            if abs(o_r - o_l) < 1e-9 * self.scale:
                raise _NeedsRotation()
            letters.append((k + 1) if o_r > o_l else -(k + 1))
            current[k], current[k + 1] = current[k + 1], current[k]
            return t_star

        def resolve(t_a: float, t_b: float, depth: int) -> None:
            """Process all crossings in (t_a, t_b].  Invariant: current is
            the order at t_a on entry and at t_b on exit."""
            order_b = self.order_at(t_b)
            if order_b == current:
                return
            if depth >= self.max_depth:
                raise UnresolvedCrossing(
                    f"could not isolate crossings in [{t_a:.6f}, {t_b:.6f}]; increase samples"
                )
            swaps = disjoint_adjacent_swaps(current, order_b)
            if swaps is not None:
                # Disjoint pairs commute; bisect each one independently.
                t_last = t_a
                for k in swaps:
                    t_last = max(t_last, emit(k, t_a, t_b))
                if current == order_b:
                    return
                # Rare leftovers (multiple events per pair): nudge past the
                # last crossing and keep going.
                resolve(min(t_b, t_last + (t_b - t_last) * 1e-3), t_b, depth + 1)
                return
            mid = (t_a + t_b) / 2
            resolve(t_a, mid, depth + 1)
            resolve(mid, t_b, depth + 1)

        for t_a, t_b in zip(t_grid, t_grid[1:]):
            resolve(t_a, t_b, 0)
        if current != start:
            raise UnresolvedCrossing(
                "tracked braid is not pure (a crossing was missed); increase samples"
            )
        return letters, start


def track_braid(
    w: WitnessFamily,
    samples: Optional[int] = None,
    max_depth: int = 20,
    max_rotations: int = 8,
) -> BraidWord:
    """Recover the monodromy braid by following the points a_i(e(t) z0).

    Strands are ordered by real part in a (slightly rotatable) projection
    frame; each adjacent transposition emits b_k with the sign read off the
    imaginary parts at the crossing.  The initial left-to-right order must
    match the label order, otherwise the braid letters would refer to the
    wrong generators (this is not an inner-automorphism ambiguity).
    """
    sample_count = samples if samples is not None else w.samples
    coeffs = [[float(c) for c in p] for p in w.polys]
    z0 = w.z0.to_complex()
    base = [v.to_complex() for v in w.values_at_z0()]
    scale = max(1.0, max(abs(p) for p in base))
    last_error: Optional[Exception] = None
    for rotation in range(max_rotations):
        tracker = _Tracker(
            coeffs=coeffs,
            z0=z0,
            samples=sample_count,
            max_depth=max_depth,
            frame=cmath.exp(-1j * 0.1371 * rotation),
            scale=scale,
        )
        try:
            letters, start = tracker.run()
        except _NeedsRotation as exc:
            last_error = exc
            continue
        if start != list(range(w.d)):
            raise UnresolvedCrossing(
                "initial real-part order of a_i(z0) does not match the label "
                f"order (got {[s + 1 for s in start]}); relist the polynomials"
            )
        return BraidWord(w.d, tuple(letters))
    raise UnresolvedCrossing(
        "projection stayed degenerate after "
        f"{max_rotations} frame rotations: {last_error}"
    )


@dataclass(frozen=True)
class OracleReport:
    """Outcome of comparing the tracked braid with the cluster twists."""

    braid: BraidWord
    tracked: FreeAutomorphism
    symbolic: FreeAutomorphism
    conjugator: Optional[FreeWord]
    exact: bool

    @property
    def consistent(self) -> bool:
        return self.conjugator is not None

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "schema": "branchmono/1",
            "kind": "oracle",
            "braid": str(self.braid),
            "consistent": self.consistent,
            "exact": self.exact,
            "conjugator": None if self.conjugator is None else str(self.conjugator),
        }


def verify_monodromy_oracle(w: WitnessFamily, samples: Optional[int] = None) -> OracleReport:
    """Tracked-braid action vs cluster-twist action, up to one inner
    automorphism; exact agreement is reported as a bonus."""
    braid = track_braid(w, samples=samples)
    tracked = braid_action(braid)
    symbolic = monodromy_automorphism(w.forest())
    conj = is_inner_shift(tracked, symbolic)
    return OracleReport(
        braid=braid,
        tracked=tracked,
        symbolic=symbolic,
        conjugator=conj,
        exact=tracked == symbolic,
    )
