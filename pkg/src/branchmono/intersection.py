"""Branch-point ingestion and the pairwise intersection matrix.

Three input modes: exact rationals with a p-adic valuation, truncated
power series given by coefficient lists, or a raw matrix of valuations.
All arithmetic in this module is exact (``fractions.Fraction``); nothing
here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

from .errors import (
    DuplicatePoint,
    IndistinguishableTruncation,
    InvalidInput,
    NonIntegralPoint,
    UltrametricViolation,
)

MODES = ("padic", "series", "matrix")


def parse_rational(value: Any) -> Fraction:
    """Accept an int or an ``"a/b"`` / ``"a"`` string; floats are rejected
    to keep the arithmetic exact."""
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse rational {value!r}") from exc
    raise InvalidInput(f"not a rational: {value!r} (floats are not accepted)")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def padic_valuation(x: Fraction, p: int) -> int:
    """v_p of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class BranchInput:
    """Validated branch-point data in one of the three input modes."""

    mode: str
    p: Optional[int] = None
    points: tuple = ()
    matrix: Optional[tuple[tuple[int, ...], ...]] = None
    truncation: Optional[int] = None
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInput(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.p is not None and not is_prime(self.p):
            raise InvalidInput(f"p = {self.p} is not prime")
        getattr(self, f"_check_{self.mode}")()
        if not self.labels:
            object.__setattr__(self, "labels", self._default_labels())

    @property
    def d(self) -> int:
        if self.mode == "matrix":
            assert self.matrix is not None
            return len(self.matrix)
        return len(self.points)

    def _check_common_size(self, d: int) -> None:
        if d < 2:
            raise InvalidInput(f"need at least 2 branch points, got {d}")

    def _check_padic(self) -> None:
        self._check_common_size(len(self.points))
        if self.p is None:
            raise InvalidInput("padic mode requires a prime p")
        seen: dict[Fraction, int] = {}
        for idx, x in enumerate(self.points, start=1):
            if not isinstance(x, Fraction):
                raise InvalidInput(f"point {idx} is not an exact rational")
            if x != 0 and padic_valuation(x, self.p) < 0:
                raise NonIntegralPoint(
                    f"point {idx} = {format_rational(x)} has v_{self.p} < 0"
                )
            if x in seen:
                raise DuplicatePoint(f"points {seen[x]} and {idx} coincide")
            seen[x] = idx

    def _check_series(self) -> None:
        self._check_common_size(len(self.points))
        if self.truncation is None or self.truncation < 1:
            raise InvalidInput("series mode requires truncation T >= 1")
        for idx, coeffs in enumerate(self.points, start=1):
            if len(coeffs) != self.truncation:
                raise InvalidInput(
                    f"series {idx} has {len(coeffs)} coefficients, expected T = {self.truncation}"
                )
            if not all(isinstance(c, Fraction) for c in coeffs):
                raise InvalidInput(f"series {idx} has a non-rational coefficient")
        # Pairwise distinguishability is checked in compute_matrix, where the
        # offending pair can be reported with its valuation lower bound.

    def _check_matrix(self) -> None:
        if self.matrix is None:
            raise InvalidInput("matrix mode requires a matrix")
        d = len(self.matrix)
        self._check_common_size(d)
        for i, row in enumerate(self.matrix):
            if len(row) != d:
                raise InvalidInput(f"matrix row {i + 1} has length {len(row)}, expected {d}")
            for j, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise InvalidInput(f"matrix entry ({i + 1},{j + 1}) must be a nonnegative integer")
                if i != j and v != self.matrix[j][i]:
                    raise InvalidInput(f"matrix not symmetric at ({i + 1},{j + 1})")

    def _default_labels(self) -> tuple[str, ...]:
        if self.mode == "padic":
            return tuple(format_rational(x) for x in self.points)
        return tuple(f"P{i}" for i in range(1, self.d + 1))

    @classmethod
    def from_json_dict(cls, obj: Mapping[str, Any]) -> "BranchInput":
        if not isinstance(obj, Mapping):
            raise InvalidInput("branch input must be a JSON object")
        mode = obj.get("mode")
        if mode not in MODES:
            raise InvalidInput(f"missing or unknown mode {mode!r}")
        p = obj.get("p")
        if p is not None and (not isinstance(p, int) or isinstance(p, bool)):
            raise InvalidInput(f"p must be an integer, got {p!r}")
        if mode == "padic":
            pts = obj.get("points")
            if not isinstance(pts, Sequence) or isinstance(pts, (str, bytes)):
                raise InvalidInput("padic mode requires a points array")
            points: tuple = tuple(parse_rational(x) for x in pts)
            return cls(mode=mode, p=p, points=points)
        if mode == "series":
            pts = obj.get("points")
            if not isinstance(pts, Sequence) or not all(
                isinstance(row, Sequence) and not isinstance(row, (str, bytes)) for row in pts
            ):
                raise InvalidInput("series mode requires an array of coefficient arrays")
            points = tuple(tuple(parse_rational(c) for c in row) for row in pts)
            truncation = obj.get("truncation")
            return cls(mode=mode, p=p, points=points, truncation=truncation)
        mat = obj.get("matrix")
        if not isinstance(mat, Sequence):
            raise InvalidInput("matrix mode requires a matrix array")
        matrix = tuple(tuple(v for v in row) for row in mat)
        return cls(mode=mode, p=p, matrix=matrix)


@dataclass(frozen=True)
class IntersectionMatrix:
    """Symmetric matrix of pairwise intersection multiplicities.

    Validated on construction: symmetry and the ultrametric two-minima
    rule (among e_ij, e_ik, e_jk the minimum is attained at least twice).
    The diagonal is ignored and stored as 0.
    """

    d: int
    e: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.d < 2 or len(self.e) != self.d:
            raise InvalidInput(f"bad matrix shape for d = {self.d}")
        rows = tuple(
            tuple(0 if i == j else self.e[i][j] for j in range(self.d))
            for i in range(self.d)
        )
        object.__setattr__(self, "e", rows)
        for i in range(self.d):
            if len(self.e[i]) != self.d:
                raise InvalidInput(f"row {i + 1} has wrong length")
            for j in range(i + 1, self.d):
                v = self.e[i][j]
                if not isinstance(v, int) or v < 0:
                    raise InvalidInput(f"entry ({i + 1},{j + 1}) must be a nonnegative integer")
                if v != self.e[j][i]:
                    raise InvalidInput(f"matrix not symmetric at ({i + 1},{j + 1})")
        for i in range(self.d):
            for j in range(i + 1, self.d):
                for k in range(j + 1, self.d):
                    trio = (self.e[i][j], self.e[i][k], self.e[j][k])
                    if sorted(trio)[0] != sorted(trio)[1]:
                        raise UltrametricViolation(
                            "minimum attained only once on triple "
                            f"({i + 1},{j + 1},{k + 1}): e = {trio}",
                            triple=[i + 1, j + 1, k + 1],
                        )

    def entry(self, i: int, j: int) -> int:
        """1-based access."""
        return self.e[i - 1][j - 1]

    def max_depth(self) -> int:
        return max(
            (self.e[i][j] for i in range(self.d) for j in range(i + 1, self.d)),
            default=0,
        )


def compute_matrix(binput: BranchInput) -> IntersectionMatrix:
    """Pairwise valuations of differences, per input mode."""
    d = binput.d
    if binput.mode == "matrix":
        assert binput.matrix is not None
        return IntersectionMatrix(d, binput.matrix)
    e = [[0] * d for _ in range(d)]
    if binput.mode == "padic":
        assert binput.p is not None
        for i in range(d):
            for j in range(i + 1, d):
                diff = binput.points[i] - binput.points[j]
                e[i][j] = e[j][i] = padic_valuation(diff, binput.p)
        return IntersectionMatrix(d, tuple(tuple(r) for r in e))
    # series mode: least index with differing coefficients
    t = binput.truncation
    assert t is not None
    for i in range(d):
        for j in range(i + 1, d):
            val = next(
                (
                    n
                    for n in range(t)
                    if binput.points[i][n] != binput.points[j][n]
                ),
                None,
            )
            if val is None:
                raise IndistinguishableTruncation(
                    f"series {i + 1} and {j + 1} agree through all {t} coefficients; "
                    f"only v >= {t} is known",
                    pair=[i + 1, j + 1],
                    truncation=t,
                )
            e[i][j] = e[j][i] = val
    return IntersectionMatrix(d, tuple(tuple(r) for r in e))


def satisfies_interval_hypothesis(m: IntersectionMatrix) -> bool:
    """Rows weakly decreasing to the right of the diagonal; equivalent to
    every maximal cluster being a contiguous interval."""
    for i in range(m.d):
        for j in range(i + 1, m.d - 1):
            if m.e[i][j] < m.e[i][j + 1]:
                return False
    return True


def reindex(m: IntersectionMatrix, sigma: Sequence[int]) -> IntersectionMatrix:
    """Reindexed matrix; new position k holds original index sigma[k-1] (1-based)."""
    if sorted(sigma) != list(range(1, m.d + 1)):
        raise InvalidInput(f"{sigma} is not a permutation of 1..{m.d}")
    return IntersectionMatrix(
        m.d,
        tuple(
            tuple(m.e[sigma[i] - 1][sigma[j] - 1] for j in range(m.d))
            for i in range(m.d)
        ),
    )


def depth_partition(m: IntersectionMatrix, block: Sequence[int], n: int) -> list[list[int]]:
    """Split a block (0-based indices) into classes of the relation e >= n,
    which is transitive by ultrametricity.  Classes sorted by least element."""
    remaining = sorted(block)
    classes: list[list[int]] = []
    while remaining:
        seed = remaining.pop(0)
        cls = [seed]
        rest = []
        for j in remaining:
            if m.e[seed][j] >= n:
                cls.append(j)
            else:
                rest.append(j)
        remaining = rest
        classes.append(sorted(cls))
    return classes


def _min_pairwise(m: IntersectionMatrix, block: Sequence[int]) -> int:
    return min(m.e[i][j] for a, i in enumerate(block) for j in block[a + 1 :])


def canonical_order(m: IntersectionMatrix) -> tuple[tuple[int, ...], IntersectionMatrix]:
    """Reorder indices so every cluster becomes a contiguous interval.

    Returns (sigma, reindexed matrix) where sigma lists original 1-based
    indices in their new order; among all valid leaf orders of the nesting
    tree, sigma is the lexicographically least, so an already-valid matrix
    gets the identity.
    """

    def order_block(block: list[int], n: int) -> list[int]:
        if len(block) == 1:
            return block
        nu = _min_pairwise(m, block)
        children = depth_partition(m, block, nu + 1)
        children.sort(key=lambda c: c[0])
        out: list[int] = []
        for child in children:
            out.extend(order_block(child, nu + 1))
        return out

    order = order_block(list(range(m.d)), 1)
    sigma = tuple(i + 1 for i in order)
    return sigma, reindex(m, sigma)
