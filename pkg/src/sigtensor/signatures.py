"""Piecewise linear paths and their exact truncated signatures.

A path is stored as its list of segment increments; only increments matter
because the signature is invariant under translation and reparametrization.
Signatures are computed through Chen's identity (concatenation multiplies
signatures in the truncated tensor algebra), and an independent oracle
integrates each entry directly as an iterated integral with per-piece
polynomial arithmetic over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import Vector, as_vector
from .tensors import Tensor, tensor_product
from .words import Word


@dataclass(frozen=True)
class Path:
    dim: int
    increments: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.increments) < 1:
            raise ValueError("a path needs at least one increment")
        if any(len(u) != self.dim for u in self.increments):
            raise ValueError("all increments must have the path dimension")

    @staticmethod
    def from_increments(increments: Sequence[Sequence], dim: int | None = None) -> "Path":
        incs = tuple(as_vector(u) for u in increments)
        if dim is None:
            if not incs:
                raise ValueError("cannot infer dimension from an empty path")
            dim = len(incs[0])
        return Path(dim, incs)

    @property
    def segments(self) -> int:
        return len(self.increments)


@dataclass(frozen=True)
class TruncatedSignature:
    """Levels 0..K of a tensor-algebra element; level k is an order-k tensor.

    Signatures of paths (and exponentials of log-signatures) have constant
    term 1; the container itself allows any constant so that non-examples
    can be built in order to exercise the shuffle test.
    """

    dim: int
    max_level: int
    levels: tuple[Tensor, ...]

    def __post_init__(self):
        if self.max_level < 0:
            raise ValueError("max_level must be >= 0")
        if len(self.levels) != self.max_level + 1:
            raise ValueError("need one tensor per level 0..K")
        for k, t in enumerate(self.levels):
            if t.order != k or t.dim != self.dim:
                raise ValueError(f"level {k} has wrong shape")

    def level(self, k: int) -> Tensor:
        if not 0 <= k <= self.max_level:
            raise ValueError(f"level {k} outside 0..{self.max_level}")
        return self.levels[k]

    @property
    def constant_term(self) -> Fraction:
        return self.levels[0].entries[0]

    @staticmethod
    def from_levels(levels: Sequence[Tensor], dim: int) -> "TruncatedSignature":
        return TruncatedSignature(dim, len(levels) - 1, tuple(levels))

    @staticmethod
    def trivial(dim: int, max_level: int) -> "TruncatedSignature":
        """The unit of the algebra: constant 1, every other level zero."""
        levels = [Tensor.scalar(1, dim)] + [Tensor.zeros(k, dim) for k in range(1, max_level + 1)]
        return TruncatedSignature(dim, max_level, tuple(levels))


def segment_signature(v: Sequence, max_level: int) -> TruncatedSignature:
    """Signature of a single segment: level k is v^(x)k / k!."""
    vec = as_vector(v)
    d = len(vec)
    levels = [Tensor.scalar(1, d)]
    power = Tensor.scalar(1, d)
    v_tensor = Tensor.from_vector(vec)
    for k in range(1, max_level + 1):
        power = tensor_product(power, v_tensor)
        levels.append(power.scale(Fraction(1, factorial(k))))
    return TruncatedSignature(d, max_level, tuple(levels))


def chen_concat(a: TruncatedSignature, b: TruncatedSignature) -> TruncatedSignature:
    """Chen's identity: the signature of a concatenation is the truncated
    tensor-algebra product of the signatures."""
    if a.dim != b.dim or a.max_level != b.max_level:
        raise ValueError("signatures must share dimension and truncation level")
    d, K = a.dim, a.max_level
    levels = []
    for k in range(K + 1):
        acc = [Fraction(0)] * d**k
        for i in range(k + 1):
            left = a.level(i).entries
            right = b.level(k - i).entries
            width = len(right)
            pos = 0
            for x in left:
                if x:
                    for j, y in enumerate(right):
                        if y:
                            acc[pos + j] += x * y
                pos += width
        levels.append(Tensor(k, d, tuple(acc)))
    return TruncatedSignature(d, K, tuple(levels))


def pwl_signature(path: Path, max_level: int) -> TruncatedSignature:
    """Signature of a piecewise linear path via a left fold of Chen products."""
    sig = TruncatedSignature.trivial(path.dim, max_level)
    for u in path.increments:
        sig = chen_concat(sig, segment_signature(u, max_level))
    return sig


def iterated_integral_entry(path: Path, word: Word) -> Fraction:
    """One signature entry computed directly as an iterated integral.

    Works piece by piece: on each linear piece the r-fold inner integral is a
    polynomial in the local time, integrated exactly over Q. Deliberately
    independent of Chen's identity (and slower), so it can serve as an oracle.
    """
    for letter in word.letters:
        if not 1 <= letter <= path.dim:
            raise ValueError(f"letter {letter} out of range 1..{path.dim}")
    k = len(word)
    if k == 0:
        return Fraction(1)
    # boundary[r] is the value of the r-fold integral at the current junction
    boundary = [Fraction(1)] + [Fraction(0)] * k
    for u in path.increments:
        polys: list[list[Fraction]] = [[Fraction(1)]]
        for r in range(1, k + 1):
            speed = u[word.letters[r - 1] - 1]
            prev = polys[r - 1]
            poly = [boundary[r]] + [speed * c / (i + 1) for i, c in enumerate(prev)]
            polys.append(poly)
        boundary = [sum(poly, Fraction(0)) for poly in polys]
    return boundary[k]


def time_series_to_path(samples: Sequence[Sequence]) -> Path:
    """Consecutive differences of the samples; the base point is irrelevant
    because signatures are translation invariant."""
    pts = [as_vector(s) for s in samples]
    if len(pts) < 2:
        raise ValueError("need at least 2 samples")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("samples must share a dimension")
    incs = tuple(tuple(b - a for a, b in zip(p, q)) for p, q in zip(pts, pts[1:]))
    return Path(d, incs)
