"""Free Lie elements, log-signatures, and the exp/log correspondence.

Level k of a log-signature lives in Lie^k(V), the degree-k part of the free
Lie algebra inside the tensor algebra. Membership is decided by the
Dynkin-Specht-Wever criterion: the left-to-right bracketing operator fixes
Lie^k up to the factor k. The exponential of a log-signature is a truncated
signature; its level-k component splits over partitions of k into the
f_lambda summands, and the span of each summand is the Thrall module
W_lambda.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .signatures import TruncatedSignature
from .tensors import Tensor, tensor_product


def lie_bracket(a: Tensor, b: Tensor) -> Tensor:
    """[a, b] = a (x) b - b (x) a."""
    if a.dim != b.dim:
        raise ValueError("tensor dimension mismatch")
    return tensor_product(a, b) - tensor_product(b, a)


def dynkin_map(t: Tensor) -> Tensor:
    """Left-to-right bracketing: e_{i1} (x) ... (x) e_{ik} goes to
    [...[[e_{i1}, e_{i2}], e_{i3}], ..., e_{ik}], extended linearly.

    Computed by the recursion D_k = [D_{k-1} on the first k-1 modes, last
    mode], which runs in O(k d^k) instead of expanding 2^(k-1) terms.
    """
    if t.order == 0:
        raise ValueError("the bracketing operator needs order >= 1")
    if t.order == 1:
        return t
    d = t.dim
    # slice_j = t[..., j]: apply D on each slice, then bracket with e_j
    size = d ** (t.order - 1)
    out = Tensor.zeros(t.order, d)
    for j in range(1, d + 1):
        slice_entries = t.entries[j - 1 :: d]
        assert len(slice_entries) == size
        inner = dynkin_map(Tensor(t.order - 1, d, tuple(slice_entries)))
        if inner.is_zero:
            continue
        e_j = Tensor.basis_vector(d, j)
        out = out + lie_bracket(inner, e_j)
    return out


def is_lie_element(t: Tensor) -> bool:
    """Dynkin-Specht-Wever: t is in Lie^k(V) iff D(t) == k * t."""
    if t.order == 0:
        raise ValueError("order-0 tensors are not graded Lie elements")
    return dynkin_map(t) == t.scale(t.order)


@dataclass(frozen=True)
class LogSignature:
    """Levels 1..K of a completed free Lie algebra element.

    Construction validates every level against the Dynkin criterion, since
    the structural results on signatures all assume genuine Lie levels.
    """

    dim: int
    max_level: int
    levels: tuple[Tensor, ...]

    def __post_init__(self):
        if self.max_level < 0:
            raise ValueError("max_level must be >= 0")
        if len(self.levels) != self.max_level:
            raise ValueError("need one tensor per level 1..K")
        for k, t in enumerate(self.levels, start=1):
            if t.order != k or t.dim != self.dim:
                raise ValueError(f"level {k} has wrong shape")
            if not is_lie_element(t):
                raise ValueError(f"level {k} is not a Lie element")

    def level(self, k: int) -> Tensor:
        if not 1 <= k <= self.max_level:
            raise ValueError(f"level {k} outside 1..{self.max_level}")
        return self.levels[k - 1]

    @staticmethod
    def from_levels(levels: Sequence[Tensor], dim: int) -> "LogSignature":
        return LogSignature(dim, len(levels), tuple(levels))

    @staticmethod
    def zero(dim: int, max_level: int) -> "LogSignature":
        return LogSignature(dim, max_level, tuple(Tensor.zeros(k, dim) for k in range(1, max_level + 1)))

    @property
    def is_zero(self) -> bool:
        return all(t.is_zero for t in self.levels)


def _truncated_product(a: list[Tensor], b: list[Tensor], dim: int, max_level: int) -> list[Tensor]:
    """Product of two constant-term-0 elements given as levels 1..K."""
    out = [[Fraction(0)] * dim**k for k in range(1, max_level + 1)]
    for i, left in enumerate(a, start=1):
        if left.is_zero:
            continue
        for j, right in enumerate(b, start=1):
            if i + j > max_level:
                break
            acc = out[i + j - 1]
            entries = right.entries
            width = len(entries)
            pos = 0
            for x in left.entries:
                if x:
                    for col, y in enumerate(entries):
                        if y:
                            acc[pos + col] += x * y
                pos += width
    return [Tensor(k, dim, tuple(acc)) for k, acc in enumerate(out, start=1)]


def exp_log_signature(l: LogSignature) -> TruncatedSignature:
    """Exponential series exp(T) = sum T^(x)n / n!, truncated at K.

    Level k of the result equals the sum over all compositions
    (a_1, ..., a_t) of k of T_(a_1) (x) ... (x) T_(a_t) / t!.
    """
    d, K = l.dim, l.max_level
    acc = [Tensor.zeros(k, d) for k in range(1, K + 1)]
    power = list(l.levels)
    n = 1
    while n <= K and any(not t.is_zero for t in power):
        for k in range(1, K + 1):
            acc[k - 1] = acc[k - 1] + power[k - 1].scale(Fraction(1, factorial(n)))
        power = _truncated_product(power, list(l.levels), d, K)
        n += 1
    levels = [Tensor.scalar(1, d)] + acc
    return TruncatedSignature(d, K, tuple(levels))


def log_signature(s: TruncatedSignature) -> LogSignature:
    """Truncated logarithm log(1 + N) = sum (-1)^(t+1) N^(x)t / t.

    Requires constant term 1. The result is validated level by level, so a
    group-like input (one satisfying the shuffle identity) yields a genuine
    LogSignature and anything else is rejected.
    """
    if s.constant_term != 1:
        raise ValueError("log needs constant term 1")
    d, K = s.dim, s.max_level
    nilpotent = [s.level(k) for k in range(1, K + 1)]
    acc = [Tensor.zeros(k, d) for k in range(1, K + 1)]
    power = list(nilpotent)
    for t in range(1, K + 1):
        sign = Fraction((-1) ** (t + 1), t)
        for k in range(1, K + 1):
            acc[k - 1] = acc[k - 1] + power[k - 1].scale(sign)
        if t < K:
            power = _truncated_product(power, nilpotent, d, K)
    return LogSignature(d, K, tuple(acc))


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("parts must be weakly decreasing")

    @staticmethod
    def of(*parts: int) -> "Partition":
        return Partition(tuple(sorted(parts, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    def distinct_permutations(self) -> list[tuple[int, ...]]:
        return sorted(set(itertools.permutations(self.parts)))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_of(k: int, max_part: int | None = None) -> Iterable[Partition]:
    """All partitions of k, largest part first within each partition."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield Partition(())
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            yield Partition((first,) + rest.parts)


def f_lambda(l: LogSignature, lam: Partition) -> Tensor:
    """The lambda-component of exp at level k = sum(lambda): the sum over all
    distinct orderings (a_1, ..., a_t) of lambda of T_(a_1) (x) ... (x)
    T_(a_t) / t!."""
    k = lam.total
    if k > l.max_level:
        raise ValueError(f"partition total {k} exceeds truncation {l.max_level}")
    d = l.dim
    t = len(lam.parts)
    acc = Tensor.zeros(k, d)
    coeff = Fraction(1, factorial(t))
    for ordering in lam.distinct_permutations():
        prod = Tensor.scalar(1, d)
        for part in ordering:
            factor = l.level(part)
            if factor.is_zero:
                prod = None
                break
            prod = tensor_product(prod, factor)
        if prod is not None:
            acc = acc + prod.scale(coeff)
    return acc


def thrall_forced_zero(lam: Partition, k: int) -> bool:
    """True when membership of a signature level in W_lambda forces it to be
    zero: lambda has two distinct entries and some part divides k.

    Sufficient but not necessary; e.g. (2,3,6) at k=11 has no part dividing
    11, yet contains no nonzero signature either.
    """
    if lam.total != k:
        raise ValueError(f"partition sums to {lam.total}, not {k}")
    if len(set(lam.parts)) < 2:
        return False
    return any(k % p == 0 for p in set(lam.parts))


def pure_volume_check(s: TruncatedSignature, n: int, k0: int) -> bool:
    """Decide, from level k0 up to the truncation, whether s looks like the
    signature of a pure n-volume: level hn equals T^(x)h / h! for T the
    degree-n log level, every other level zero."""
    if n < 1:
        raise ValueError("n must be positive")
    if k0 <= n:
        raise ValueError("k0 must exceed n")
    if k0 > s.max_level:
        raise ValueError("k0 exceeds the truncation level")
    t_n = log_signature(s).level(n)
    d = s.dim
    for k in range(k0, s.max_level + 1):
        if k % n == 0:
            h = k // n
            expected = Tensor.scalar(1, d)
            for _ in range(h):
                expected = tensor_product(expected, t_n)
            expected = expected.scale(Fraction(1, factorial(h)))
            if s.level(k) != expected:
                return False
        elif not s.level(k).is_zero:
            return False
    return True


@lru_cache(maxsize=None)
def lyndon_words(d: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Lyndon words of length k over {1..d} by Duval's generation."""
    if k < 1:
        raise ValueError("length must be >= 1")
    out: list[tuple[int, ...]] = []
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == k and all(1 <= c <= d for c in w):
            out.append(tuple(w))
        m = len(w)
        while len(w) < k:
            w.append(w[-m])
        while w and w[-1] == d:
            w.pop()
    return tuple(sorted(out))


def lyndon_bracket(word: tuple[int, ...], d: int) -> Tensor:
    """The standard bracketing of a Lyndon word as a tensor in Lie^k.

    For |word| >= 2 the word splits as uv with v its longest proper Lyndon
    suffix, and the bracketing is [b(u), b(v)]. The resulting basis of Lie^k
    depends on this classical but non-canonical choice; it is used to build
    Lie elements, never to serialize them.
    """
    if len(word) == 1:
        return Tensor.basis_vector(d, word[0])
    for split in range(1, len(word)):
        suffix = word[split:]
        if _is_lyndon(suffix):
            return lie_bracket(lyndon_bracket(word[:split], d), lyndon_bracket(suffix, d))
    raise ValueError(f"{word} is not a Lyndon word")


def _is_lyndon(word: tuple[int, ...]) -> bool:
    return all(word < word[i:] for i in range(1, len(word)))


@lru_cache(maxsize=None)
def lie_basis(d: int, k: int) -> tuple[Tensor, ...]:
    """Bracketings of the Lyndon words of length k: a basis of Lie^k(Q^d).

    Cached: the tensors are immutable and the bracketings are costly to
    rebuild inside randomized harnesses.
    """
    return tuple(lyndon_bracket(w, d) for w in lyndon_words(d, k))
