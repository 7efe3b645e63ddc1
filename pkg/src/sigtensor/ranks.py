"""Explicit low-rank decompositions of signature-type tensors, rank bound
formulas, flattening and Koszul lower bounds, and rank certificates.

The central object is the weighted sum

    S_{k,a}(v_1, ..., v_m) = sum over a_1+...+a_m = k of
        v_1^(x)a_1 (x) ... (x) v_m^(x)a_m / ((a_1+a)! a_2! ... a_m!)

which at a = 0 is exactly the level-k signature of the piecewise linear path
with increments v_1, ..., v_m. The decomposition constructors reproduce the
groupings that pair consecutive monomials into elementary tensors; the extra
weight a on the first factor is what makes the constructions compose under
the recursion

    S_{k,a} = v_1 (x) S_{k-1,a+1}(v_1..v_m) + S_{k,0}(v_2..v_m) / a!.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, factorial
from typing import Iterable, Sequence

from .linalg import Vector, as_fraction, as_vector, matrix_rank
from .tensors import Tensor, flatten, koszul_flatten, tensor_product

TermList = list[tuple[Fraction, list[Vector]]]


@dataclass(frozen=True)
class Decomposition:
    """A list of weighted elementary tensors; its length certifies a rank
    upper bound for the tensor it realizes."""

    dim: int
    order: int
    terms: tuple[tuple[Fraction, tuple[Vector, ...]], ...]

    def __post_init__(self):
        for coeff, factors in self.terms:
            if len(factors) != self.order:
                raise ValueError("every term needs one factor per mode")
            if any(len(v) != self.dim for v in factors):
                raise ValueError("factor vector has wrong dimension")

    @staticmethod
    def of(dim: int, order: int, terms: Iterable[tuple]) -> "Decomposition":
        """Build from (coeff, factors) pairs, dropping identically-zero terms."""
        cleaned = []
        for coeff, factors in terms:
            c = as_fraction(coeff)
            vecs = tuple(as_vector(v) for v in factors)
            if c == 0 or any(all(x == 0 for x in v) for v in vecs):
                continue
            cleaned.append((c, vecs))
        return Decomposition(dim, order, tuple(cleaned))

    @property
    def length(self) -> int:
        return sum(1 for c, _ in self.terms if c != 0)

    def realize(self) -> Tensor:
        total = Tensor.zeros(self.order, self.dim)
        for coeff, factors in self.terms:
            total = total + Tensor.elementary(factors, self.dim).scale(coeff)
        return total


@dataclass(frozen=True)
class RankCertificate:
    lower: int
    upper: int
    witness: Decomposition | None
    status: str  # "exact" when lower == upper, else "bounded"

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.status == "exact" and (self.witness is None or self.witness.length != self.upper):
            raise ValueError("exact status requires a witness of matching length")


def _vectors(vs: Sequence[Sequence]) -> list[Vector]:
    vecs = [as_vector(v) for v in vs]
    if not vecs:
        raise ValueError("need at least one vector")
    d = len(vecs[0])
    if any(len(v) != d for v in vecs):
        raise ValueError("vectors must share a dimension")
    return vecs


def _vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def _vec_add(*vectors: Vector) -> Vector:
    return tuple(sum(col) for col in zip(*vectors))


def s_k_alpha(vs: Sequence[Sequence], k: int, alpha: int) -> Tensor:
    """The defining sum, evaluated densely by depth-first accumulation over
    compositions of k (shared prefixes keep the cost polynomial)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    vecs = _vectors(vs)
    m = len(vecs)
    d = len(vecs[0])
    powers = []
    for v in vecs:
        pv = [Tensor.scalar(1, d)]
        for _ in range(k):
            pv.append(tensor_product(pv[-1], Tensor.from_vector(v)))
        powers.append(pv)
    total = Tensor.zeros(k, d)

    def weight(i: int, a: int) -> Fraction:
        return Fraction(1, factorial(a + alpha) if i == 0 else factorial(a))

    def rec(i: int, partial: Tensor, coeff: Fraction):
        nonlocal total
        used = partial.order
        if i == m - 1:
            a = k - used
            term = tensor_product(partial, powers[i][a])
            total = total + term.scale(coeff * weight(i, a))
            return
        for a in range(0, k - used + 1):
            rec(i + 1, tensor_product(partial, powers[i][a]), coeff * weight(i, a))

    rec(0, Tensor.scalar(1, d), Fraction(1))
    return total


def decompose_two_segments(u: Sequence, v: Sequence, k: int, alpha: int = 0) -> Decomposition:
    """Pair consecutive binomial terms of S_{k,alpha}(u, v) so that the
    length is ceil((k+1)/2); at alpha = 0 this realizes the level-k
    signature of the two-segment path exactly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    uu, vv = _vectors([u, v])
    d = len(uu)
    terms: TermList = []
    if k % 2 == 0:
        terms.append((Fraction(1, factorial(alpha) * factorial(k)), [vv] * k))
        js = range(1, k, 2)
    else:
        js = range(0, k, 2)
    for j in js:
        coeff = Fraction(1, factorial(j + alpha) * factorial(k - j - 1))
        mixed = _vec_add(_vec_scale(Fraction(1, j + 1 + alpha), uu), _vec_scale(Fraction(1, k - j), vv))
        terms.append((coeff, [uu] * j + [mixed] + [vv] * (k - j - 1)))
    return Decomposition.of(d, k, terms)


def decompose_three_segments(u: Sequence, v: Sequence, w: Sequence, k: int, alpha: int = 0) -> Decomposition:
    """Group the trinomial terms of S_{k,alpha}(u, v, w) into at most
    ceil((k+1)^2/4) elementary tensors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    uu, vv, ww = _vectors([u, v, w])
    d = len(uu)
    beta = Fraction(1, factorial(alpha))
    terms: TermList = []
    if k % 2 == 1:
        s = (k - 1) // 2
        for i in range(0, s + 1):
            coeff = Fraction(1, factorial(2 * i + alpha) * factorial(2 * (s - i)))
            mixed = _vec_add(
                _vec_scale(Fraction(1, 2 * i + 1 + alpha), uu),
                vv,
                _vec_scale(Fraction(1, 2 * (s - i) + 1), ww),
            )
            terms.append((coeff, [uu] * (2 * i) + [mixed] + [ww] * (2 * (s - i))))
        for i in range(0, s):
            for j in range(1, 2 * (s - i)):
                coeff = Fraction(1, factorial(j + alpha) * factorial(2 * (s - i) - j) * factorial(2 * i))
                mixed = _vec_add(
                    _vec_scale(Fraction(1, 2 * (s - i) - j + 1), vv),
                    _vec_scale(Fraction(1, 2 * i + 1), ww),
                )
                terms.append((coeff, [uu] * j + [vv] * (2 * (s - i) - j) + [mixed] + [ww] * (2 * i)))
        for i in range(1, s + 1):
            coeff = beta * Fraction(1, factorial(2 * i) * factorial(2 * (s - i)))
            mixed = _vec_add(
                _vec_scale(Fraction(1, 2 * i + 1), vv),
                _vec_scale(Fraction(1, 2 * (s - i) + 1), ww),
            )
            terms.append((coeff, [vv] * (2 * i) + [mixed] + [ww] * (2 * (s - i))))
    else:
        s = k // 2
        for i in range(0, s):
            coeff = Fraction(1, factorial(2 * i + 1 + alpha) * factorial(2 * (s - i - 1)))
            mixed = _vec_add(
                _vec_scale(Fraction(1, 2 * i + 2 + alpha), uu),
                vv,
                _vec_scale(Fraction(1, 2 * (s - i - 1) + 1), ww),
            )
            terms.append((coeff, [uu] * (2 * i + 1) + [mixed] + [ww] * (2 * (s - i - 1))))
        for i in range(0, s - 1):
            for j in range(1, 2 * (s - i) - 1):
                coeff = Fraction(1, factorial(j + alpha) * factorial(2 * (s - i) - j - 1) * factorial(2 * i))
                mixed = _vec_add(
                    _vec_scale(Fraction(1, 2 * (s - i) - j), vv),
                    _vec_scale(Fraction(1, 2 * i + 1), ww),
                )
                terms.append((coeff, [uu] * j + [vv] * (2 * (s - i) - j - 1) + [mixed] + [ww] * (2 * i)))
        for i in range(0, s):
            coeff = beta * Fraction(1, factorial(2 * i + 1) * factorial(2 * (s - i - 1)))
            mixed = _vec_add(
                _vec_scale(Fraction(1, 2 * i + 2), vv),
                _vec_scale(Fraction(1, 2 * (s - i) - 1), ww),
            )
            terms.append((coeff, [vv] * (2 * i + 1) + [mixed] + [ww] * (2 * (s - i - 1))))
        terms.append((beta * Fraction(1, factorial(k)), [ww] * k))
    return Decomposition.of(d, k, terms)


def decompose_second_level(vs: Sequence[Sequence], alpha: int = 0) -> Decomposition:
    """Row-by-row grouping of S_{2,alpha}: term i covers every monomial
    v_i (x) v_j with j >= i, so the length is at most m."""
    vecs = _vectors(vs)
    d = len(vecs[0])
    m = len(vecs)
    terms: TermList = []
    for i in range(m):
        if i == 0:
            coeff = Fraction(1, factorial(1 + alpha))
            head = _vec_scale(Fraction(1, 2 + alpha), vecs[0])
        else:
            coeff = Fraction(1, factorial(alpha))
            head = _vec_scale(Fraction(1, 2), vecs[i])
        mixed = _vec_add(head, *(vecs[j] for j in range(i + 1, m)))
        terms.append((coeff, [vecs[i], mixed]))
    return Decomposition.of(d, 2, terms)


def decompose_s3_alpha(vs: Sequence[Sequence], alpha: int = 0) -> Decomposition:
    """The 2m-2 term grouping of S_{3,alpha}(v_1, ..., v_m), split at
    s = ceil(m/2): squares of early vectors lead, squares of late vectors
    trail, and mixed middles cover the rest."""
    vecs = _vectors(vs)
    m = len(vecs)
    if m < 2:
        raise ValueError("need at least two vectors")
    d = len(vecs[0])
    s = ceil(m / 2)
    beta = Fraction(1, factorial(alpha))
    gamma1 = Fraction(1, alpha + 1)
    terms: TermList = []
    v = vecs  # 0-based: v[0] is the alpha-weighted first vector

    def span(lo: int, hi: int, head: Vector | None = None) -> Vector:
        parts = ([head] if head is not None else []) + [v[j] for j in range(lo, hi)]
        if not parts:
            return tuple(Fraction(0) for _ in range(d))
        return _vec_add(*parts)

    # leading squares: v1^(x)2 covers every monomial with v1 twice
    mixed = span(1, m, head=_vec_scale(Fraction(1, 3 + alpha), v[0]))
    terms.append((Fraction(1, factorial(2 + alpha)), [v[0], v[0], mixed]))
    # squares of v_i for 2 <= i <= s
    for i in range(1, s):
        mixed = span(i + 1, m, head=_vec_scale(Fraction(1, 3), v[i]))
        terms.append((beta * Fraction(1, 2), [v[i], v[i], mixed]))
    # middles at position i for 2 <= i <= s
    for i in range(1, s):
        left = span(1, i, head=_vec_scale(gamma1, v[0]))
        right = span(i + 1, m, head=_vec_scale(Fraction(1, 2), v[i]))
        terms.append((beta, [left, v[i], right]))
    # trailing squares: v_i^(x)2 for s+1 <= i <= m
    for i in range(s, m):
        left = span(1, i, head=_vec_scale(gamma1, v[0]))
        left = _vec_add(left, _vec_scale(Fraction(1, 3), v[i]))
        terms.append((beta * Fraction(1, 2), [left, v[i], v[i]]))
    # middles at position i for s+1 <= i <= m-1
    for i in range(s, m - 1):
        left = span(1, i, head=_vec_scale(gamma1, v[0]))
        left = _vec_add(left, _vec_scale(Fraction(1, 2), v[i]))
        right = span(i + 1, m)
        terms.append((beta, [left, v[i], right]))
    return Decomposition.of(d, 3, terms)


def decompose_s_k_alpha(vs: Sequence[Sequence], k: int, alpha: int = 0) -> Decomposition:
    """Recursive construction whose length matches rank_bound_formula: strip
    v_1 into an order-(k-1) problem with weight alpha+1, and recurse on the
    tail at weight 0; bases are the closed-form groupings above."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    vecs = _vectors(vs)
    m = len(vecs)
    d = len(vecs[0])
    if m == 1:
        return Decomposition.of(d, k, [(Fraction(1, factorial(k + alpha)), [vecs[0]] * k)])
    if k == 2:
        return decompose_second_level(vecs, alpha)
    if k == 3:
        return decompose_s3_alpha(vecs, alpha)
    if m == 2:
        return decompose_two_segments(vecs[0], vecs[1], k, alpha)
    if m == 3:
        return decompose_three_segments(vecs[0], vecs[1], vecs[2], k, alpha)
    stripped = decompose_s_k_alpha(vecs, k - 1, alpha + 1)
    tail = decompose_s_k_alpha(vecs[1:], k, 0)
    beta = Fraction(1, factorial(alpha))
    terms = [(coeff, [vecs[0]] + list(factors)) for coeff, factors in stripped.terms]
    terms += [(beta * coeff, list(factors)) for coeff, factors in tail.terms]
    return Decomposition.of(d, k, terms)


def rank_bound_formula(k: int, m: int) -> int:
    """Certified upper bound for the rank of S_{k,alpha} on m vectors.

    Closed forms for m <= 3 and k <= 2; otherwise the binomial sum whose
    value equals the term count of decompose_s_k_alpha. For fixed k the
    bound grows like 2 m^(k-2) / (k-2)!.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    if m == 1 or k == 1:
        return 1
    if k == 2:
        return m
    if m == 2:
        return ceil((k + 1) / 2)
    if m == 3:
        return ceil((k + 1) ** 2 / 4)
    if k == 3:
        return 2 * m - 2
    total = sum(comb(m + j - 4, j) * ceil((k - j + 1) ** 2 / 4) for j in range(0, k - 3))
    total += 2 * comb(m + k - 6, k - 2) + 4 * comb(m + k - 7, k - 3)
    return total


def flattening_lower_bound(t: Tensor) -> int:
    """Max matrix rank over index bipartitions; a lower bound for the rank.

    All bipartitions (up to complement) are scanned through order 7. Beyond
    that only the odd/even split and the contiguous prefixes are used, which
    keeps the scan linear in the order.
    """
    if t.order < 2:
        raise ValueError("flattening needs order >= 2")
    k = t.order
    if k <= 7:
        subsets = []
        rest = list(range(2, k + 1))
        for mask in range(2 ** len(rest)):
            chosen = [1] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
            if len(chosen) < k:
                subsets.append(tuple(chosen))
        subsets.sort()
    else:
        subsets = [tuple(range(1, k + 1, 2))]
        subsets += [tuple(range(1, j + 1)) for j in range(1, k)]
        subsets = sorted(set(subsets))
    best = 0
    for rows in subsets:
        best = max(best, flatten(t, rows).rank)
    return best


def koszul_lower_bound(t: Tensor) -> int:
    """Koszul bound for order-3 tensors: max over pivots of
    ceil(rank(F) / (d - 1))."""
    if t.order != 3:
        raise ValueError("the Koszul bound needs an order-3 tensor")
    d = t.dim
    if d == 1:
        return 0
    best = 0
    for pivot in (1, 2, 3):
        r = matrix_rank(koszul_flatten(t, pivot))
        best = max(best, -(-r // (d - 1)))
    return best


def certify_rank(t: Tensor, upper_witness: Decomposition) -> RankCertificate:
    """Combine the flattening (and, at order 3, Koszul) lower bound with the
    witness length. Status "exact" means the two meet."""
    if upper_witness.realize() != t:
        raise ValueError("invalid witness: decomposition does not realize the tensor")
    if t.order >= 2:
        lower = flattening_lower_bound(t)
        if t.order == 3:
            lower = max(lower, koszul_lower_bound(t))
    else:
        lower = 0 if t.is_zero else 1
    upper = upper_witness.length
    status = "exact" if lower == upper else "bounded"
    return RankCertificate(lower, upper, upper_witness, status)


def hyperdet_222(t: Tensor) -> Fraction:
    """Cayley's 2x2x2 hyperdeterminant."""
    if t.order != 3 or t.dim != 2:
        raise ValueError("hyperdeterminant needs a 2x2x2 tensor")

    def e(i, j, k):
        return t[(i + 1, j + 1, k + 1)]

    d1 = e(0, 0, 0) * e(1, 1, 1)
    d2 = e(0, 0, 1) * e(1, 1, 0)
    d3 = e(0, 1, 0) * e(1, 0, 1)
    d4 = e(0, 1, 1) * e(1, 0, 0)
    square = d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4
    cross = d1 * d2 + d1 * d3 + d1 * d4 + d2 * d3 + d2 * d4 + d3 * d4
    quad = e(0, 0, 0) * e(0, 1, 1) * e(1, 0, 1) * e(1, 1, 0) + e(0, 0, 1) * e(0, 1, 0) * e(1, 0, 0) * e(1, 1, 1)
    return square - 2 * cross + 4 * quad


def classify_222_complex_rank(t: Tensor) -> int:
    """Complex rank of a 2x2x2 tensor: 0, 1, 2, or 3.

    Rank 3 happens exactly when the hyperdeterminant vanishes while all
    three flattenings have rank 2. Real rank is not computed here.
    """
    if t.order != 3 or t.dim != 2:
        raise ValueError("classification needs a 2x2x2 tensor")
    if t.is_zero:
        return 0
    ranks = [flatten(t, (mode,)).rank for mode in (1, 2, 3)]
    if all(r <= 1 for r in ranks):
        return 1
    if all(r == 2 for r in ranks) and hyperdet_222(t) == 0:
        return 3
    return 2
