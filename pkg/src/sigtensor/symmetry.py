"""Symmetry classifiers for tensors and the structural consequences that
partial symmetry has for signatures.

Partial symmetry here always means invariance under permuting the first k-1
or the last k-1 indices; other index blocks behave differently for
signatures and are rejected rather than silently accepted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .lie import LogSignature, exp_log_signature, lie_bracket
from .linalg import as_fraction
from .tensors import Tensor

MultiIndex = tuple[int, ...]


def _swap_adjacent(index: MultiIndex, pos: int) -> MultiIndex:
    # pos is 0-based; swaps entries pos and pos+1
    return index[:pos] + (index[pos + 1], index[pos]) + index[pos + 2 :]


def _transposition_violation(t: Tensor, positions: range, sign: int) -> tuple[MultiIndex, MultiIndex] | None:
    """First index pair violating t[swap(I)] == sign * t[I] over adjacent
    transpositions at the given 0-based positions."""
    for pos in positions:
        for index in t.indices():
            if index[pos] >= index[pos + 1]:
                continue  # each unordered pair once; equal letters are trivial for sign +1
            swapped = _swap_adjacent(index, pos)
            if t[swapped] != sign * t[index]:
                return (index, swapped)
        if sign == -1:
            for index in t.indices():
                if index[pos] == index[pos + 1] and t[index] != 0:
                    return (index, index)
    return None


@dataclass(frozen=True)
class SymmetryReport:
    is_symmetric: bool
    is_skew: bool
    partial: frozenset[str]  # subset of {"first_k_minus_1", "last_k_minus_1"}
    witness: tuple[MultiIndex, MultiIndex] | None


def symmetry_report(t: Tensor) -> SymmetryReport:
    """Exact membership tests against Sym^k, Lambda^k, and the two partial
    blocks. Adjacent transpositions generate each group, so they suffice.

    The witness is the first violating entry pair of the first failing flag,
    scanning flags in the order symmetric, skew, first block, last block.
    """
    if t.order < 2:
        raise ValueError("symmetry needs order >= 2")
    k = t.order
    sym_w = _transposition_violation(t, range(k - 1), +1)
    skew_w = _transposition_violation(t, range(k - 1), -1)
    first_w = _transposition_violation(t, range(k - 2), +1)
    last_w = _transposition_violation(t, range(1, k - 1), +1)
    partial = set()
    if first_w is None:
        partial.add("first_k_minus_1")
    if last_w is None:
        partial.add("last_k_minus_1")
    witness = None
    for w in (sym_w, skew_w, first_w, last_w):
        if w is not None:
            witness = w
            break
    return SymmetryReport(
        is_symmetric=sym_w is None,
        is_skew=skew_w is None,
        partial=frozenset(partial),
        witness=witness,
    )


def is_symmetric(t: Tensor) -> bool:
    return _transposition_violation(t, range(t.order - 1), +1) is None


def is_skew(t: Tensor) -> bool:
    return _transposition_violation(t, range(t.order - 1), -1) is None


def brute_force_symmetric(t: Tensor) -> bool:
    """Invariance under all k! permutations; test oracle for small k."""
    k = t.order
    for perm in itertools.permutations(range(k)):
        for index in t.indices():
            if t[tuple(index[p] for p in perm)] != t[index]:
                return False
    return True


@dataclass(frozen=True)
class Sig222Params:
    """Coordinates of a 2x2x2 signature tensor: (x, y) is the degree-1 log
    level, a the area coordinate, (b, c) the two degree-3 Lie coordinates."""

    x: Fraction
    y: Fraction
    a: Fraction
    b: Fraction
    c: Fraction

    @staticmethod
    def of(x, y, a, b, c) -> "Sig222Params":
        return Sig222Params(*(as_fraction(v) for v in (x, y, a, b, c)))

    def log_signature(self) -> LogSignature:
        e1 = Tensor.basis_vector(2, 1)
        e2 = Tensor.basis_vector(2, 2)
        t1 = Tensor.from_vector((self.x, self.y))
        t2 = lie_bracket(e1, e2).scale(self.a)
        t3 = lie_bracket(e1, lie_bracket(e1, e2)).scale(self.b) + lie_bracket(lie_bracket(e1, e2), e2).scale(self.c)
        return LogSignature.from_levels([t1, t2, t3], 2)


def sig222_from_params(p: Sig222Params) -> Tensor:
    """The 2x2x2 signature tensor with the given log coordinates, written
    out entrywise (level 3 of the exponential)."""
    x, y, a, b, c = p.x, p.y, p.a, p.b, p.c
    entries = {
        (1, 1, 1): x**3 / 6,
        (1, 1, 2): x**2 * y / 6 + a * x / 2 + b,
        (1, 2, 1): x**2 * y / 6 - 2 * b,
        (1, 2, 2): x * y**2 / 6 + a * y / 2 + c,
        (2, 1, 1): x**2 * y / 6 - a * x / 2 + b,
        (2, 1, 2): x * y**2 / 6 - 2 * c,
        (2, 2, 1): x * y**2 / 6 - a * y / 2 + c,
        (2, 2, 2): y**3 / 6,
    }
    t = Tensor.zeros(3, 2)
    flat = list(t.entries)
    for idx, val in entries.items():
        flat[t.offset(idx)] = val
    return Tensor(3, 2, tuple(flat))


def partial_symmetry_constraint(p: Sig222Params, side: str) -> bool:
    """Closed-form condition for a 2x2x2 signature tensor to be partially
    symmetric: ax = 6b and ay = -6c for the first block, ax = -6b and
    ay = 6c for the last."""
    if side == "first":
        return p.a * p.x == 6 * p.b and p.a * p.y == -6 * p.c
    if side == "last":
        return p.a * p.x == -6 * p.b and p.a * p.y == 6 * p.c
    raise ValueError("side must be 'first' or 'last'")


@dataclass(frozen=True)
class PartialSymmetryConsequences:
    applies: bool  # level k nonzero and partially symmetric
    passed: bool
    violated_clause: str | None


def verify_partial_symmetry_consequences(l: LogSignature, k: int) -> PartialSymmetryConsequences:
    """Check the structural consequences of a nonzero partially symmetric
    exponential level at k >= 4: the degree-1 level is nonzero, log levels
    2..k/2 vanish, and every exponential level 2..k is fully symmetric.

    Vacuous (applies=False, passed=True) when level k is zero or carries no
    partial flag. Any failure would indicate an implementation bug.
    """
    if k < 4:
        raise ValueError("the consequences are empty for k < 4")
    if k > l.max_level:
        raise ValueError("k exceeds the truncation level")
    sig = exp_log_signature(l)
    level_k = sig.level(k)
    if level_k.is_zero:
        return PartialSymmetryConsequences(False, True, None)
    report = symmetry_report(level_k)
    if not report.partial:
        return PartialSymmetryConsequences(False, True, None)
    if l.level(1).is_zero:
        return PartialSymmetryConsequences(True, False, "degree-1 log level is zero")
    for i in range(2, k // 2 + 1):
        if not l.level(i).is_zero:
            return PartialSymmetryConsequences(True, False, f"log level {i} is nonzero")
    for i in range(2, k + 1):
        if not is_symmetric(sig.level(i)):
            return PartialSymmetryConsequences(True, False, f"exp level {i} is not symmetric")
    return PartialSymmetryConsequences(True, True, None)


def skew_impossibility_check(l: LogSignature, k: int) -> bool:
    """True when the level-k exponential is either not skew or zero. Skew
    signature levels cannot exist for k >= 3, so this is a theorem harness
    expected to always return True."""
    if k < 3:
        raise ValueError("k must be >= 3; order 2 admits skew signatures")
    if k > l.max_level:
        raise ValueError("k exceeds the truncation level")
    level = exp_log_signature(l).level(k)
    return level.is_zero or not is_skew(level)
