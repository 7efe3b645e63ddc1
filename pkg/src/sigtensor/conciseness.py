"""Mode subspaces, symmetric conciseness, and hyperplane recovery.

A tensor lies in W^(x)k exactly when every mode subspace (the span of its
mode fibers) is contained in W, so the minimal such W is the span of all
mode subspaces. For signatures this detects whether the underlying path is
confined to an affine subspace: the recovered direction space is certified
up to the truncation level only.
"""

from __future__ import annotations

from .linalg import Subspace
from .signatures import TruncatedSignature
from .tensors import Tensor


def mode_subspaces(t: Tensor) -> list[Subspace]:
    """For each mode, the span of the mode fibers in Q^d (the row space of
    the fibers-as-rows unfolding). The tensor is concise iff all are full."""
    if t.order < 1:
        raise ValueError("mode subspaces need order >= 1")
    d = t.dim
    out = []
    for mode in range(1, t.order + 1):
        stride = d ** (t.order - mode)
        block = stride * d
        fibers = []
        for base in range(0, len(t.entries), block):
            for off in range(stride):
                fiber = [t.entries[base + i * stride + off] for i in range(d)]
                if any(fiber):
                    fibers.append(fiber)
        out.append(Subspace.span(fibers, d))
    return out


def is_concise(t: Tensor) -> bool:
    return all(w.is_full for w in mode_subspaces(t))


def symmetric_conciseness(t: Tensor) -> Subspace:
    """The minimal W with t in W^(x)k: the span of the union of the mode
    subspaces. t is symmetrically concise iff this is all of Q^d."""
    spaces = mode_subspaces(t)
    total = Subspace.zero(t.dim)
    for w in spaces:
        total = total + w
    return total


def tensor_in_power(t: Tensor, w: Subspace) -> bool:
    """Whether t lies in w^(x)k."""
    if t.dim != w.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if t.order == 0:
        return True
    return w.contains_subspace(symmetric_conciseness(t))


def hyperplane_recovery(s: TruncatedSignature) -> Subspace | None:
    """The span W of the symmetric-conciseness spaces of levels 1..K.

    Returns W when it is proper, None when full. For signatures of paths a
    proper W certifies, up to the truncation level, that the path stays in
    an affine subspace parallel to W; W may have any dimension, not just
    d - 1, and its dim field says which.
    """
    if s.max_level < 2:
        raise ValueError("recovery needs truncation level >= 2")
    total = Subspace.zero(s.dim)
    for k in range(1, s.max_level + 1):
        total = total + symmetric_conciseness(s.level(k))
    return None if total.is_full else total


def divisor_propagation_check(s: TruncatedSignature, k: int, w: Subspace) -> bool:
    """Given that level k lies in w^(x)k, check that level t lies in w^(x)t
    for every divisor t of k. Holds for every tensor sequence satisfying the
    shuffle identity; the hypothesis is enforced, the conclusion reported."""
    if not 1 <= k <= s.max_level:
        raise ValueError("k outside 1..K")
    if not tensor_in_power(s.level(k), w):
        raise ValueError("hypothesis not met: level k does not lie in the given power")
    divisors = [t for t in range(1, k + 1) if k % t == 0]
    return all(tensor_in_power(s.level(t), w) for t in divisors)
