"""The rank invariant ``R_f = rank {d_k f : k > K}`` for large ``K``."""

from __future__ import annotations

from typing import Dict, NamedTuple, Optional, Tuple

from ..core.linalg import exact_rank
from ..core.rational import Q
from ..tensor import TensorMonomial, TensorSpec, extraction_layout


class RankReport(NamedTuple):
    value: int
    window: Tuple[int, int]  # (K, number of samples); samples are k = K+1 .. K+count
    stabilized: bool


def sampled_rank(f: Dict[TensorMonomial, Q], spec: TensorSpec, start: int, count: int) -> int:
    return exact_rank(spec.act(k, f) for k in range(start, start + count))


def rank_invariant(f: Dict[TensorMonomial, Q], spec: TensorSpec, K: Optional[int] = None,
                   extra: int = 2) -> RankReport:
    """Exact rank of ``d_k f`` over a window of ``k`` beyond the local bound.

    The window length is the number of ``k**s base**k`` functions that can
    occur in ``d_k f``, so the sampled span equals the span of all large-k
    images.  ``stabilized`` records that shifting the window by one and
    lengthening it by ``extra`` samples both leave the rank unchanged.
    """
    if not f:
        raise ValueError("the rank invariant is defined for nonzero elements only")
    if not spec.distinct:
        raise ValueError("the rank invariant needs pairwise distinct lambda and mu")
    bound = spec.local_bound(f)
    K = bound if K is None else K
    if K < bound:
        raise ValueError(f"window start K={K} is below the local bound {bound}")
    count = sum(extraction_layout(f, spec)[1])
    value = sampled_rank(f, spec, K + 1, count)
    shifted = sampled_rank(f, spec, K + 2, count)
    longer = sampled_rank(f, spec, K + 1, count + extra)
    return RankReport(value, (K, count), value == shifted == longer)
