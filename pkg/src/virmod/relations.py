"""Checking the Virasoro relations on any module given by an action function.

``act(k, x)`` must return an object supporting ``-``, scalar ``*`` and
truthiness (zero is falsy); ``central(x)`` gives the action of ``c``.
"""

from __future__ import annotations

from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .core.rational import Q


class BracketFailure(NamedTuple):
    i: int
    j: int
    vector: object
    defect: object


def bracket_defect(act: Callable, central: Callable, x, i: int, j: int):
    """``[d_i, d_j] x - (j - i) d_{i+j} x - delta_{i,-j} (i**3 - i)/12 c x``."""
    out = act(i, act(j, x)) - act(j, act(i, x)) - act(i + j, x) * (j - i)
    if i + j == 0 and i ** 3 - i:
        out = out - central(x) * Q(i ** 3 - i, 12)
    return out


def first_bracket_failure(act: Callable, central: Callable, vectors: Iterable, indices: Sequence[int]
                          ) -> Optional[BracketFailure]:
    """Check every ordered pair from ``indices`` on every vector; None if all hold.

    Each product ``d_i d_j x`` is computed once and shared by the pairs
    ``(i, j)`` and ``(j, i)``; every pair is still tested against its own
    right-hand side.
    """
    indices = list(indices)
    for x in vectors:
        once = {j: act(j, x) for j in indices}
        twice = {}
        for i in indices:
            for j in indices:
                twice[i, j] = act(i, once[j])
        for i in indices:
            for j in indices:
                defect = twice[i, j] - twice[j, i] - act(i + j, x) * (j - i)
                if i + j == 0 and i ** 3 - i:
                    defect = defect - central(x) * Q(i ** 3 - i, 12)
                if defect:
                    return BracketFailure(i, j, x, defect)
    return None
