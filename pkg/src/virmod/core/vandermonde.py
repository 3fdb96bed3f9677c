"""Confluent Vandermonde matrices in the functions ``n**d * lam**n``.

Column ``(lam_j, d)`` evaluated on the consecutive integers
``offset, offset+1, ..., offset+s-1`` gives a square matrix whose determinant
has a closed product form.  Component extraction in the tensor module solves
against exactly this matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import List, Sequence, Tuple

from .rational import Q, RationalLike, parse_rational


@dataclass(frozen=True)
class ConfluentSpec:
    bases: Tuple[Q, ...]
    multiplicities: Tuple[int, ...]
    offset: int = 0

    def __init__(self, bases: Sequence[RationalLike], multiplicities: Sequence[int], offset: int = 0):
        bases = tuple(parse_rational(b) for b in bases)
        mults = tuple(int(s) for s in multiplicities)
        if len(bases) != len(mults):
            raise ValueError("bases and multiplicities differ in length")
        if any(b == 0 for b in bases):
            raise ValueError("bases must be nonzero")
        if len(set(bases)) != len(bases):
            raise ValueError("bases must be pairwise distinct")
        if any(s < 1 for s in mults):
            raise ValueError("multiplicities must be positive")
        if offset < 0:
            raise ValueError("offset must be non-negative")
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "multiplicities", mults)
        object.__setattr__(self, "offset", int(offset))

    @property
    def size(self) -> int:
        return sum(self.multiplicities)

    def columns(self) -> List[Tuple[Q, int]]:
        """Column labels ``(base, power of n)`` in matrix order."""
        return [(b, d) for b, s in zip(self.bases, self.multiplicities) for d in range(s)]

    def sample_points(self) -> range:
        return range(self.offset, self.offset + self.size)


def confluent_vandermonde(spec: ConfluentSpec) -> List[List[Q]]:
    cols = spec.columns()
    return [[Q(n) ** d * base ** n for base, d in cols] for n in spec.sample_points()]


def superfactorial(s: int) -> int:
    """``s! * (s-1)! * ... * 1!`` with the value 1 at ``s = 0``."""
    out = 1
    for k in range(1, s + 1):
        out *= factorial(k)
    return out


def confluent_det_formula(spec: ConfluentSpec) -> Q:
    """Closed-form determinant of :func:`confluent_vandermonde`."""
    r = spec.offset
    det = Q(1)
    for lam, s in zip(spec.bases, spec.multiplicities):
        twice = s * (s + 2 * r - 1)
        assert twice % 2 == 0
        det *= superfactorial(s - 1) * lam ** (twice // 2)
    pairs = list(zip(spec.bases, spec.multiplicities))
    for j, (lam_j, s_j) in enumerate(pairs):
        for lam_i, s_i in pairs[:j]:
            det *= (lam_j - lam_i) ** (s_i * s_j)
    return det
