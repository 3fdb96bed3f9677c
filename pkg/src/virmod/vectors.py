"""Finite formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Tuple, TypeVar
from .core.rational import Q

T = TypeVar("T", bound="LinComb")


class LinComb(dict):
    """A dict ``basis element -> nonzero Q`` with vector-space operations.

    The canonical form never stores zero coefficients, so ``==`` is plain
    dict equality and the zero vector is the empty dict.
    """

    def __init__(self, terms: Mapping[Hashable, object] | Iterable[Tuple[Hashable, object]] = ()):
        super().__init__()
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            self.add_term(key, Q(c))

    def add_term(self, key: Hashable, coeff: Q) -> None:
        if not coeff:
            return
        v = self.get(key, 0) + coeff
        if v:
            self[key] = v
        else:
            del self[key]

    def add_scaled(self, other: Mapping[Hashable, Q], scale: Q = Q(1)) -> None:
        """In-place ``self += scale * other``."""
        if not scale:
            return
        get = self.get
        if scale == 1:
            for key, c in other.items():
                v = get(key, 0) + c
                if v:
                    self[key] = v
                else:
                    del self[key]
            return
        for key, c in other.items():
            v = get(key, 0) + scale * c
            if v:
                self[key] = v
            else:
                del self[key]

    def copy(self: T) -> T:
        out = type(self)()
        dict.update(out, self)
        return out

    def __add__(self: T, other: Mapping) -> T:
        out = self.copy()
        out.add_scaled(other)
        return out

    def __sub__(self: T, other: Mapping) -> T:
        out = self.copy()
        out.add_scaled(other, Q(-1))
        return out

    def __neg__(self: T) -> T:
        out = type(self)()
        dict.update(out, {k: -c for k, c in self.items()})
        return out

    def __mul__(self: T, scalar) -> T:
        scalar = Q(scalar)
        out = type(self)()
        if scalar:
            dict.update(out, {k: c * scalar for k, c in self.items()})
        return out

    __rmul__ = __mul__

    def __repr__(self) -> str:
        inner = ", ".join(f"{k!r}: {c}" for k, c in self.items())
        return f"{type(self).__name__}({{{inner}}})"

    def __hash__(self):  # mutable mapping
        raise TypeError(f"unhashable type: {type(self).__name__}")
