"""PBW straightening, Verma modules and modules induced from Vir_+-modules.

A PBW monomial ``d_{-a_1} d_{-a_2} ... d_{-a_n} w`` with ``a_1 <= ... <= a_n``
is stored as the ascending tuple ``(a_1, ..., a_n)`` plus a tail: ``None``
for the highest-weight vector of a Verma module, or a basis index of the
Vir_+-module N for an induced module.  Any generator is pushed through the
word with the bracket ``[d_i, d_j] = (j - i) d_{i+j} + delta_{i,-j} (i**3-i)/12 c``
(the central element acting by theta) until it reaches the tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from .core.linalg import exact_rank, nullspace
from .core.rational import Q, RationalLike, parse_rational
from .vectors import LinComb


class PBWMonomial(NamedTuple):
    parts: Tuple[int, ...] = ()
    tail: Optional[int] = None

    @classmethod
    def from_exponents(cls, exponents: Mapping[int, int] | List[int], tail: Optional[int] = None) -> "PBWMonomial":
        """Build from ``{j: k_j}`` (or a list ``[k_1, k_2, ...]``) for ``d_{-1}^{k_1} d_{-2}^{k_2} ...``."""
        if not isinstance(exponents, Mapping):
            exponents = {j + 1: k for j, k in enumerate(exponents)}
        parts: List[int] = []
        for j in sorted(exponents):
            k = exponents[j]
            if j < 1 or k < 0:
                raise ValueError(f"bad PBW exponent {j}: {k}")
            parts.extend([j] * k)
        return cls(tuple(parts), tail)

    @property
    def exponents(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for a in self.parts:
            out[a] = out.get(a, 0) + 1
        return out

    def exponent_list(self) -> List[int]:
        """``[k_1, k_2, ..., k_n]`` without trailing zeros."""
        if not self.parts:
            return []
        exps = self.exponents
        return [exps.get(j, 0) for j in range(1, max(self.parts) + 1)]

    @property
    def level(self) -> int:
        return sum(self.parts)


HIGHEST = PBWMonomial((), None)


class PBWVector(LinComb):
    """Rational combination of :class:`PBWMonomial`."""

    def max_level(self) -> int:
        return max((m.level for m in self), default=0)


def partitions(n: int, smallest: int = 1) -> Iterator[Tuple[int, ...]]:
    """Partitions of ``n`` into parts ``>= smallest``, as ascending tuples."""
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def verma_basis(level: int, tail: Optional[int] = None) -> List[PBWMonomial]:
    return [PBWMonomial(p, tail) for p in partitions(level)]


# --------------------------------------------------------------------------
# Vir_+ modules (the N of an induced module, or the M of N(M, beta))


class BracketViolation(ValueError):
    def __init__(self, i: int, j: int, b: int, difference: Mapping[int, Q]):
        super().__init__(f"bracket fails for d_{i}, d_{j} on basis vector {b}: defect {dict(difference)}")
        self.i, self.j, self.b = i, j, b
        self.difference = difference


class VirPlusModule:
    """A module over Vir_+ on which every d_i with i > k acts by zero.

    Subclasses implement :meth:`act_basis`.  ``basis_size`` is None for
    infinite families given by a rule.
    """

    k: int
    basis_size: Optional[int]

    def act_basis(self, i: int, b: int) -> Dict[int, Q]:
        raise NotImplementedError

    def act(self, i: int, b: int) -> Dict[int, Q]:
        if i < 0:
            raise ValueError("Vir_+ has no negative generators")
        if i > self.k:
            return {}
        return self.act_basis(i, b)

    def apply(self, i: int, vec: Mapping[int, Q]) -> LinComb:
        out = LinComb()
        for b, c in vec.items():
            out.add_scaled(self.act(i, b), c)
        return out

    def find_bracket_violation(self, indices) -> Optional[BracketViolation]:
        """First ``(i, j, b)`` where ``d_i d_j b - d_j d_i b != (j - i) d_{i+j} b``."""
        for b in indices:
            e = {b: Q(1)}
            for i in range(self.k + 1):
                for j in range(i + 1, self.k + 1):
                    lhs = self.apply(i, self.apply(j, e)) - self.apply(j, self.apply(i, e))
                    rhs = self.apply(i + j, e) * (j - i)
                    diff = lhs - rhs
                    if diff:
                        return BracketViolation(i, j, b, diff)
        return None

    def sample_indices(self, count: int) -> range:
        n = count if self.basis_size is None else min(count, self.basis_size)
        return range(n)


class TableModule(VirPlusModule):
    """Finite-dimensional N given by an explicit action table.

    ``table[i][b]`` is a ``{b': coeff}`` dict for generator ``d_i`` on basis
    vector ``b``; missing entries act by zero.
    """

    def __init__(self, k: int, basis_size: int, table: Mapping[int, Mapping[int, Mapping[int, RationalLike]]]):
        if k < 0 or basis_size < 1:
            raise ValueError("need k >= 0 and a nonempty basis")
        self.k = k
        self.basis_size = basis_size
        clean: Dict[int, Dict[int, Dict[int, Q]]] = {}
        for i, rows in table.items():
            i = int(i)
            if not 0 <= i <= k:
                raise ValueError(f"generator d_{i} outside 0..{k} in action table")
            for b, image in rows.items():
                b = int(b)
                if not 0 <= b < basis_size:
                    raise ValueError(f"basis index {b} out of range")
                img = {}
                for b2, c in image.items():
                    b2 = int(b2)
                    if not 0 <= b2 < basis_size:
                        raise ValueError(f"basis index {b2} out of range")
                    c = parse_rational(c)
                    if c:
                        img[b2] = c
                clean.setdefault(i, {})[b] = img
        self.table = clean

    def act_basis(self, i: int, b: int) -> Dict[int, Q]:
        if not 0 <= b < self.basis_size:
            raise IndexError(b)
        return self.table.get(i, {}).get(b, {})

    def __eq__(self, other):
        return isinstance(other, TableModule) and (self.k, self.basis_size, self.table) == (
            other.k, other.basis_size, other.table)

    def __hash__(self):
        return hash((self.k, self.basis_size, repr(sorted(self.table.items()))))

    def describe(self) -> dict:
        return {"kind": "table", "k": self.k, "basis_size": self.basis_size,
                "table": {str(i): {str(b): {str(b2): str(c) for b2, c in img.items()} for b, img in rows.items()}
                          for i, rows in sorted(self.table.items())}}


class ShiftModule(VirPlusModule):
    """Infinite family ``b_0, b_1, ...`` with ``d_k b_n = b_{n+1}`` and
    ``d_0 b_n = (offset + k n) b_n``; the generators strictly between 0 and k
    act by zero.  This is a Vir_+-module only for ``k`` in {1, 2}.
    """

    basis_size = None

    def __init__(self, k: int, offset: RationalLike = 0):
        if k not in (1, 2):
            raise ValueError("the shift family satisfies the bracket only for k = 1 or 2")
        self.k = k
        self.offset = parse_rational(offset)

    def act_basis(self, i: int, b: int) -> Dict[int, Q]:
        if b < 0:
            raise IndexError(b)
        if i == 0:
            c = self.offset + self.k * b
            return {b: c} if c else {}
        if i == self.k:
            return {b + 1: Q(1)}
        return {}

    def __eq__(self, other):
        return isinstance(other, ShiftModule) and (self.k, self.offset) == (other.k, other.offset)

    def __hash__(self):
        return hash(("shift", self.k, self.offset))

    def describe(self) -> dict:
        return {"kind": "shift", "k": self.k, "offset": str(self.offset)}


# --------------------------------------------------------------------------
# the V factor


class VFactor:
    """Common straightening machinery; subclasses define the tail action."""

    theta: Q

    def tail_action(self, i: int, tail: Optional[int]) -> Dict[PBWMonomial, Q]:
        raise NotImplementedError

    def _tail_bound(self) -> int:
        raise NotImplementedError

    def apply(self, i: int, mono: PBWMonomial) -> Dict[PBWMonomial, Q]:
        """``d_i`` applied to one PBW monomial, as a normal-ordered combination."""
        key = (i, mono)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        parts, tail = mono
        if not parts:
            if i < 0:
                out = {PBWMonomial((-i,), tail): Q(1)}
            else:
                out = self.tail_action(i, tail)
        elif i < 0 and -i <= parts[0]:
            out = {PBWMonomial((-i,) + parts, tail): Q(1)}
        else:
            a = parts[0]
            rest = PBWMonomial(parts[1:], tail)
            acc = LinComb()
            # d_i d_{-a} rest = d_{-a} (d_i rest) + [d_i, d_{-a}] rest
            for m2, c2 in self.apply(i, rest).items():
                acc.add_scaled(self.apply(-a, m2), c2)
            if -a - i:
                acc.add_scaled(self.apply(i - a, rest), Q(-a - i))
            if i == a and self.theta:
                acc.add_term(rest, self.theta * Q(i ** 3 - i, 12))
            out = dict(acc)
        self._apply_cache[key] = out
        return out

    def act(self, i: int, vec: Mapping[PBWMonomial, Q]) -> PBWVector:
        out = PBWVector()
        for mono, c in vec.items():
            out.add_scaled(self.apply(i, mono), c)
        return out

    def act_central(self, vec: Mapping[PBWMonomial, Q]) -> PBWVector:
        return PBWVector(vec) * self.theta

    def local_bound(self, vec: Mapping[PBWMonomial, Q]) -> int:
        """An integer K with ``d_k v = 0`` for every ``k > K``."""
        return max((m.level for m in vec), default=0) + self._tail_bound()

    def basis(self, level: int) -> List[PBWMonomial]:
        raise NotImplementedError

    def base_monomial(self) -> PBWMonomial:
        """The generating vector with empty PBW word."""
        raise NotImplementedError

    def basis_up_to(self, level: int) -> List[PBWMonomial]:
        return [m for L in range(level + 1) for m in self.basis(L)]


@dataclass(frozen=True, eq=False)
class Verma(VFactor):
    """Verma module with central charge theta and highest weight h."""

    theta: Q
    h: Q
    _apply_cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", parse_rational(self.theta))
        object.__setattr__(self, "h", parse_rational(self.h))

    def __eq__(self, other):
        return isinstance(other, Verma) and (self.theta, self.h) == (other.theta, other.h)

    def __hash__(self):
        return hash(("verma", self.theta, self.h))

    def tail_action(self, i: int, tail: Optional[int]) -> Dict[PBWMonomial, Q]:
        if i > 0:
            return {}
        return {HIGHEST: self.h} if self.h else {}

    def _tail_bound(self) -> int:
        return 0

    def basis(self, level: int) -> List[PBWMonomial]:
        return verma_basis(level)

    def base_monomial(self) -> PBWMonomial:
        return HIGHEST

    def vacuum(self) -> PBWVector:
        return PBWVector({HIGHEST: 1})

    def describe(self) -> dict:
        return {"type": "verma", "theta": str(self.theta), "h": str(self.h)}


@dataclass(frozen=True, eq=False)
class Induced(VFactor):
    """Ind_theta(N) for a Vir_+-module N killed by every d_i with i > k."""

    theta: Q
    module: VirPlusModule
    _apply_cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", parse_rational(self.theta))

    @property
    def k(self) -> int:
        return self.module.k

    def __eq__(self, other):
        return isinstance(other, Induced) and self.theta == other.theta and self.module == other.module

    def __hash__(self):
        return hash(("induced", self.theta, self.module))

    def tail_action(self, i: int, tail: Optional[int]) -> Dict[PBWMonomial, Q]:
        return {PBWMonomial((), b): c for b, c in self.module.act(i, tail).items()}

    def _tail_bound(self) -> int:
        return self.module.k

    def basis(self, level: int, n_tails: int = 1) -> List[PBWMonomial]:
        return [PBWMonomial(p, b) for p in partitions(level) for b in self.module.sample_indices(n_tails)]

    def base_monomial(self) -> PBWMonomial:
        return PBWMonomial((), 0)

    def describe(self) -> dict:
        return {"type": "induced", "theta": str(self.theta), "module": self.module.describe()}


def straighten_apply(i: int, v: Mapping[PBWMonomial, Q], spec: VFactor) -> PBWVector:
    return spec.act(i, v)


def local_bound(v: Mapping[PBWMonomial, Q], spec: VFactor) -> int:
    return spec.local_bound(v)


@dataclass
class ConditionsReport:
    """Outcome of checking the induced-module hypotheses on a truncation."""

    k: int
    truncation: int
    acts_by_zero_above_k: bool
    injective_on_truncation: bool
    kernel_witness: Optional[Dict[int, Q]] = None

    @property
    def ok(self) -> bool:
        return self.acts_by_zero_above_k and self.injective_on_truncation


def check_conditions_ab(spec: Induced, truncation: int) -> ConditionsReport:
    """Check that d_k is injective on the first ``truncation`` basis vectors of N.

    Vanishing of d_i for i > k holds by construction.  This is a certificate
    about the truncation only, not a proof of injectivity on all of N.
    Raises :class:`BracketViolation` if the action table is not a Vir_+-module.
    """
    module = spec.module
    indices = module.sample_indices(truncation)
    violation = module.find_bracket_violation(indices)
    if violation is not None:
        raise violation
    images = [module.act(module.k, b) for b in indices]
    rank = exact_rank(images)
    if rank == len(indices):
        return ConditionsReport(module.k, len(indices), True, True)
    rows = sorted({b2 for img in images for b2 in img})
    matrix = [[img.get(r, Q(0)) for img in images] for r in rows] if rows else [[Q(0)] * len(images)]
    kernel = nullspace(matrix)[0]
    witness = {b: c for b, c in zip(indices, kernel) if c}
    return ConditionsReport(module.k, len(indices), True, False, witness)
