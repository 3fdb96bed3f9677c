"""Identities used to tell module families apart.

* :func:`binomial_vanishing`, the finite-difference identity behind every
  collapse of the omega operators;
* :func:`non_local_finiteness_witness`, independent iterates of ``d_{n+1}``;
* the modules ``N(M, beta) = M (x) C[t, 1/t]`` built from an ``a_k``-module
  ``M`` and a non-constant Laurent polynomial ``beta``, with their omega
  operators.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Dict, List, Mapping, NamedTuple, Tuple

from ..core.linalg import exact_rank
from ..core.rational import Q, RationalLike, parse_rational
from ..enveloping import ShiftModule, VirPlusModule
from ..tensor import TensorElement, TensorSpec, omega
from ..vectors import LinComb


def binomial_vanishing(r: int, j: int) -> Q:
    """``sum_{i=0}^{r} (-1)**(r-i) C(r, i) i**j``; zero exactly when ``j < r``."""
    if r < 0 or j < 0:
        raise ValueError("r and j must be non-negative")
    return Q(sum((-1) ** (r - i) * comb(r, i) * i ** j for i in range(r + 1)))


class RankDeficiencyError(ArithmeticError):
    def __init__(self, rank: int, count: int):
        super().__init__(f"iterates span only {rank} of {count} dimensions")
        self.rank = rank
        self.count = count


class NonLocalFinitenessWitness(NamedTuple):
    generator: int
    iterates: List[TensorElement]
    rank: int


def non_local_finiteness_witness(spec: TensorSpec, n: int, count: int) -> NonLocalFinitenessWitness:
    """``d_{n+1}**j`` applied to the vacuum for ``j = 1..count``, checked independent."""
    if n < 1:
        raise ValueError("n must be positive")
    if count < 1:
        raise ValueError("count must be positive")
    x = spec.vacuum()
    iterates = []
    for _ in range(count):
        x = spec.act(n + 1, x)
        iterates.append(x)
    rank = exact_rank(iterates)
    if rank != count:
        raise RankDeficiencyError(rank, count)
    return NonLocalFinitenessWitness(n + 1, iterates, rank)


# N(M, beta) -----------------------------------------------------------------


class NMElement(LinComb):
    """Combination of ``b (x) t**n`` keyed by ``(basis index of M, n)``."""


def _laurent(beta: Mapping[int, RationalLike]) -> Dict[int, Q]:
    out = {int(e): parse_rational(c) for e, c in beta.items()}
    return {e: c for e, c in out.items() if c}


class NMBetaModule:
    """``N(M, beta)`` with
    ``d_m (v (x) t**n) = (n + sum_{i=0}^{k} m**(i+1)/(i+1)! dbar_i) v (x) t**(n+m) + v (x) beta t**(n+m)``
    and ``c`` acting by zero.
    """

    def __init__(self, module: VirPlusModule, beta: Mapping[int, RationalLike], check_indices: int = 6):
        beta = _laurent(beta)
        if not any(e != 0 for e in beta):
            raise ValueError("beta must be a non-constant Laurent polynomial")
        violation = module.find_bracket_violation(module.sample_indices(check_indices))
        if violation is not None:
            raise violation
        self.module = module
        self.k = module.k
        self.beta = beta

    def act_basis(self, m: int, b: int, n: int) -> NMElement:
        out = NMElement()
        if n:
            out.add_term((b, n + m), Q(n))
        for i in range(self.k + 1):
            scale = Q(m ** (i + 1), factorial(i + 1))
            if scale:
                for b2, c in self.module.act(i, b).items():
                    out.add_term((b2, n + m), scale * c)
        for e, c in self.beta.items():
            out.add_term((b, n + m + e), c)
        return out

    def act(self, m: int, x: Mapping[Tuple[int, int], Q]) -> NMElement:
        out = NMElement()
        for (b, n), c in x.items():
            out.add_scaled(self.act_basis(m, b, n), c)
        return out

    def omega(self, s: int, l: int, m: int, x: Mapping[Tuple[int, int], Q]) -> NMElement:
        return omega(s, l, m, NMElement(x), self.act, NMElement())

    def dbar_top_squared(self, x: Mapping[Tuple[int, int], Q], shift: int = 0) -> NMElement:
        """``(dbar_k**2 w) (x) t**(i + shift)`` for ``x = sum w (x) t**i``."""
        out = NMElement()
        for (b, n), c in x.items():
            once = self.module.act(self.k, b)
            for b1, c1 in once.items():
                for b2, c2 in self.module.act(self.k, b1).items():
                    out.add_term((b2, n + shift), c * c1 * c2)
        return out


def bundled_module(offset: RationalLike = Q(1, 3)) -> ShiftModule:
    """The ``a_1``-module used in the tests: ``dbar_1`` shifts, ``dbar_0`` is diagonal."""
    return ShiftModule(1, offset)


def nm_beta_action(k: int, module: VirPlusModule, beta: Mapping[int, RationalLike], m: int,
                   x: Mapping[Tuple[int, int], Q]) -> NMElement:
    if module.k != k:
        raise ValueError(f"module data is for a_{module.k}, not a_{k}")
    return NMBetaModule(module, beta).act(m, x)


def nm_top_omega_coefficient(k: int, stated: bool = True) -> Q:
    """Scalar ``c`` in ``omega^{(2k+2)}_{l,m}(w t**i) = c (dbar_k**2 w) t**(i+l)``.

    ``stated=True`` gives the published ``(2k+2)! (-1)**(k+1)``; ``stated=False``
    gives ``(2k+2)! / ((k+1)!)**2 (-1)**(k+1)``, which is what expanding the
    action above produces.
    """
    sign = (-1) ** (k + 1)
    if stated:
        return Q(factorial(2 * k + 2) * sign)
    return Q(factorial(2 * k + 2) * sign, factorial(k + 1) ** 2)
