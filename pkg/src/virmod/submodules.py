"""The filtration W_0 < W_1 < ... of Omega(lam, alpha, h) (x) Omega(lam, beta).

Both factors share the same ``lam``.  The product is written as
``C[D1, D2, t]`` in one of two ways:

* case ``"A"``: ``D1`` belongs to Omega(lam, alpha, h), ``D2`` to Omega(lam, beta);
* case ``"B"``: ``D1`` belongs to Omega(lam, beta), ``D2`` to Omega(lam, alpha, h).

``W_m`` is spanned by ``D1**l * (D1 + D2)**n * f(t)`` with ``l <= m``.  After
substituting ``D2 = u - D1`` membership becomes a degree bound in ``D1``, and
``W_m / W_{m-1}`` maps onto Omega(lam, alpha, h - m - beta) by
``D1**m u**n f -> D**n f``.

The action used here is the generic tensor action of :mod:`virmod.tensor`;
none of the closed forms for ``d_k`` on ``W_m`` are hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .core.poly import MultiPoly
from .core.rational import Q
from .omega import DT_VARS, OmegaD, OmegaDT
from .tensor import TensorElement, TensorMonomial, TensorSpec

PAIR_VARS = ("D1", "D2", "t")
U_VARS = ("D1", "u", "t")
CASES = ("A", "B")


class NotInFiltrationError(ValueError):
    def __init__(self, m: int, degree: int):
        super().__init__(f"element has D1-degree {degree} in the u-basis, so it is not in W_{m}")
        self.m = m
        self.degree = degree


@dataclass(frozen=True)
class PairModule:
    """Omega(lam, alpha, h) (x) Omega(lam, beta) presented as ``C[D1, D2, t]``."""

    dt_factor: OmegaDT
    d_factor: OmegaD
    case: str = "A"

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"case must be one of {CASES}, got {self.case!r}")
        if self.dt_factor.lam != self.d_factor.mu:
            raise ValueError("both factors must share the same lambda")

    @property
    def tensor(self) -> TensorSpec:
        return TensorSpec((self.dt_factor,), (self.d_factor,), None)

    @property
    def beta(self) -> Q:
        return self.d_factor.beta

    def to_tensor(self, f: MultiPoly) -> TensorElement:
        if f.variables != PAIR_VARS:
            raise ValueError(f"expected a polynomial in {PAIR_VARS}")
        out = TensorElement()
        for (a, b, p), c in f.terms.items():
            r_dt, r_d = (a, b) if self.case == "A" else (b, a)
            out.add_term(TensorMonomial((r_dt, r_d), (p,), None), c)
        return out

    def from_tensor(self, f: Dict[TensorMonomial, Q]) -> MultiPoly:
        terms: Dict[Tuple[int, int, int], Q] = {}
        for mono, c in f.items():
            r_dt, r_d = mono.r
            key = (r_dt, r_d, mono.p[0]) if self.case == "A" else (r_d, r_dt, mono.p[0])
            terms[key] = terms.get(key, 0) + c
        return MultiPoly(PAIR_VARS, terms)

    def act(self, k: int, f: MultiPoly) -> MultiPoly:
        return self.from_tensor(self.tensor.act(k, self.to_tensor(f)))

    def target_module(self, m: int) -> OmegaDT:
        """Omega(lam, alpha, h - m - beta), the claimed image of ``W_m / W_{m-1}``."""
        return OmegaDT(self.dt_factor.lam, self.dt_factor.alpha, self.dt_factor.h - (m + self.beta))


def from_u_basis(g: MultiPoly) -> MultiPoly:
    """Inverse of :func:`to_u_basis`: substitute ``u = D1 + D2``."""
    if g.variables != U_VARS:
        raise ValueError(f"expected a polynomial in {U_VARS}")
    g = g.with_variables(("D1", "u", "D2", "t"))
    u = MultiPoly.var(("D1", "u", "D2", "t"), "D1") + MultiPoly.var(("D1", "u", "D2", "t"), "D2")
    return g.substitute("u", u).with_variables(PAIR_VARS)


def to_u_basis(f: MultiPoly) -> MultiPoly:
    """Rewrite ``f(D1, D2, t)`` in the variables ``(D1, u, t)`` with ``u = D1 + D2``."""
    if f.variables != PAIR_VARS:
        raise ValueError(f"expected a polynomial in {PAIR_VARS}")
    wide = ("D1", "u", "D2", "t")
    g = f.with_variables(wide)
    d2 = MultiPoly.var(wide, "u") - MultiPoly.var(wide, "D1")
    return g.substitute("D2", d2).with_variables(U_VARS)


def wm_member(f: MultiPoly, m: int) -> bool:
    """True iff ``f`` lies in ``W_m``.  ``W_{-1}`` is the zero space."""
    return to_u_basis(f).degree("D1") <= m


def wm_element(l: int, n: int, p: int) -> MultiPoly:
    """The spanning element ``D1**l (D1 + D2)**n t**p`` of ``W_l``."""
    return from_u_basis(MultiPoly.monomial(U_VARS, (l, n, p)))


def quotient_phi(f: MultiPoly, m: int) -> MultiPoly:
    """Image of ``f + W_{m-1}`` in Omega(lam, alpha, h - m - beta) over ``(D, t)``.

    Terms of D1-degree below ``m`` are dropped; ``D1**m u**n t**p`` goes to
    ``D**n t**p``.
    """
    g = to_u_basis(f)
    if g.degree("D1") > m:
        raise NotInFiltrationError(m, g.degree("D1"))
    terms = {(n, p): c for (a, n, p), c in g.terms.items() if a == m}
    return MultiPoly(DT_VARS, terms)
