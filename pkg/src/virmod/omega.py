"""The polynomial Virasoro modules Omega(lam, alpha, h) and Omega(mu, beta).

Omega(lam, alpha, h) lives on C[D, t] and Omega(mu, beta) on C[D], where ``D``
stands for the derivation-like generator written as a partial in the
literature.  The Virasoro bracket used throughout the package is
``[d_i, d_j] = (j - i) d_{i+j} + delta_{i,-j} (i**3 - i)/12 c``; the central
element acts by zero on both families.

Elements are :class:`~virmod.core.MultiPoly` over the tables ``DT_VARS`` and
``D_VARS``.  Each class also exposes ``act_monomial`` returning a plain
``{exponents: coefficient}`` dict, which is what the tensor module uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, Tuple

from .core.poly import MultiPoly
from .core.rational import Q, RationalLike, parse_rational

DT_VARS = ("D", "t")
D_VARS = ("D",)
T_VARS = ("t",)

UniPoly = Dict[int, Q]


def _shift_power(k: int, i: int) -> Dict[int, Q]:
    """Coefficients of ``(D - k)**i`` as ``{power of D: coeff}``."""
    return {a: Q(comb(i, a) * (-k) ** (i - a)) for a in range(i + 1)}


def _as_t_poly(f: MultiPoly) -> UniPoly:
    if f.variables != T_VARS:
        raise ValueError(f"expected a polynomial in t, got variables {f.variables}")
    return {e[0]: c for e, c in f.terms.items()}


def _from_t_poly(terms: UniPoly) -> MultiPoly:
    return MultiPoly(T_VARS, {(p,): c for p, c in terms.items()})


@dataclass(frozen=True)
class OmegaDT:
    """Omega(lam, alpha, h) on C[D, t]."""

    lam: Q
    alpha: Q
    h: MultiPoly
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        lam = parse_rational(self.lam)
        if lam == 0:
            raise ValueError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", parse_rational(self.alpha))
        h = self.h
        if not isinstance(h, MultiPoly):
            # a coefficient list [c0, c1, ...] for c0 + c1 t + ...
            h = MultiPoly(T_VARS, {(p,): c for p, c in enumerate(h)})
        if h.variables != T_VARS:
            raise ValueError("h must be a polynomial in t")
        object.__setattr__(self, "h", h)

    @classmethod
    def linear(cls, lam: RationalLike, alpha: RationalLike, xi: RationalLike, eta: RationalLike = 0) -> "OmegaDT":
        """Omega(lam, alpha, xi*t + eta)."""
        return cls(lam, alpha, MultiPoly(T_VARS, {(1,): xi, (0,): eta}))

    @property
    def degree(self) -> int:
        return self.h.degree()

    @property
    def xi(self) -> Q:
        return self.h.coefficient((1,))

    @property
    def eta(self) -> Q:
        return self.h.coefficient((0,))

    @property
    def h_at_alpha(self) -> Q:
        return self.h.evaluate({"t": self.alpha})

    @property
    def _difference_quotient(self) -> UniPoly:
        key = "q"
        if key not in self._cache:
            q = (self.h - self.h_at_alpha).div_linear("t", self.alpha)
            self._cache[key] = _as_t_poly(q)
        return self._cache[key]

    def is_simple(self) -> bool:
        return is_simple_omega_dt(self)

    # F and G on single powers of t, cached ----------------------------------
    def _F_power(self, p: int) -> UniPoly:
        key = ("F", p)
        out = self._cache.get(key)
        if out is None:
            out = {}
            for e, c in self._difference_quotient.items():
                out[e + p] = out.get(e + p, 0) + c
            if p:
                out[p - 1] = out.get(p - 1, 0) - p
            out = {e: c for e, c in out.items() if c}
            self._cache[key] = out
        return out

    def _G_power(self, p: int) -> UniPoly:
        key = ("G", p)
        out = self._cache.get(key)
        if out is None:
            out = {p: self.h_at_alpha} if self.h_at_alpha else {}
            for e, c in self._F_power(p).items():
                out[e + 1] = out.get(e + 1, 0) + c
            out = {e: c for e, c in out.items() if c}
            self._cache[key] = out
        return out

    def F(self, f: MultiPoly) -> MultiPoly:
        return _from_t_poly(_linear_extend(self._F_power, _as_t_poly(f)))

    def G(self, f: MultiPoly) -> MultiPoly:
        return _from_t_poly(_linear_extend(self._G_power, _as_t_poly(f)))

    # the module action ---------------------------------------------------
    def act_monomial(self, k: int, r: int, p: int) -> Dict[Tuple[int, int], Q]:
        """``d_k (D**r t**p)`` as ``{(D-exponent, t-exponent): coeff}``."""
        key = ("act", k, r, p)
        out = self._cache.get(key)
        if out is not None:
            return out
        # inner = D t^p + k G(t^p) - k^2 alpha F(t^p), as {(D-exp, t-exp): c}
        inner: Dict[Tuple[int, int], Q] = {(1, p): Q(1)}
        if k:
            for e, c in self._G_power(p).items():
                inner[(0, e)] = inner.get((0, e), 0) + k * c
            if self.alpha:
                for e, c in self._F_power(p).items():
                    inner[(0, e)] = inner.get((0, e), 0) - k * k * self.alpha * c
        scale = self.lam ** k
        out = {}
        for a, c1 in _shift_power(k, r).items():
            for (b, e), c2 in inner.items():
                if c2:
                    key2 = (a + b, e)
                    out[key2] = out.get(key2, 0) + scale * c1 * c2
        out = {kk: c for kk, c in out.items() if c}
        self._cache[key] = out
        return out

    def act(self, k: int, elem: MultiPoly) -> MultiPoly:
        if elem.variables != DT_VARS:
            raise ValueError(f"expected a polynomial in {DT_VARS}")
        out: Dict[Tuple[int, int], Q] = {}
        for (r, p), c in elem.terms.items():
            for mono, c2 in self.act_monomial(k, r, p).items():
                out[mono] = out.get(mono, 0) + c * c2
        return MultiPoly(DT_VARS, out)


@dataclass(frozen=True)
class OmegaD:
    """Omega(mu, beta) on C[D]."""

    mu: Q
    beta: Q
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        mu = parse_rational(self.mu)
        if mu == 0:
            raise ValueError("mu must be nonzero")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "beta", parse_rational(self.beta))

    def is_simple(self) -> bool:
        return is_simple_omega_d(self)

    def act_monomial(self, k: int, n: int) -> Dict[int, Q]:
        """``d_k (D**n) = mu**k (D - k)**n (D - beta k)`` as ``{D-exponent: coeff}``."""
        key = (k, n)
        out = self._cache.get(key)
        if out is not None:
            return out
        scale = self.mu ** k
        out = {}
        for a, c in _shift_power(k, n).items():
            out[a + 1] = out.get(a + 1, 0) + scale * c
            if self.beta and k:
                out[a] = out.get(a, 0) - scale * c * self.beta * k
        out = {e: c for e, c in out.items() if c}
        self._cache[key] = out
        return out

    def act(self, k: int, elem: MultiPoly) -> MultiPoly:
        if elem.variables != D_VARS:
            raise ValueError(f"expected a polynomial in {D_VARS}")
        out: Dict[Tuple[int], Q] = {}
        for (n,), c in elem.terms.items():
            for e, c2 in self.act_monomial(k, n).items():
                out[(e,)] = out.get((e,), 0) + c * c2
        return MultiPoly(D_VARS, out)


def _linear_extend(on_power, f: UniPoly) -> UniPoly:
    out: UniPoly = {}
    for p, c in f.items():
        for e, c2 in on_power(p).items():
            out[e] = out.get(e, 0) + c * c2
    return {e: c for e, c in out.items() if c}


def F_op(f: MultiPoly, spec: OmegaDT) -> MultiPoly:
    """``F(f) = (h(t) - h(alpha))/(t - alpha) * f - f'``."""
    return spec.F(f)


def G_op(f: MultiPoly, spec: OmegaDT) -> MultiPoly:
    """``G(f) = h(alpha) f + t F(f)``."""
    return spec.G(f)


def act_omega_dt(k: int, elem: MultiPoly, spec: OmegaDT) -> MultiPoly:
    return spec.act(k, elem)


def act_omega_d(k: int, elem: MultiPoly, spec: OmegaD) -> MultiPoly:
    return spec.act(k, elem)


def is_simple_omega_dt(spec: OmegaDT) -> bool:
    """Omega(lam, alpha, h) is simple iff deg h = 1 and alpha != 0."""
    return spec.degree == 1 and spec.alpha != 0


def is_simple_omega_d(spec: OmegaD) -> bool:
    """Omega(mu, beta) is simple iff beta != 1."""
    return spec.beta != 1
