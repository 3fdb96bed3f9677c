"""The tensor module  (x)_i Omega(lam_i, alpha_i, h_i) (x)_j Omega(mu_j, beta_j) (x) V.

A basis monomial is ``D_1^{r_1} t_1^{p_1} ... D_m^{r_m} t_m^{p_m} D_{m+1}^{r_{m+1}}
... D_{m+n}^{r_{m+n}} (x) w`` with ``w`` a PBW monomial of V (or absent).
The Virasoro generators act by the Leibniz rule.  For ``k`` above the local
bound of the V-parts, ``d_k f`` is an exponential polynomial in ``k`` whose
coefficients (the *components*) are recovered exactly by solving a confluent
Vandermonde system; the elementary moves are particular components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .core.linalg import SingularMatrixError, nullspace, solve_square
from .core.rational import Q
from .core.vandermonde import ConfluentSpec, confluent_vandermonde
from .enveloping import PBWMonomial, VFactor
from .omega import OmegaD, OmegaDT
from .vectors import LinComb


class TensorMonomial(NamedTuple):
    r: Tuple[int, ...]  # D-exponents of all m + n slots
    p: Tuple[int, ...]  # t-exponents of the m Omega(lam, alpha, h) slots
    v: Optional[PBWMonomial] = None


class TensorElement(LinComb):
    """Rational combination of :class:`TensorMonomial`."""

    def v_parts(self) -> Dict[PBWMonomial, Q]:
        return {mono.v: Q(1) for mono in self if mono.v is not None}


@dataclass(frozen=True, eq=False)
class TensorSpec:
    dt_factors: Tuple[OmegaDT, ...] = ()
    d_factors: Tuple[OmegaD, ...] = ()
    v_factor: Optional[VFactor] = None
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dt_factors", tuple(self.dt_factors))
        object.__setattr__(self, "d_factors", tuple(self.d_factors))
        if self.m + self.n < 1:
            raise ValueError("a tensor spec needs at least one Omega factor")

    def __eq__(self, other):
        return (isinstance(other, TensorSpec) and self.dt_factors == other.dt_factors
                and self.d_factors == other.d_factors and self.v_factor == other.v_factor)

    def __hash__(self):
        return hash((self.dt_factors, self.d_factors, self.v_factor))

    @property
    def m(self) -> int:
        return len(self.dt_factors)

    @property
    def n(self) -> int:
        return len(self.d_factors)

    @property
    def bases(self) -> Tuple[Q, ...]:
        return tuple(f.lam for f in self.dt_factors) + tuple(f.mu for f in self.d_factors)

    @property
    def distinct(self) -> bool:
        return len(set(self.bases)) == len(self.bases)

    @property
    def theta(self) -> Q:
        return self.v_factor.theta if self.v_factor is not None else Q(0)

    # element construction -------------------------------------------------
    def monomial(self, r: Sequence[int] = (), p: Sequence[int] = (), v: Optional[PBWMonomial] = None) -> TensorMonomial:
        r = tuple(r) or (0,) * (self.m + self.n)
        p = tuple(p) or (0,) * self.m
        if len(r) != self.m + self.n or len(p) != self.m:
            raise ValueError(f"exponent shape mismatch for m={self.m}, n={self.n}")
        if any(e < 0 for e in r + p):
            raise ValueError("exponents must be non-negative")
        if self.v_factor is None:
            if v is not None:
                raise ValueError("spec has no V factor")
        elif v is None:
            v = self.v_factor.base_monomial()
        return TensorMonomial(r, p, v)

    def element(self, r: Sequence[int] = (), p: Sequence[int] = (), v: Optional[PBWMonomial] = None,
                coeff=1) -> TensorElement:
        return TensorElement({self.monomial(r, p, v): coeff})

    def vacuum(self, v: Optional[PBWMonomial] = None) -> TensorElement:
        """``1 (x) ... (x) 1 (x) v``."""
        return self.element(v=v)

    # action -----------------------------------------------------------------
    def act_monomial(self, k: int, mono: TensorMonomial) -> Dict[TensorMonomial, Q]:
        key = (k, mono)
        out = self._cache.get(key)
        if out is not None:
            return out
        m = self.m
        r, p, v = mono
        acc: Dict[TensorMonomial, Q] = {}
        for i, fac in enumerate(self.dt_factors):
            for (ri, pi), c in fac.act_monomial(k, r[i], p[i]).items():
                nm = TensorMonomial(r[:i] + (ri,) + r[i + 1:], p[:i] + (pi,) + p[i + 1:], v)
                acc[nm] = acc.get(nm, 0) + c
        for j, fac in enumerate(self.d_factors):
            s = m + j
            for e, c in fac.act_monomial(k, r[s]).items():
                nm = TensorMonomial(r[:s] + (e,) + r[s + 1:], p, v)
                acc[nm] = acc.get(nm, 0) + c
        if v is not None:
            for w, c in self.v_factor.apply(k, v).items():
                nm = TensorMonomial(r, p, w)
                acc[nm] = acc.get(nm, 0) + c
        out = {key2: c for key2, c in acc.items() if c}
        self._cache[key] = out
        return out

    def act(self, k: int, f: Dict[TensorMonomial, Q]) -> TensorElement:
        out = TensorElement()
        for mono, c in f.items():
            out.add_scaled(self.act_monomial(k, mono), c)
        return out

    def act_central(self, f: Dict[TensorMonomial, Q]) -> TensorElement:
        return TensorElement(f) * self.theta

    def local_bound(self, f: Dict[TensorMonomial, Q]) -> int:
        if self.v_factor is None:
            return 0
        return self.v_factor.local_bound({mono.v: 1 for mono in f})


def act(k: int, f: Dict[TensorMonomial, Q], spec: TensorSpec) -> TensorElement:
    return spec.act(k, f)


# ordering -----------------------------------------------------------------


def order_key(mono: TensorMonomial, m: int) -> Tuple[int, ...]:
    """``(r_1..r_m, p_1..p_m, r_{m+1}..r_{m+n})``; the V-part is ignored."""
    return mono.r[:m] + mono.p + mono.r[m:]


def compare_monomials(a: TensorMonomial, b: TensorMonomial, m: int) -> int:
    ka, kb = order_key(a, m), order_key(b, m)
    return (ka > kb) - (ka < kb)


def degree(f: Dict[TensorMonomial, Q], m: int) -> Tuple[int, ...]:
    if not f:
        raise ValueError("the zero element has no degree")
    return max(order_key(mono, m) for mono in f)


# component extraction -------------------------------------------------------


class Component(NamedTuple):
    base: Q
    power: int
    slot: Tuple[str, int]  # ("dt", i) or ("d", j)
    element: TensorElement


def extraction_layout(f: Dict[TensorMonomial, Q], spec: TensorSpec) -> Tuple[List[Tuple[str, int]], List[int]]:
    """Slots and the number of powers of k each contributes (max D-exponent + 3 or + 2)."""
    slots: List[Tuple[str, int]] = []
    mults: List[int] = []
    for i in range(spec.m):
        slots.append(("dt", i))
        mults.append(max(mono.r[i] for mono in f) + 3)
    for j in range(spec.n):
        slots.append(("d", j))
        mults.append(max(mono.r[spec.m + j] for mono in f) + 2)
    return slots, mults


def _inverse_vandermonde(spec: TensorSpec, mults: Tuple[int, ...], offset: int) -> List[List[Q]]:
    key = ("vinv", mults, offset)
    inv = spec._cache.get(key)
    if inv is None:
        cs = ConfluentSpec(spec.bases, mults, offset)
        matrix = confluent_vandermonde(cs)
        size = len(matrix)
        identity = [[Q(int(a == b)) for a in range(size)] for b in range(size)]
        cols = solve_square(matrix, identity)  # cols[j] = A^{-1} e_j
        inv = [[cols[row][col] for row in range(size)] for col in range(size)]
        spec._cache[key] = inv
    return inv


def extract_components(f: Dict[TensorMonomial, Q], spec: TensorSpec, start: Optional[int] = None) -> List[Component]:
    """Every nonzero coefficient of ``k**s * base**k`` in ``d_k f`` for large k.

    ``start`` overrides the first sampled k (which must exceed the local
    bound of the V-parts of ``f``).
    """
    if not f:
        raise ValueError("cannot extract components of the zero element")
    slots, mults = extraction_layout(f, spec)
    bound = spec.local_bound(f)
    offset = bound + 1 if start is None else start
    if offset <= bound:
        raise ValueError(f"sampling must start above the local bound {bound}")
    if not spec.distinct:
        cols = [(b, d) for b, s in zip(spec.bases, mults) for d in range(s)]
        matrix = [[Q(k) ** d * b ** k for b, d in cols] for k in range(offset, offset + len(cols))]
        raise SingularMatrixError(nullspace(matrix)[0])
    inv = _inverse_vandermonde(spec, tuple(mults), offset)
    samples = [spec.act(k, f) for k in range(offset, offset + len(inv))]
    out: List[Component] = []
    col = 0
    for slot, base, s in zip(slots, spec.bases, mults):
        for power in range(s):
            comp = TensorElement()
            for row, dk in enumerate(samples):
                comp.add_scaled(dk, inv[col][row])
            if comp:
                out.append(Component(base, power, slot, comp))
            col += 1
    return out


def component(f: Dict[TensorMonomial, Q], spec: TensorSpec, slot: Tuple[str, int], power: int,
              start: Optional[int] = None) -> TensorElement:
    """The single component at ``slot`` and ``power`` (zero if absent)."""
    for comp in extract_components(f, spec, start):
        if comp.slot == tuple(slot) and comp.power == power:
            return comp.element
    return TensorElement()


def reconstruct(components: Sequence[Component], k: int) -> TensorElement:
    """``sum_s k**s base**k component``; equals ``d_k f`` for k beyond the bound."""
    out = TensorElement()
    for comp in components:
        out.add_scaled(comp.element, Q(k) ** comp.power * comp.base ** k)
    return out


# moves ----------------------------------------------------------------------

MOVES = ("raise_dt", "raise_d", "alpha_f", "g", "beta")


class MixedExponentError(ValueError):
    pass


def _slot_exponent(f: Dict[TensorMonomial, Q], pos: int) -> int:
    exps = {mono.r[pos] for mono in f}
    if len(exps) != 1:
        raise MixedExponentError(f"slot {pos + 1} carries several D-exponents {sorted(exps)}")
    return exps.pop()


def move(f: Dict[TensorMonomial, Q], which: str, index: int, spec: TensorSpec) -> TensorElement:
    """One of the five elementary moves, each a signed component of ``d_k f``.

    ``raise_dt`` / ``raise_d``: multiply slot ``index`` by its D.
    ``alpha_f``: replace ``D^r t^p`` in dt-slot ``index`` by ``alpha F(t^p)``.
    ``g``: replace ``D^r t^p`` by ``G(t^p) + r alpha D F(t^p)`` (just ``G(t^p)`` when r = 0).
    ``beta``: replace ``D^r`` in d-slot ``index`` by ``beta``.
    The last three need every term to share the slot's D-exponent.
    """
    if which == "raise_dt":
        return component(f, spec, ("dt", index), 0)
    if which == "raise_d":
        return component(f, spec, ("d", index), 0)
    if which in ("alpha_f", "g"):
        R = _slot_exponent(f, index)
        if which == "alpha_f":
            return component(f, spec, ("dt", index), R + 2) * (-1) ** (R + 1)
        return component(f, spec, ("dt", index), R + 1) * (-1) ** R
    if which == "beta":
        R = _slot_exponent(f, spec.m + index)
        return component(f, spec, ("d", index), R + 1) * (-1) ** (R + 1)
    raise ValueError(f"unknown move {which!r}; expected one of {MOVES}")


# omega operators ---------------------------------------------------------------


def omega(s: int, l: int, m: int, x, act_fn: Callable[[int, object], object], zero):
    """``sum_{i=0}^{s} C(s,i) (-1)^{s-i} d_{l-m-i} d_{m+i} x`` for any module given by ``act_fn``."""
    out = zero
    for i in range(s + 1):
        term = act_fn(l - m - i, act_fn(m + i, x))
        out = out + term * (comb(s, i) * (-1) ** (s - i))
    return out


def omega_op(s: int, l: int, m: int, f: Dict[TensorMonomial, Q], spec: TensorSpec) -> TensorElement:
    if s < 0:
        raise ValueError("s must be non-negative")
    out = TensorElement()
    for i in range(s + 1):
        out.add_scaled(spec.act(l - m - i, spec.act(m + i, f)), Q(comb(s, i) * (-1) ** (s - i)))
    return out
