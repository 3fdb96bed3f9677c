"""Parameter canonicalization and the isomorphism criterion.

Two modules ``(x)_i Omega(lam_i, alpha_i, h_i) (x)_j Omega(mu_j, beta_j) (x) V``
with ``deg h_i = 1`` are isomorphic exactly when ``m``, ``n`` and ``V`` agree
and the multisets ``{(lam_i, alpha_i xi_i)}`` and ``{(mu_j, beta_j)}`` agree,
``xi_i`` being the leading coefficient of ``h_i``.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from ..core.rational import Q
from ..enveloping import Induced, Verma
from ..tensor import TensorSpec

UNKNOWN = "unknown"


class CanonicalSpec(NamedTuple):
    dt_part: Tuple[Tuple[Q, Q], ...]  # sorted (lam, alpha * xi)
    d_part: Tuple[Tuple[Q, Q], ...]  # sorted (mu, beta)
    v_part: Optional[tuple]


def v_descriptor(v) -> Optional[tuple]:
    if v is None:
        return None
    if isinstance(v, Verma):
        return ("verma", v.theta, v.h)
    if isinstance(v, Induced):
        return ("induced", v.theta, v.module)
    raise TypeError(f"unsupported V factor {type(v).__name__}")


def _dt_pairs(spec: TensorSpec) -> List[Tuple[Q, Q]]:
    pairs = []
    for i, fac in enumerate(spec.dt_factors):
        if fac.degree != 1:
            raise ValueError(f"factor {i + 1} has deg h = {fac.degree}; canonical form needs deg h = 1")
        pairs.append((fac.lam, fac.alpha * fac.xi))
    return pairs


def canonicalize(spec: TensorSpec) -> CanonicalSpec:
    d_pairs = [(fac.mu, fac.beta) for fac in spec.d_factors]
    return CanonicalSpec(tuple(sorted(_dt_pairs(spec))), tuple(sorted(d_pairs)), v_descriptor(spec.v_factor))


class IsomorphismVerdict(NamedTuple):
    isomorphic: Union[bool, str]  # True, False or "unknown"
    witness: Optional[Dict[str, Tuple[int, ...]]]  # factor i of a -> factor witness[...][i] of b
    reason: str


def _match(xs: List[tuple], ys: List[tuple]) -> Optional[Tuple[int, ...]]:
    used = [False] * len(ys)
    perm = []
    for x in xs:
        for j, y in enumerate(ys):
            if not used[j] and x == y:
                used[j] = True
                perm.append(j)
                break
        else:
            return None
    return tuple(perm)


def _check_valid(spec: TensorSpec, name: str) -> None:
    if not spec.distinct:
        raise ValueError(f"spec {name} does not have pairwise distinct lambda and mu")
    for fac in spec.dt_factors:
        if fac.alpha == 0:
            raise ValueError(f"spec {name} has alpha = 0")
    for fac in spec.d_factors:
        if fac.beta == 0:
            raise ValueError(f"spec {name} has beta = 0")


def specs_isomorphic(a: TensorSpec, b: TensorSpec) -> IsomorphismVerdict:
    _check_valid(a, "a")
    _check_valid(b, "b")
    if (a.m, a.n) != (b.m, b.n):
        return IsomorphismVerdict(False, None, f"shapes differ: (m, n) = {(a.m, a.n)} vs {(b.m, b.n)}")
    dt_perm = _match(_dt_pairs(a), _dt_pairs(b))
    if dt_perm is None:
        return IsomorphismVerdict(False, None, "multisets of (lambda, alpha*xi) differ")
    d_perm = _match([(f.mu, f.beta) for f in a.d_factors], [(f.mu, f.beta) for f in b.d_factors])
    if d_perm is None:
        return IsomorphismVerdict(False, None, "multisets of (mu, beta) differ")
    witness = {"dt": dt_perm, "d": d_perm}
    va, vb = v_descriptor(a.v_factor), v_descriptor(b.v_factor)
    if va == vb:
        return IsomorphismVerdict(True, witness, "all parameters match")
    if va is None or vb is None or va[0] != vb[0]:
        return IsomorphismVerdict(False, None, "V factors are of different kinds")
    if va[0] == "verma":
        return IsomorphismVerdict(False, None, "Verma parameters (theta, h) differ")
    if va[1] != vb[1]:
        return IsomorphismVerdict(False, None, "central charges of the V factors differ")
    return IsomorphismVerdict(UNKNOWN, witness, "induced V factors with different presentations")


class Distinguishability(NamedTuple):
    distinguishable: bool
    witness: Dict[str, int]


def distinguish_pure_omega(a: TensorSpec, b: TensorSpec) -> Distinguishability:
    """Separate a module with ``m >= 1`` from one with only Omega(mu, beta) factors.

    The verdict is structural: as ``C[d_0]``-modules the first carries ``m``
    polynomial variables ``t_i`` that the second lacks.
    """
    if a.m < 1:
        raise ValueError("the first spec needs at least one Omega(lam, alpha, h) factor")
    if b.m != 0:
        raise ValueError("the second spec must consist of Omega(mu, beta) factors and V only")
    return Distinguishability(True, {"t_variables_a": a.m, "t_variables_b": b.m})
