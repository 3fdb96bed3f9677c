"""Irreducibility certificates for tensor modules with pairwise distinct bases.

Starting from any nonzero ``f`` the certificate records a chain of elements of
the submodule generated by ``f``:

1. *reduction*: top-power components strip every D-exponent, then the
   power-two component of each t-slot differentiates in ``t``, until a
   vacuum vector ``1 (x) ... (x) 1 (x) v`` remains;
2. *regeneration*: positive generators push ``v`` down to the highest weight
   vector, negative ones build every V-level up to ``L``, and
   power-zero/power-one components raise the D- and t-exponents up to ``D``.

Each recorded step is an action ``d_k``, one extracted component, or a linear
combination of earlier steps, so :meth:`IrreducibilityCertificate.replay`
recomputes everything from module operations alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from ..core.linalg import exact_rank
from ..core.rational import Q
from ..enveloping import HIGHEST, PBWMonomial, Verma
from ..tensor import TensorElement, TensorMonomial, TensorSpec, component

Combination = Tuple[Tuple[int, Q], ...]


class Step(NamedTuple):
    kind: str  # "input", "act", "component" or "combine"
    args: tuple
    result: TensorElement


class SpanEntry(NamedTuple):
    monomial: TensorMonomial
    combination: Combination  # monomial = sum coeff * steps[index].result


class CertificationError(RuntimeError):
    """The procedure got stuck; ``element`` is where it stopped."""

    def __init__(self, message: str, element=None):
        super().__init__(message)
        self.element = element


class HypothesisError(ValueError):
    pass


class ReplayError(AssertionError):
    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


@dataclass
class IrreducibilityCertificate:
    trace: List[Step]
    generation: List[Step]
    spanning: List[SpanEntry]
    bound: int
    level: int

    @property
    def steps(self) -> List[Step]:
        return self.trace + self.generation

    @property
    def vacuum(self) -> TensorElement:
        return self.trace[-1].result

    def replay(self, spec: TensorSpec, f: Optional[Dict[TensorMonomial, Q]] = None) -> bool:
        """Recompute every step exactly; raise :class:`ReplayError` on the first mismatch."""
        steps = self.steps
        for idx, step in enumerate(steps):
            if step.kind == "input":
                if idx != 0:
                    raise ReplayError(idx, "input step not at the start")
                if f is not None and TensorElement(f) != step.result:
                    raise ReplayError(idx, "input differs from the given element")
                if not step.result:
                    raise ReplayError(idx, "input is zero")
                continue
            if any(src >= idx for src in _sources(step)):
                raise ReplayError(idx, "refers to a later step")
            if step.kind == "act":
                k, src = step.args
                value = spec.act(k, steps[src].result)
            elif step.kind == "component":
                src, slot, power = step.args
                value = component(steps[src].result, spec, slot, power)
            elif step.kind == "combine":
                value = _combine(steps, step.args[0])
            else:
                raise ReplayError(idx, f"unknown step kind {step.kind!r}")
            if value != step.result:
                raise ReplayError(idx, f"{step.kind} does not reproduce the recorded element")
        vac = self.vacuum
        if not vac or any(any(mono.r) or any(mono.p) for mono in vac):
            raise ReplayError(len(self.trace) - 1, "trace does not end at a nonzero vacuum vector")
        for entry in self.spanning:
            if _combine(steps, entry.combination) != TensorElement({entry.monomial: 1}):
                raise ReplayError(len(steps), f"spanning combination for {entry.monomial} is wrong")
        missing = set(target_monomials(spec, self.bound, self.level)) - {e.monomial for e in self.spanning}
        if missing:
            raise ReplayError(len(steps), f"{len(missing)} target monomials are not covered")
        return True


def _sources(step: Step) -> List[int]:
    if step.kind == "act":
        return [step.args[1]]
    if step.kind == "component":
        return [step.args[0]]
    if step.kind == "combine":
        return [src for src, _ in step.args[0]]
    return []


def _combine(steps: Sequence[Step], combination: Combination) -> TensorElement:
    out = TensorElement()
    for src, c in combination:
        out.add_scaled(steps[src].result, c)
    return out


def target_monomials(spec: TensorSpec, bound: int, level: int) -> List[TensorMonomial]:
    """Every monomial with all exponents ``<= bound`` and V-level ``<= level``."""
    vs = [None] if spec.v_factor is None else spec.v_factor.basis_up_to(level)
    out = []
    for r in itertools.product(range(bound + 1), repeat=spec.m + spec.n):
        for p in itertools.product(range(bound + 1), repeat=spec.m):
            for v in vs:
                out.append(TensorMonomial(r, p, v))
    return out


class _Span:
    """Fully reduced echelon form that remembers how each row was built from steps."""

    def __init__(self):
        self.rows: Dict[Hashable, Tuple[Dict, Dict[int, Q]]] = {}

    def _reduce(self, vec: Dict, combo: Dict[int, Q]) -> Tuple[Dict, Dict[int, Q]]:
        vec, combo = dict(vec), dict(combo)
        for pivot in [p for p in vec if p in self.rows]:
            c = vec.get(pivot)
            if not c:
                continue
            rv, rc = self.rows[pivot]
            for key, x in rv.items():
                y = vec.get(key, 0) - c * x
                if y:
                    vec[key] = y
                else:
                    vec.pop(key, None)
            for key, x in rc.items():
                y = combo.get(key, 0) - c * x
                if y:
                    combo[key] = y
                else:
                    combo.pop(key, None)
        return vec, combo

    def add(self, index: int, vec: Dict) -> bool:
        vec, combo = self._reduce(vec, {index: Q(1)})
        if not vec:
            return False
        pivot = min(vec, key=repr)
        inv = 1 / vec[pivot]
        vec = {k: x * inv for k, x in vec.items()}
        combo = {k: x * inv for k, x in combo.items()}
        for p, (rv, rc) in self.rows.items():
            c = rv.get(pivot)
            if c:
                for key, x in vec.items():
                    y = rv.get(key, 0) - c * x
                    if y:
                        rv[key] = y
                    else:
                        rv.pop(key, None)
                for key, x in combo.items():
                    y = rc.get(key, 0) - c * x
                    if y:
                        rc[key] = y
                    else:
                        rc.pop(key, None)
        self.rows[pivot] = (vec, combo)
        return True

    def express(self, vec: Dict) -> Optional[Combination]:
        """Coefficients writing ``vec`` through recorded steps, or None if outside the span."""
        residual, combo = self._reduce(vec, {})
        if residual:
            return None
        return tuple(sorted((k, -c) for k, c in combo.items()))


@dataclass
class _Builder:
    spec: TensorSpec
    steps: List[Step] = field(default_factory=list)

    def _add(self, kind: str, args: tuple, result: TensorElement) -> int:
        self.steps.append(Step(kind, args, result))
        return len(self.steps) - 1

    def value(self, idx: int) -> TensorElement:
        return self.steps[idx].result

    def input(self, f) -> int:
        return self._add("input", (), TensorElement(f))

    def act(self, k: int, src: int) -> int:
        return self._add("act", (k, src), self.spec.act(k, self.value(src)))

    def component(self, src: int, slot: Tuple[str, int], power: int) -> int:
        value = component(self.value(src), self.spec, slot, power)
        if not value:
            raise CertificationError(f"component {slot} at power {power} vanished", self.value(src))
        return self._add("component", (src, slot, power), value)

    def combine(self, terms: Sequence[Tuple[int, Q]]) -> int:
        terms = tuple((src, Q(c)) for src, c in terms if c)
        return self._add("combine", (terms,), _combine(self.steps, terms))


def check_hypotheses(spec: TensorSpec, level: int = 0) -> None:
    """Raise :class:`HypothesisError` unless the irreducibility hypotheses hold."""
    if not spec.distinct:
        raise HypothesisError("lambda_1..lambda_m, mu_1..mu_n must be pairwise distinct")
    for i, fac in enumerate(spec.dt_factors):
        if fac.degree != 1 or fac.alpha == 0:
            raise HypothesisError(f"Omega(lam, alpha, h) factor {i + 1} needs deg h = 1 and alpha != 0")
    for j, fac in enumerate(spec.d_factors):
        if fac.beta in (0, 1):
            raise HypothesisError(f"Omega(mu, beta) factor {j + 1} needs beta not in {{0, 1}}")
    v = spec.v_factor
    if v is None:
        return
    if not isinstance(v, Verma):
        raise HypothesisError("certification is implemented for Verma V factors only")
    for lvl in range(1, level + 1):
        images = []
        for w in v.basis(lvl):
            img = {}
            for k in (1, 2):
                for w2, c in v.apply(k, w).items():
                    img[(k, w2)] = c
            images.append(img)
        if exact_rank(images) < len(images):
            raise HypothesisError(f"the Verma module has a singular vector at level {lvl}")


def _v_part(x: TensorElement) -> Dict[PBWMonomial, Q]:
    return {mono.v: c for mono, c in x.items()}


def _reduce_to_vacuum(b: _Builder, cur: int) -> int:
    spec = b.spec
    while True:
        f = b.value(cur)
        moved = False
        for i in range(spec.m + spec.n):
            R = max(mono.r[i] for mono in f)
            if R > 0:
                if i < spec.m:
                    cur = b.component(cur, ("dt", i), R + 2)
                else:
                    cur = b.component(cur, ("d", i - spec.m), R + 1)
                moved = True
                break
        if moved:
            continue
        for i, fac in enumerate(spec.dt_factors):
            if any(mono.p[i] for mono in f):
                # component at k**2 is -alpha F(f) = -alpha xi f + alpha f'
                c2 = b.component(cur, ("dt", i), 2)
                cur = b.combine([(c2, 1 / fac.alpha), (cur, fac.xi)])
                moved = True
                break
        if not moved:
            return cur


def _raise_exponents(b: _Builder, base: int, bound: int) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int]:
    """Steps for ``D^r t^p (x) y`` with all exponents ``<= bound``, given ``1 (x) y`` at ``base``."""
    spec = b.spec
    m, n = spec.m, spec.n
    zero_r = (0,) * (m + n)
    made = {(zero_r, (0,) * m): base}
    for p in itertools.product(range(bound + 1), repeat=m):
        if not any(p):
            continue
        i = next(i for i, e in enumerate(p) if e)
        prev = p[:i] + (p[i] - 1,) + p[i + 1:]
        src = made[(zero_r, prev)]
        fac = spec.dt_factors[i]
        # component at k**1 is G(x) = xi t x + (h(alpha) - deg) x in slot i
        g = b.component(src, ("dt", i), 1)
        made[(zero_r, p)] = b.combine([(g, 1 / fac.xi), (src, -(fac.h_at_alpha - prev[i]) / fac.xi)])
    for r in itertools.product(range(bound + 1), repeat=m + n):
        if not any(r):
            continue
        s = next(s for s, e in enumerate(r) if e)
        prev = r[:s] + (r[s] - 1,) + r[s + 1:]
        slot = ("dt", s) if s < m else ("d", s - m)
        for p in itertools.product(range(bound + 1), repeat=m):
            made[(r, p)] = b.component(made[(prev, p)], slot, 0)
    return made


def _one_tensor(b: _Builder, y: int, k: int) -> int:
    """Step for ``1 (x) d_k v`` given ``1 (x) v`` at ``y``."""
    spec = b.spec
    helpers = _raise_exponents(b, y, 1)
    local = _Span()
    for idx in helpers.values():
        local.add(idx, b.value(idx))
    z = b.act(k, y)
    target = TensorElement()
    for mono, c in b.value(y).items():
        for w, c2 in spec.v_factor.apply(k, mono.v).items():
            target.add_term(TensorMonomial(mono.r, mono.p, w), c * c2)
    omega_part = b.value(z) - target
    combo = local.express(omega_part)
    if combo is None:
        raise CertificationError("the Omega-part of d_k(1 (x) v) is outside the raised span", omega_part)
    return b.combine([(z, Q(1))] + [(src, -c) for src, c in combo])


def certify_irreducible(spec: TensorSpec, f: Dict[TensorMonomial, Q], D: int, L: int) -> IrreducibilityCertificate:
    """Certificate that ``f`` generates every monomial with exponents ``<= D`` and V-level ``<= L``."""
    if not f:
        raise ValueError("f must be nonzero")
    if D < 0 or L < 0:
        raise ValueError("bounds must be non-negative")
    input_level = max((mono.v.level for mono in f if mono.v is not None), default=0)
    check_hypotheses(spec, max(L, input_level))
    if spec.v_factor is None and L:
        raise ValueError("a spec without V factor has only level 0")

    b = _Builder(spec)
    vac = _reduce_to_vacuum(b, b.input(f))
    trace = list(b.steps)

    # push v down to a multiple of the highest weight vector
    y = vac
    if spec.v_factor is not None:
        while True:
            v = _v_part(b.value(y))
            if all(w == HIGHEST for w in v):
                break
            for k in (1, 2):
                if spec.v_factor.act(k, v):
                    y = _one_tensor(b, y, k)
                    break
            else:
                raise CertificationError("v is killed by d_1 and d_2 (singular vector)", b.value(y))
        c = _v_part(b.value(y))[HIGHEST]
        if c != 1:
            y = b.combine([(y, 1 / c)])

    # 1 (x) w for w spanning V up to level L, then every exponent pattern on each
    span = _Span()
    by_level: Dict[int, List[int]] = {0: [y]}
    for lvl in range(L + 1):
        if lvl:
            by_level[lvl] = [_one_tensor(b, src, -a) for a in range(1, lvl + 1) for src in by_level[lvl - a]]
        for src in by_level[lvl]:
            for idx in _raise_exponents(b, src, D).values():
                span.add(idx, b.value(idx))

    spanning = []
    for mono in target_monomials(spec, D, L):
        combo = span.express({mono: Q(1)})
        if combo is None:
            raise CertificationError(f"monomial {mono} not reached within the bounds", mono)
        spanning.append(SpanEntry(mono, combo))
    return IrreducibilityCertificate(trace, b.steps[len(trace):], spanning, D, L)
