"""Verification suites producing machine-readable reports.

A report is a JSON document
``{"header": {...}, "results": [{check, instance, status, witness}], "summary": {...}}``
whose bytes depend only on the spec, the suite name, the seed and the bounds.
"""

from __future__ import annotations

import itertools
import json
import random
from typing import Any, Callable, Dict, List, Optional

from .analysis.certify import CertificationError, HypothesisError, certify_irreducible, check_hypotheses
from .analysis.classify import canonicalize, specs_isomorphic
from .analysis.identities import binomial_vanishing
from .analysis.rank import rank_invariant
from .core.linalg import determinant
from .core.rational import Q, format_rational
from .core.vandermonde import ConfluentSpec, confluent_det_formula, confluent_vandermonde
from .enveloping import Verma
from .grammar import format_element
from .omega import OmegaD, OmegaDT
from .relations import first_bracket_failure
from .specfile import spec_to_dict
from .submodules import PairModule, quotient_phi, wm_element, wm_member
from .tensor import (TensorElement, TensorSpec, extract_components, extraction_layout, omega_op,
                     reconstruct)

SUITES = ("bracket", "determinant", "submodule", "quotient", "extraction", "rank", "irreducible", "omega",
          "classify-self")

DEFAULT_BOUNDS = {"degree": 2, "level": 1, "k": 3, "samples": 10, "s": 6}

Result = Dict[str, Any]


def result(check: str, instance: Dict[str, Any], status: str, witness: Any = None) -> Result:
    return {"check": check, "instance": instance, "status": status, "witness": witness}


def basis_vectors(spec: TensorSpec, degree: int, level: int) -> List[TensorElement]:
    vs = [None] if spec.v_factor is None else spec.v_factor.basis_up_to(level)
    out = []
    for r in itertools.product(range(degree + 1), repeat=spec.m + spec.n):
        for p in itertools.product(range(degree + 1), repeat=spec.m):
            for v in vs:
                out.append(spec.element(r, p, v))
    return out


def random_rational(rng: random.Random, size: int = 9, nonzero: bool = False) -> Q:
    while True:
        q = Q(rng.randint(-size, size), rng.randint(1, size))
        if q or not nonzero:
            return q


def random_element(spec: TensorSpec, rng: random.Random, degree: int, level: int, terms: int = 3) -> TensorElement:
    vs = [None] if spec.v_factor is None else spec.v_factor.basis_up_to(level)
    while True:
        out = TensorElement()
        for _ in range(terms):
            r = [rng.randint(0, degree) for _ in range(spec.m + spec.n)]
            p = [rng.randint(0, degree) for _ in range(spec.m)]
            mono = spec.monomial(r, p, rng.choice(vs))
            out.add_term(mono, random_rational(rng, nonzero=True))
        if out:
            return out


# individual suites ---------------------------------------------------------------


def suite_bracket(spec, rng, bounds) -> List[Result]:
    k = bounds["k"]
    vectors = basis_vectors(spec, bounds["degree"], bounds["level"])
    inst = {"indices": [-k, k], "degree": bounds["degree"], "level": bounds["level"], "vectors": len(vectors)}
    fail = first_bracket_failure(spec.act, spec.act_central, vectors, range(-k, k + 1))
    if fail is None:
        return [result("bracket", inst, "pass")]
    return [result("bracket", inst, "fail", {"i": fail.i, "j": fail.j, "vector": format_element(fail.vector, spec),
                                             "defect": format_element(fail.defect, spec)})]


def suite_determinant(spec, rng, bounds) -> List[Result]:
    checked, bad = 0, None
    for _ in range(bounds["samples"] * 10):
        total = rng.randint(1, bounds["s"])
        groups = rng.randint(1, total)
        cuts = sorted(rng.sample(range(1, total), groups - 1))
        mults = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        bases: List[Q] = []
        while len(bases) < groups:
            q = random_rational(rng, nonzero=True)
            if q not in bases:
                bases.append(q)
        cs = ConfluentSpec(bases, mults, rng.randint(0, 4))
        checked += 1
        if determinant(confluent_vandermonde(cs)) != confluent_det_formula(cs):
            bad = {"bases": [format_rational(b) for b in bases], "multiplicities": mults, "offset": cs.offset}
            break
    inst = {"random_specs": checked, "max_size": bounds["s"], "max_offset": 4}
    return [result("determinant", inst, "fail" if bad else "pass", bad)]


def _pair_or_none(spec: TensorSpec, case: str) -> Optional[PairModule]:
    if spec.m < 1 or spec.n < 1:
        return None
    dt = spec.dt_factors[0]
    return PairModule(dt, OmegaD(dt.lam, spec.d_factors[0].beta), case)


def _pair_instance(pair: PairModule, case: str) -> Dict[str, Any]:
    dt = pair.dt_factor
    return {"case": case, "lambda": format_rational(dt.lam), "alpha": format_rational(dt.alpha),
            "h_coeffs": [format_rational(dt.h.coefficient((p,))) for p in range(max(dt.degree, 0) + 1)],
            "beta": format_rational(pair.beta)}


def _submodule_like(spec, bounds, check: str) -> List[Result]:
    out = []
    d, k = bounds["degree"], bounds["k"]
    for case in ("A", "B"):
        pair = _pair_or_none(spec, case)
        if pair is None:
            return [result(check, {"reason": "needs m >= 1 and n >= 1 to build the same-lambda pair"}, "unknown")]
        bad = None
        for m in range(3):
            target = pair.target_module(m)
            for l, n, p in itertools.product(range(m + 1), range(d + 1), range(d + 1)):
                x = wm_element(l, n, p)
                for kk in range(-k, k + 1):
                    y = pair.act(kk, x)
                    if check == "submodule" and not wm_member(y, m):
                        bad = {"m": m, "l": l, "n": n, "p": p, "k": kk}
                    if check == "quotient" and quotient_phi(y, m) != target.act(kk, quotient_phi(x, m)):
                        bad = {"m": m, "l": l, "n": n, "p": p, "k": kk}
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        inst = dict(_pair_instance(pair, case), max_m=2, degree=d, indices=[-k, k])
        out.append(result(check, inst, "fail" if bad else "pass", bad))
    return out


def suite_submodule(spec, rng, bounds):
    return _submodule_like(spec, bounds, "submodule")


def suite_quotient(spec, rng, bounds):
    return _submodule_like(spec, bounds, "quotient")


def suite_extraction(spec, rng, bounds) -> List[Result]:
    if not spec.distinct:
        return [result("extraction", {"reason": "bases are not pairwise distinct"}, "unknown")]
    bad = None
    for _ in range(bounds["samples"]):
        f = random_element(spec, rng, bounds["degree"], bounds["level"])
        comps = extract_components(f, spec)
        start = spec.local_bound(f) + 1 + sum(extraction_layout(f, spec)[1])
        for k in range(start, start + 5):
            if reconstruct(comps, k) != spec.act(k, f):
                bad = {"element": format_element(f, spec), "k": k}
                break
        if bad:
            break
    inst = {"samples": bounds["samples"], "fresh_k": 5, "degree": bounds["degree"], "level": bounds["level"]}
    return [result("extraction", inst, "fail" if bad else "pass", bad)]


def suite_rank(spec, rng, bounds) -> List[Result]:
    if not spec.distinct:
        return [result("rank", {"reason": "bases are not pairwise distinct"}, "unknown")]
    expected = 2 * spec.m + spec.n + 1
    vac = rank_invariant(spec.vacuum(), spec)
    out = [result("rank-vacuum", {"expected": expected, "window": list(vac.window)},
                  "pass" if vac.value == expected and vac.stabilized else "fail",
                  {"rank": vac.value, "stabilized": vac.stabilized})]
    vectors = [x for x in basis_vectors(spec, bounds["degree"], 0) if any(any(m.r) or any(m.p) for m in x)]
    rng.shuffle(vectors)
    low = []
    unstable = []
    for x in vectors[: bounds["samples"]]:
        rep = rank_invariant(x, spec)
        if rep.value <= expected:
            low.append({"element": format_element(x, spec), "rank": rep.value})
        if not rep.stabilized:
            unstable.append(format_element(x, spec))
    inst = {"expected_exceeds": expected, "samples": min(len(vectors), bounds["samples"]), "m": spec.m}
    status = "pass" if not low else ("unknown" if spec.m <= 1 else "fail")
    out.append(result("rank-nonvacuum", inst, status, low or None))
    out.append(result("rank-k-stability", {"samples": inst["samples"] + 1}, "fail" if unstable else "pass",
                      unstable or None))
    return out


def suite_irreducible(spec, rng, bounds) -> List[Result]:
    D, L = bounds["degree"], bounds["level"]
    try:
        check_hypotheses(spec, L)
    except HypothesisError as exc:
        return [result("irreducible", {"degree": D, "level": L}, "unknown", {"reason": str(exc)})]
    if spec.v_factor is None:
        L = 0
    bad = None
    for _ in range(bounds["samples"]):
        f = random_element(spec, rng, D, L)
        try:
            cert = certify_irreducible(spec, f, D, L)
            cert.replay(spec, f)
        except (CertificationError, AssertionError) as exc:
            bad = {"element": format_element(f, spec), "error": str(exc)}
            break
    inst = {"degree": D, "level": L, "samples": bounds["samples"]}
    return [result("irreducible", inst, "fail" if bad else "pass", bad)]


def suite_omega(spec, rng, bounds) -> List[Result]:
    out = []
    binom_bad = [(r, j) for r in range(1, 11) for j in range(r + 1)
                 if (binomial_vanishing(r, j) == 0) != (j < r)]
    out.append(result("binomial-vanishing", {"max_r": 10}, "fail" if binom_bad else "pass", binom_bad or None))
    for idx, fac in enumerate(list(spec.dt_factors) + list(spec.d_factors)):
        single = TensorSpec([fac], [], None) if isinstance(fac, OmegaDT) else TensorSpec([], [fac], None)
        nonzero = [(s, l) for s in (5, 6) for l in (7, 8) if omega_op(s, l, -(s + 2), single.vacuum(), single)]
        out.append(result("omega-pure-vanishing", {"factor": idx + 1, "s": [5, 6], "l": [7, 8]},
                          "fail" if nonzero else "pass", nonzero or None))
    if isinstance(spec.v_factor, Verma):
        zero = [l for l in (8, 9) if not omega_op(5, l, -7, spec.vacuum(), spec)]
        out.append(result("omega-with-v-nonvanishing", {"s": 5, "l": [8, 9], "m": -7},
                          "fail" if zero else "pass", zero or None))
    return out


def _perturbations(spec: TensorSpec) -> List[tuple]:
    """Single-parameter changes that must break isomorphism."""
    delta = Q(1, 7)
    out = []
    dts, ds = list(spec.dt_factors), list(spec.d_factors)
    taken = set(spec.bases)

    def fresh(x):
        while x in taken or x == 0:
            x += delta
        return x

    for i, f in enumerate(dts):
        moved = dts[:i] + [OmegaDT(fresh(f.lam + delta), f.alpha, f.h)] + dts[i + 1:]
        out.append((f"lambda_{i + 1}", TensorSpec(moved, ds, spec.v_factor)))
        moved = dts[:i] + [OmegaDT.linear(f.lam, f.alpha + delta if f.alpha + delta else f.alpha + 2 * delta,
                                          f.xi, f.eta)] + dts[i + 1:]
        out.append((f"alpha_xi_{i + 1}", TensorSpec(moved, ds, spec.v_factor)))
    for j, f in enumerate(ds):
        moved = ds[:j] + [OmegaD(fresh(f.mu + delta), f.beta)] + ds[j + 1:]
        out.append((f"mu_{j + 1}", TensorSpec(dts, moved, spec.v_factor)))
        moved = ds[:j] + [OmegaD(f.mu, f.beta + delta if f.beta + delta else f.beta + 2 * delta)] + ds[j + 1:]
        out.append((f"beta_{j + 1}", TensorSpec(dts, moved, spec.v_factor)))
    if isinstance(spec.v_factor, Verma):
        v = spec.v_factor
        out.append(("theta", TensorSpec(dts, ds, Verma(v.theta + delta, v.h))))
        out.append(("h", TensorSpec(dts, ds, Verma(v.theta, v.h + delta))))
    return out


def equivalent_presentation(spec: TensorSpec) -> TensorSpec:
    """Reverse factor order and replace each ``h`` by ``t`` with ``alpha -> alpha xi``."""
    dts = [OmegaDT.linear(f.lam, f.alpha * f.xi, 1, 0) for f in reversed(spec.dt_factors)]
    return TensorSpec(dts, list(reversed(spec.d_factors)), spec.v_factor)


def suite_classify_self(spec, rng, bounds) -> List[Result]:
    try:
        canonicalize(spec)
        verdict = specs_isomorphic(spec, equivalent_presentation(spec))
    except ValueError as exc:
        return [result("classify-self", {"reason": str(exc)}, "unknown")]
    out = [result("classify-self", {"against": "reordered, h canonicalized"},
                  "pass" if verdict.isomorphic is True else "fail",
                  {"permutation": {k: list(v) for k, v in verdict.witness.items()}} if verdict.witness else None)]
    for name, other in _perturbations(spec):
        v = specs_isomorphic(spec, other)
        out.append(result("classify-perturbed", {"parameter": name}, "pass" if v.isomorphic is False else "fail",
                          {"reason": v.reason}))
    return out


_RUNNERS: Dict[str, Callable] = {
    "bracket": suite_bracket,
    "determinant": suite_determinant,
    "submodule": suite_submodule,
    "quotient": suite_quotient,
    "extraction": suite_extraction,
    "rank": suite_rank,
    "irreducible": suite_irreducible,
    "omega": suite_omega,
    "classify-self": suite_classify_self,
}


def make_report(header: Dict[str, Any], results: List[Result]) -> Dict[str, Any]:
    summary = {s: sum(1 for r in results if r["status"] == s) for s in ("pass", "fail", "unknown")}
    return {"header": header, "results": results, "summary": summary}


def run_suite(spec: TensorSpec, suite: str = "all", seed: int = 0, bounds: Optional[Dict[str, int]] = None
              ) -> Dict[str, Any]:
    if suite != "all" and suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    bounds = dict(DEFAULT_BOUNDS, **(bounds or {}))
    names = SUITES if suite == "all" else (suite,)
    results: List[Result] = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        results.extend(_RUNNERS[name](spec, rng, bounds))
    header = {"suite": suite, "seed": seed, "bounds": bounds, "spec": spec_to_dict(spec)}
    return make_report(header, results)


def dump_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_ok(report: Dict[str, Any]) -> bool:
    return report["summary"]["fail"] == 0
