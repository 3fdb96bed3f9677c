"""JSON spec files describing a tensor module.

::

    {
      "m": 1, "n": 1,
      "dt_factors": [{"lambda": "2", "alpha": "1", "xi": "1", "eta": "0"}],
      "d_factors": [{"mu": "3", "beta": "2"}],
      "v": {"type": "verma", "theta": "1/2", "h": "1/3"}
    }

A dt factor may give ``"h_coeffs": ["c0", "c1", ...]`` instead of ``xi`` and
``eta``.  An induced V is ``{"type": "induced", "theta": ..., "k": ...}`` plus
either ``"basis_size"`` and ``"action"`` (a list of ``{"i", "b", "image"}``
entries, ``image`` mapping basis indices to rationals) or
``"rule": {"kind": "shift", "offset": ...}``.  The ``v`` key may be absent.
Rationals are strings ``"p/q"`` or integers; floats are refused.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from .core.rational import Q, format_rational, parse_rational
from .enveloping import Induced, ShiftModule, TableModule, Verma
from .omega import OmegaD, OmegaDT
from .tensor import TensorSpec


class SpecError(ValueError):
    """A spec file is malformed; the message names the offending field."""


def _rational(obj: Mapping[str, Any], key: str, where: str, nonzero: bool = False) -> Q:
    if key not in obj:
        raise SpecError(f"{where}: missing field {key!r}")
    try:
        value = parse_rational(obj[key])
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{where}.{key}: {exc}") from None
    if nonzero and value == 0:
        raise SpecError(f"{where}.{key} must be nonzero")
    return value


def _int(obj: Mapping[str, Any], key: str, where: str) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{where}: field {key!r} must be an integer")
    return value


def _dt_factor(obj: Any, where: str) -> OmegaDT:
    if not isinstance(obj, dict):
        raise SpecError(f"{where} must be an object")
    lam = _rational(obj, "lambda", where, nonzero=True)
    alpha = _rational(obj, "alpha", where)
    if "h_coeffs" in obj:
        if "xi" in obj or "eta" in obj:
            raise SpecError(f"{where}: give either h_coeffs or xi/eta, not both")
        coeffs = obj["h_coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise SpecError(f"{where}.h_coeffs must be a nonempty list")
        h = [_rational({"c": c}, "c", f"{where}.h_coeffs[{i}]") for i, c in enumerate(coeffs)]
        return OmegaDT(lam, alpha, h)
    xi = _rational(obj, "xi", where)
    eta = _rational(obj, "eta", where) if "eta" in obj else Q(0)
    return OmegaDT.linear(lam, alpha, xi, eta)


def _d_factor(obj: Any, where: str) -> OmegaD:
    if not isinstance(obj, dict):
        raise SpecError(f"{where} must be an object")
    return OmegaD(_rational(obj, "mu", where, nonzero=True), _rational(obj, "beta", where))


def _v_factor(obj: Any):
    where = "v"
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise SpecError("v must be an object")
    kind = obj.get("type")
    theta = _rational(obj, "theta", where)
    if kind == "verma":
        return Verma(theta, _rational(obj, "h", where))
    if kind != "induced":
        raise SpecError(f"v.type must be 'verma' or 'induced', got {kind!r}")
    k = _int(obj, "k", where)
    if "rule" in obj:
        rule = obj["rule"]
        if not isinstance(rule, dict) or rule.get("kind") != "shift":
            raise SpecError("v.rule must be {'kind': 'shift', 'offset': ...}")
        offset = _rational(rule, "offset", "v.rule") if "offset" in rule else Q(0)
        try:
            module = ShiftModule(k, offset)
        except ValueError as exc:
            raise SpecError(f"v.rule: {exc}") from None
        return Induced(theta, module)
    size = _int(obj, "basis_size", where)
    entries = obj.get("action", [])
    if not isinstance(entries, list):
        raise SpecError("v.action must be a list")
    table: Dict[int, Dict[int, Dict[int, Q]]] = {}
    for pos, entry in enumerate(entries):
        at = f"v.action[{pos}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("image"), dict):
            raise SpecError(f"{at} must be an object with i, b and image")
        i, b = _int(entry, "i", at), _int(entry, "b", at)
        image = {}
        for b2, c in entry["image"].items():
            try:
                image[int(b2)] = parse_rational(c)
            except (TypeError, ValueError) as exc:
                raise SpecError(f"{at}.image[{b2!r}]: {exc}") from None
        table.setdefault(i, {})[b] = image
    try:
        module = TableModule(k, size, table)
    except (ValueError, IndexError) as exc:
        raise SpecError(f"v.action: {exc}") from None
    violation = module.find_bracket_violation(range(size))
    if violation is not None:
        raise SpecError(f"v.action does not define a Vir_+-module: {violation}")
    return Induced(theta, module)


def spec_from_dict(data: Any) -> TensorSpec:
    if not isinstance(data, dict):
        raise SpecError("a spec must be a JSON object")
    unknown = set(data) - {"m", "n", "dt_factors", "d_factors", "v"}
    if unknown:
        raise SpecError(f"unknown fields {sorted(unknown)}")
    dts = data.get("dt_factors", [])
    ds = data.get("d_factors", [])
    if not isinstance(dts, list) or not isinstance(ds, list):
        raise SpecError("dt_factors and d_factors must be lists")
    m = _int(data, "m", "spec") if "m" in data else len(dts)
    n = _int(data, "n", "spec") if "n" in data else len(ds)
    if m != len(dts) or n != len(ds):
        raise SpecError(f"m={m}, n={n} disagree with {len(dts)} dt_factors and {len(ds)} d_factors")
    if m + n == 0:
        raise SpecError("a spec needs at least one Omega factor")
    dt_factors = [_dt_factor(obj, f"dt_factors[{i}]") for i, obj in enumerate(dts)]
    d_factors = [_d_factor(obj, f"d_factors[{j}]") for j, obj in enumerate(ds)]
    return TensorSpec(dt_factors, d_factors, _v_factor(data.get("v")))


def load_spec(source: Union[str, Path]) -> TensorSpec:
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text, parse_float=_refuse_float)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return spec_from_dict(data)


def _refuse_float(text: str):
    raise SpecError(f"float literal {text} is not allowed; write rationals as strings like \"3/2\"")


def spec_to_dict(spec: TensorSpec) -> Dict[str, Any]:
    def dt(fac: OmegaDT) -> Dict[str, Any]:
        out = {"lambda": format_rational(fac.lam), "alpha": format_rational(fac.alpha)}
        if fac.degree <= 1:
            out["xi"] = format_rational(fac.xi)
            out["eta"] = format_rational(fac.eta)
        else:
            out["h_coeffs"] = [format_rational(fac.h.coefficient((p,))) for p in range(fac.degree + 1)]
        return out

    data: Dict[str, Any] = {
        "m": spec.m,
        "n": spec.n,
        "dt_factors": [dt(f) for f in spec.dt_factors],
        "d_factors": [{"mu": format_rational(f.mu), "beta": format_rational(f.beta)} for f in spec.d_factors],
    }
    v = spec.v_factor
    if isinstance(v, Verma):
        data["v"] = {"type": "verma", "theta": format_rational(v.theta), "h": format_rational(v.h)}
    elif isinstance(v, Induced):
        mod = v.module
        entry: Dict[str, Any] = {"type": "induced", "theta": format_rational(v.theta), "k": mod.k}
        if isinstance(mod, ShiftModule):
            entry["rule"] = {"kind": "shift", "offset": format_rational(mod.offset)}
        else:
            entry["basis_size"] = mod.basis_size
            entry["action"] = [
                {"i": i, "b": b, "image": {str(b2): format_rational(c) for b2, c in sorted(img.items())}}
                for i, rows in sorted(mod.table.items()) for b, img in sorted(rows.items())
            ]
        data["v"] = entry
    return data
