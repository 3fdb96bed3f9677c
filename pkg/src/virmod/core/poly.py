"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .rational import Q, RationalLike, format_rational, is_rational, parse_rational

Exponent = Tuple[int, ...]


class VariableMismatchError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    """Synthetic division left a nonzero remainder."""

    def __init__(self, remainder: "MultiPoly"):
        super().__init__(f"nonzero remainder {remainder}")
        self.remainder = remainder


class MultiPoly:
    """Polynomial over Q in a fixed, ordered table of commuting variables.

    Terms are stored as ``{exponent tuple: Q}`` with one slot per
    variable and no zero coefficients, so two polynomials over the same table
    are equal exactly when their term maps are equal.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, RationalLike] | None = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")
        clean: Dict[Exponent, Q] = {}
        width = len(self.variables)
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != width or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for variables {self.variables}")
            c = parse_rational(coeff)
            if c:
                clean[exp] = clean.get(exp, Q(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: RationalLike) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[_index(variables, name)] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, coeff: RationalLike = 1) -> "MultiPoly":
        return cls(variables, {tuple(exp): coeff})

    @classmethod
    def linear_power(cls, variables: Sequence[str], name: str, shift: RationalLike, exponent: int) -> "MultiPoly":
        """Binomial expansion of ``(name - shift) ** exponent``."""
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        variables = tuple(variables)
        idx = _index(variables, name)
        shift = parse_rational(shift)
        terms = {}
        for a in range(exponent + 1):
            exp = [0] * len(variables)
            exp[idx] = a
            terms[tuple(exp)] = comb(exponent, a) * (-shift) ** (exponent - a)
        return cls(variables, terms)

    # basic protocol ---------------------------------------------------------
    def __iter__(self) -> Iterator[Tuple[Exponent, Q]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if is_rational(other):
            return self == MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self:
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(format_rational(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(coeff)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise VariableMismatchError(f"{self.variables} vs {other.variables}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if is_rational(other):
            return MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if is_rational(other):
            if not other:
                return MultiPoly.zero(self.variables)
            return MultiPoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Q] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exponent, Q]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # calculus and substitution ---------------------------------------------
    def degree(self, name: str | None = None) -> int:
        """Total degree, or the degree in ``name``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        idx = _index(self.variables, name)
        return max(e[idx] for e in self.terms)

    def coefficient(self, exp: Exponent) -> Q:
        return self.terms.get(tuple(exp), Q(0))

    def derive(self, name: str) -> "MultiPoly":
        idx = _index(self.variables, name)
        out = {}
        for exp, c in self.terms.items():
            if exp[idx]:
                e = list(exp)
                e[idx] -= 1
                out[tuple(e)] = c * exp[idx]
        return MultiPoly._raw(self.variables, out)

    def evaluate(self, values: Mapping[str, RationalLike]) -> Q:
        vals = [parse_rational(values[name]) for name in self.variables]
        total = Q(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(vals, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def substitute(self, name: str, replacement: "MultiPoly | RationalLike") -> "MultiPoly":
        """Compose: replace ``name`` by ``replacement``.

        The result lives over the replacement's variable table with ``name``
        dropped if ``name`` is absent from it; the remaining variables of
        ``self`` must appear in that table.
        """
        idx = _index(self.variables, name)
        if not isinstance(replacement, MultiPoly):
            target_vars = self.variables
            replacement = MultiPoly.constant(target_vars, replacement)
        target_vars = replacement.variables
        for v in self.variables:
            if v != name and v not in target_vars:
                raise VariableMismatchError(f"variable {v!r} missing from replacement table {target_vars}")
        positions = [target_vars.index(v) if v != name else None for v in self.variables]
        powers: Dict[int, MultiPoly] = {}
        result: Dict[Exponent, Q] = {}
        for exp, c in self.terms.items():
            k = exp[idx]
            if k not in powers:
                powers[k] = replacement ** k
            base = [0] * len(target_vars)
            for pos, e in zip(positions, exp):
                if pos is not None:
                    base[pos] += e
            for rexp, rc in powers[k].terms.items():
                e = tuple(a + b for a, b in zip(base, rexp))
                result[e] = result.get(e, 0) + c * rc
        return MultiPoly._raw(target_vars, {e: c for e, c in result.items() if c})

    def div_linear(self, name: str, root: RationalLike) -> "MultiPoly":
        """Exact quotient by ``(name - root)``; raises if the remainder is nonzero."""
        idx = _index(self.variables, name)
        root = parse_rational(root)
        # group by the exponents of the other variables, then synthetic division
        groups: Dict[Exponent, Dict[int, Q]] = {}
        for exp, c in self.terms.items():
            rest = exp[:idx] + exp[idx + 1:]
            groups.setdefault(rest, {})[exp[idx]] = c
        quotient: Dict[Exponent, Q] = {}
        remainder: Dict[Exponent, Q] = {}
        for rest, coeffs in groups.items():
            top = max(coeffs)
            carry = Q(0)
            for d in range(top, 0, -1):
                carry = carry * root + coeffs.get(d, 0)
                if carry:
                    quotient[rest[:idx] + (d - 1,) + rest[idx:]] = carry
            last = carry * root + coeffs.get(0, 0)
            if last:
                remainder[rest[:idx] + (0,) + rest[idx:]] = last
        if remainder:
            raise NotDivisibleError(MultiPoly._raw(self.variables, remainder))
        return MultiPoly._raw(self.variables, quotient)

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over a larger (or reordered) table containing every used variable."""
        variables = tuple(variables)
        out = {}
        for exp, c in self.terms.items():
            e = [0] * len(variables)
            for name, k in zip(self.variables, exp):
                if k:
                    e[_index(variables, name)] = k
            out[tuple(e)] = c
        return MultiPoly._raw(variables, out)


def _index(variables: Tuple[str, ...], name: str) -> int:
    try:
        return variables.index(name)
    except ValueError:
        raise VariableMismatchError(f"unknown variable {name!r}; table is {variables}") from None


def poly_sum(polys: Iterable[MultiPoly], variables: Sequence[str]) -> MultiPoly:
    total = MultiPoly.zero(variables)
    for p in polys:
        total = total + p
    return total
