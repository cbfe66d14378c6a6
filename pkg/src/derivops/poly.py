"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are Python ints whenever they are integral and
:class:`fractions.Fraction` otherwise, so the common integer case stays on
the fast path while the arithmetic remains exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Monomial = Tuple[int, ...]

ZERO_WEIGHT = "zero"
INHOMOGENEOUS = "inhomogeneous"

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ContextMismatchError(ValueError):
    pass


def rational(value) -> Rational:
    """Coerce ``value`` to the canonical exact coefficient type."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rational(Fraction(value.strip()))
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(c: Rational) -> str:
    return str(c)


@dataclass(frozen=True)
class AlgebraContext:
    """Ordered polynomial variables, each with an integer weight."""

    variables: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.variables]
        for name, weight in self.variables:
            if not isinstance(name, str) or not _IDENT.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if isinstance(weight, bool) or not isinstance(weight, int):
                raise ValueError(f"weight of {name!r} must be an integer")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def of(cls, *names: str, weights: Sequence[int] | None = None) -> AlgebraContext:
        if weights is None:
            weights = [0] * len(names)
        if len(weights) != len(names):
            raise ValueError("one weight per variable")
        return cls(tuple(zip(names, weights)))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(w for _, w in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def monomials(self, max_degree: int) -> list[Monomial]:
        """All exponent vectors of total degree <= max_degree, graded-lex ascending."""
        out = [e for e in product(range(max_degree + 1), repeat=self.nvars)
               if sum(e) <= max_degree]
        out.sort(key=_grlex_key)
        return out

    def box_monomials(self, cap: int) -> list[Monomial]:
        """All exponent vectors with every exponent <= cap, graded-lex ascending."""
        out = list(product(range(cap + 1), repeat=self.nvars))
        out.sort(key=_grlex_key)
        return out

    def zero(self) -> Polynomial:
        return Polynomial(self)

    def one(self) -> Polynomial:
        return Polynomial.constant(self, 1)

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self, name)

    def gens(self) -> Tuple[Polynomial, ...]:
        return tuple(self.var(n) for n in self.names)


def _grlex_key(e: Monomial):
    return (sum(e), e)


def _same_context(p: Polynomial, q: Polynomial) -> None:
    if p.ctx is not q.ctx and p.ctx != q.ctx:
        raise ContextMismatchError("polynomials live in different contexts")


def _clean(terms: dict) -> dict:
    """Drop zero coefficients and demote integral fractions, in place."""
    for k in [k for k, c in terms.items() if not c]:
        del terms[k]
    for k, c in terms.items():
        if type(c) is Fraction and c.denominator == 1:
            terms[k] = c.numerator
    return terms


def addmul_into(acc: dict, p: Mapping, q: Mapping, scale: Rational = 1) -> None:
    """acc += scale * p * q on raw term maps; zeros are left for :func:`_clean`."""
    get = acc.get
    if len(p) == 1 and len(q) == 1:
        (ep, cp), = p.items()
        (eq, cq), = q.items()
        key = tuple(a + b for a, b in zip(ep, eq))
        acc[key] = get(key, 0) + scale * cp * cq
        return
    for ep, cp in p.items():
        c = scale * cp
        for eq, cq in q.items():
            key = tuple(a + b for a, b in zip(ep, eq))
            acc[key] = get(key, 0) + c * cq


class Polynomial:
    """An immutable element of k[x_1, ..., x_n] over a fixed context."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: AlgebraContext, terms: Mapping[Monomial, object] | None = None):
        clean: dict = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != ctx.nvars or any(
                    isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps!r} for {ctx.nvars} variables")
            clean[exps] = clean.get(exps, 0) + rational(c)
        self.ctx = ctx
        self._terms = _clean(clean)
        self._hash = None

    @classmethod
    def _raw(cls, ctx: AlgebraContext, terms: dict) -> Polynomial:
        self = cls.__new__(cls)
        self.ctx = ctx
        self._terms = _clean(terms)
        self._hash = None
        return self

    @classmethod
    def constant(cls, ctx: AlgebraContext, c) -> Polynomial:
        return cls(ctx, {(0,) * ctx.nvars: c})

    @classmethod
    def variable(cls, ctx: AlgebraContext, name: str) -> Polynomial:
        e = [0] * ctx.nvars
        e[ctx.index(name)] = 1
        return cls(ctx, {tuple(e): 1})

    @classmethod
    def monomial(cls, ctx: AlgebraContext, exps: Sequence[int], c=1) -> Polynomial:
        return cls(ctx, {tuple(exps): c})

    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Rational]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> Rational:
        return self._terms.get(tuple(exps), 0)

    def weight(self):
        return weight_of(self)

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            _same_context(self, other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.ctx, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return Polynomial._raw(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) - c
        return Polynomial._raw(self.ctx, acc)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> Polynomial:
        c = rational(c)
        if not c:
            return Polynomial._raw(self.ctx, {})
        return Polynomial._raw(self.ctx, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        _same_context(self, other)
        acc: dict = {}
        if self._terms and other._terms:
            addmul_into(acc, self._terms, other._terms)
        return Polynomial._raw(self.ctx, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_context(p, q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_context(p, q)
    return p * q


def weight_of(p: Polynomial):
    """Common weight of all terms, or ``"zero"`` / ``"inhomogeneous"``."""
    if not p._terms:
        return ZERO_WEIGHT
    weights = p.ctx.weights
    seen = {sum(e * w for e, w in zip(exps, weights)) for exps in p._terms}
    if len(seen) == 1:
        return seen.pop()
    return INHOMOGENEOUS


def is_homogeneous(p: Polynomial) -> bool:
    return weight_of(p) != INHOMOGENEOUS


def _format_monomial(names: Sequence[str], exps: Monomial) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Render in the literal grammar, terms in descending graded-lex order."""
    if not p._terms:
        return "0"
    names = p.ctx.names
    out = []
    for i, (exps, c) in enumerate(p.items()):
        mono = _format_monomial(names, exps)
        mag = -c if c < 0 else c
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def linear_combination(ctx: AlgebraContext, pairs: Iterable[Tuple[Rational, Polynomial]]) -> Polynomial:
    acc: dict = {}
    for c, p in pairs:
        for e, v in p._terms.items():
            acc[e] = acc.get(e, 0) + c * v
    return Polynomial._raw(ctx, acc)
