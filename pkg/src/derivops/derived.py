"""Derived operations: finite sums of tuples of differential operators."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Mapping, Sequence, Tuple

from .diffops import (Derivation, DiffOperator, apply_operator,
                      binomial_in_operator)
from .poly import (AlgebraContext, ContextMismatchError, Polynomial, Rational,
                   _clean, addmul_into, rational, weight_of)


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    coeff: Rational
    factors: Tuple[DiffOperator, ...]


@dataclass(frozen=True)
class OperationOrders:
    per_slot_order: Tuple[int, ...]
    total_order: int

    def as_dict(self):
        return {"per_slot_order": list(self.per_slot_order), "total_order": self.total_order}


class DerivedOperation:
    """A k-ary operation  sum_j c_j f_j1(a_1) ... f_jk(a_k).

    Summands with identical factor tuples are merged at construction and
    summands whose coefficient or some factor vanishes are dropped.
    """

    def __init__(self, name: str, ctx: AlgebraContext, derivations: Mapping[str, Derivation],
                 arity: int, summands: Sequence[Tuple[object, Sequence[DiffOperator]]]):
        if arity < 2:
            raise ArityError("derived operations have arity >= 2")
        for D in derivations.values():
            if D.ctx != ctx:
                raise ContextMismatchError(f"derivation {D.name!r} lives in another context")
        merged: Dict[Tuple[DiffOperator, ...], Rational] = {}
        for coeff, factors in summands:
            factors = tuple(factors)
            if len(factors) != arity:
                raise ArityError(f"summand has {len(factors)} factors, expected {arity}")
            for f in factors:
                missing = f.letters() - set(derivations)
                if missing:
                    raise ValueError(f"unregistered derivations {sorted(missing)}")
            if any(f.is_zero() for f in factors):
                continue
            merged[factors] = merged.get(factors, 0) + rational(coeff)
        self.name = name
        self.ctx = ctx
        self.derivations = dict(derivations)
        self.arity = arity
        self.summands: Tuple[Summand, ...] = tuple(
            Summand(c, f) for f, c in merged.items() if c)

    @classmethod
    def from_words(cls, name, ctx, derivations, summands, arity: int | None = None):
        """Build from ``[(coeff, [word_1, ..., word_k]), ...]`` with words as name sequences."""
        rows = []
        for coeff, words in summands:
            rows.append((coeff, [DiffOperator.word(*w) for w in words]))
        if arity is None:
            arity = len(rows[0][1]) if rows else 2
        return cls(name, ctx, derivations, arity, rows)

    def __call__(self, *args: Polynomial) -> Polynomial:
        return apply(self, args)

    def renamed(self, name: str) -> DerivedOperation:
        return DerivedOperation(name, self.ctx, self.derivations, self.arity,
                                [(s.coeff, s.factors) for s in self.summands])

    def is_zero(self) -> bool:
        return not self.summands

    def __eq__(self, other):
        if not isinstance(other, DerivedOperation):
            return NotImplemented
        return (self.arity == other.arity and self.ctx == other.ctx
                and set(self.summands) == set(other.summands))

    def __hash__(self):
        return hash((self.arity, frozenset(self.summands)))

    def __str__(self):
        if not self.summands:
            return "0"
        parts = []
        for s in self.summands:
            tensor = " (x) ".join(f"({f})" for f in s.factors)
            parts.append(tensor if s.coeff == 1 else f"{s.coeff}*{tensor}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DerivedOperation({self.name!r}, arity={self.arity}: {self})"


def apply(op: DerivedOperation, args: Sequence[Polynomial]) -> Polynomial:
    if len(args) != op.arity:
        raise ArityError(f"{op.name} takes {op.arity} arguments, got {len(args)}")
    for a in args:
        if a.ctx != op.ctx:
            raise ContextMismatchError("argument lives in another context")
    derivs = op.derivations
    images: Dict[Tuple[int, DiffOperator], Polynomial] = {}
    acc: dict = {}
    for s in op.summands:
        prod = None
        for slot, f in enumerate(s.factors):
            key = (slot, f)
            img = images.get(key)
            if img is None:
                img = images[key] = apply_operator(f, args[slot], derivs)
            if not img:
                prod = None
                break
            prod = img._terms if prod is None else _mul_terms(prod, img._terms)
        if prod:
            for e, c in prod.items():
                acc[e] = acc.get(e, 0) + s.coeff * c
    return Polynomial._raw(op.ctx, acc)


def _mul_terms(p, q):
    acc: dict = {}
    addmul_into(acc, p, q)
    return _clean(acc)


def opposite(op: DerivedOperation) -> DerivedOperation:
    """The operation (a, b) -> op(b, a)."""
    if op.arity != 2:
        raise ArityError("opposite is defined for binary operations")
    name = op.name[:-3] if op.name.endswith("^op") else f"{op.name}^op"
    return DerivedOperation(name, op.ctx, op.derivations, 2,
                            [(s.coeff, (s.factors[1], s.factors[0])) for s in op.summands])


def orders(op: DerivedOperation) -> OperationOrders:
    per_slot = [0] * op.arity
    total = 0
    for s in op.summands:
        lengths = [f.order() for f in s.factors]
        per_slot = [max(a, b) for a, b in zip(per_slot, lengths)]
        total = max(total, sum(lengths))
    return OperationOrders(tuple(per_slot), total)


def used_derivations(op: DerivedOperation) -> set:
    return {ch for s in op.summands for f in s.factors for ch in f.letters()}


def rankin_cohen(n: int, W: Derivation, D: Derivation) -> DerivedOperation:
    """Generalized Rankin-Cohen bracket [-,-]_n written through W and D.

    Slot operators are D^r . binom(W+n-1, s) and D^s . binom(W+n-1, r) for
    r + s = n, with sign (-1)^r.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if W.ctx != D.ctx:
        raise ContextMismatchError("W and D live in different contexts")
    Dw = DiffOperator.word(D.name)
    rows = []
    for r in range(n + 1):
        s = n - r
        left = Dw ** r * binomial_in_operator(W, n - 1, s)
        right = Dw ** s * binomial_in_operator(W, n - 1, r)
        rows.append(((-1) ** r, (left, right)))
    return DerivedOperation(f"rc({n})", W.ctx, {W.name: W, D.name: D}, 2, rows)


def rankin_cohen_weight_formula(n: int, D: Derivation, a: Polynomial, b: Polynomial) -> Polynomial:
    """The classical weight-dependent bracket, for weight-homogeneous a and b."""
    k, l = weight_of(a), weight_of(b)
    if not a or not b:
        return Polynomial(a.ctx)
    if not isinstance(k, int) or not isinstance(l, int):
        raise ValueError("arguments must be weight-homogeneous")
    derivs = {D.name: D}
    total = Polynomial(a.ctx)
    for r in range(n + 1):
        s = n - r
        coeff = (-1) ** r * _gen_binom(n + k - 1, s) * _gen_binom(n + l - 1, r)
        if coeff:
            Dr = apply_operator(DiffOperator.word(*[D.name] * r), a, derivs)
            Ds = apply_operator(DiffOperator.word(*[D.name] * s), b, derivs)
            total = total + (Dr * Ds).scale(coeff)
    return total


def _gen_binom(z: int, k: int) -> Rational:
    """binom(z, k) as a polynomial in z, valid for negative z too."""
    num = 1
    for j in range(k):
        num *= z - j
    return rational(Fraction(num, factorial(k)))


def bivector_bracket(omega, ctx: AlgebraContext, name: str = "bivector") -> DerivedOperation:
    """Almost-Poisson bracket of a bivector with components omega[i][j], i < j.

    ``omega`` is an N x N nested sequence (entries on or below the diagonal
    are ignored) or a mapping ``{(i, j): Polynomial}`` with 0-based i < j.
    Registers E_i = d/dx_i and V_i = sum_{j>i} omega^{ij} d/dx_j.
    """
    N = ctx.nvars
    if isinstance(omega, Mapping):
        comps = {}
        for (i, j), w in omega.items():
            if not (0 <= i < j < N):
                raise ValueError(f"bad bivector index {(i, j)} for {N} variables")
            comps[(i, j)] = w
    else:
        if len(omega) != N or any(len(row) != N for row in omega):
            raise ValueError(f"bivector matrix must be {N} x {N}")
        comps = {(i, j): omega[i][j] for i in range(N) for j in range(i + 1, N)}
    names = ctx.names
    derivations = {}
    rows = []
    for i in range(N - 1):
        images = {}
        for j in range(i + 1, N):
            w = comps.get((i, j))
            if w is None:
                continue
            if not isinstance(w, Polynomial):
                w = Polynomial.constant(ctx, w)
            if w.ctx != ctx:
                raise ContextMismatchError("bivector component lives in another context")
            if w:
                images[names[j]] = w
        if not images:
            continue
        E = Derivation.partial(f"E{i + 1}", ctx, names[i])
        V = Derivation(f"V{i + 1}", ctx, images)
        derivations[E.name] = E
        derivations[V.name] = V
        e, v = DiffOperator.word(E.name), DiffOperator.word(V.name)
        rows.append((1, (e, v)))
        rows.append((-1, (v, e)))
    return DerivedOperation(name, ctx, derivations, 2, rows)


def leibniz_expand_product_rule(D: Derivation, m: int, name: str | None = None) -> DerivedOperation:
    """a*b = -a D^m(b) + D^m(a) b + D^m(ab), with D^m(ab) expanded by Leibniz."""
    if m < 1:
        raise ValueError("m must be >= 1")
    d = D.name
    ident = DiffOperator.identity()
    rows = [(-1, (ident, DiffOperator.word(*[d] * m))),
            (1, (DiffOperator.word(*[d] * m), ident))]
    for i in range(m + 1):
        rows.append((comb(m, i), (DiffOperator.word(*[d] * i), DiffOperator.word(*[d] * (m - i)))))
    return DerivedOperation(name or f"dzh_star2({m})", D.ctx, {d: D}, 2, rows)
