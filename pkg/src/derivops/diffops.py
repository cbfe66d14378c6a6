"""Derivations of a polynomial algebra and the operators they generate.

A :class:`DiffOperator` is a rational combination of words in derivation
names.  Words are read left to right as outermost to innermost, so the word
``("D1", "D2")`` acts as ``D1 . D2``.  Words are kept free: no rewriting by
commutation relations is ever performed.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence, Tuple

from .poly import (AlgebraContext, ContextMismatchError, Polynomial, Rational,
                   _clean, rational)

Word = Tuple[str, ...]


class UnknownDerivationError(KeyError):
    pass


class Derivation:
    """A derivation determined by its images on the generators."""

    __slots__ = ("name", "ctx", "images", "_image_terms")

    def __init__(self, name: str, ctx: AlgebraContext, images: Mapping[str, Polynomial]):
        unknown = set(images) - set(ctx.names)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        imgs = []
        for v in ctx.names:
            img = images.get(v, Polynomial(ctx))
            if img.ctx != ctx:
                raise ContextMismatchError(f"image of {v!r} lives in another context")
            imgs.append(img)
        self.name = name
        self.ctx = ctx
        self.images: Tuple[Polynomial, ...] = tuple(imgs)
        self._image_terms = tuple(
            (i, tuple(img._terms.items())) for i, img in enumerate(imgs) if img)

    @classmethod
    def partial(cls, name: str, ctx: AlgebraContext, var: str) -> Derivation:
        return cls(name, ctx, {var: ctx.one()})

    @classmethod
    def euler(cls, name: str, ctx: AlgebraContext) -> Derivation:
        """Multiplication by the weight on weight-homogeneous elements."""
        return cls(name, ctx, {v: ctx.var(v).scale(w) for v, w in ctx.variables if w})

    def image(self, var: str) -> Polynomial:
        return self.images[self.ctx.index(var)]

    def is_zero(self) -> bool:
        return not self._image_terms

    def same_action(self, other: Derivation) -> bool:
        return self.ctx == other.ctx and self.images == other.images

    def __call__(self, p: Polynomial) -> Polynomial:
        return derive(self, p)

    def __repr__(self):
        imgs = ", ".join(f"{v}->{img}" for v, img in zip(self.ctx.names, self.images) if img)
        return f"Derivation({self.name!r}: {imgs or '0'})"


def derive(D: Derivation, p: Polynomial) -> Polynomial:
    if p.ctx is not D.ctx and p.ctx != D.ctx:
        raise ContextMismatchError("derivation and polynomial contexts differ")
    acc: dict = {}
    get = acc.get
    for exps, c in p._terms.items():
        for i, img in D._image_terms:
            e = exps[i]
            if not e:
                continue
            base = list(exps)
            base[i] = e - 1
            ce = c * e
            for ie, ic in img:
                key = tuple(a + b for a, b in zip(base, ie))
                acc[key] = get(key, 0) + ce * ic
    return Polynomial._raw(p.ctx, acc)


def derivation_commutator(D1: Derivation, D2: Derivation, name: str | None = None) -> Derivation:
    """The derivation [D1, D2] = D1.D2 - D2.D1, computed on generators."""
    if D1.ctx != D2.ctx:
        raise ContextMismatchError("derivations live in different contexts")
    ctx = D1.ctx
    images = {v: D1(D2.images[i]) - D2(D1.images[i]) for i, v in enumerate(ctx.names)}
    return Derivation(name or f"[{D1.name},{D2.name}]", ctx, images)


def _lookup(derivations: Mapping[str, Derivation], letter: str) -> Derivation:
    try:
        return derivations[letter]
    except KeyError:
        raise UnknownDerivationError(f"unregistered derivation {letter!r}") from None


def apply_word(word: Sequence[str], p: Polynomial, derivations: Mapping[str, Derivation]) -> Polynomial:
    for letter in reversed(tuple(word)):
        p = derive(_lookup(derivations, letter), p)
    return p


class DiffOperator:
    """Immutable rational combination of derivation words."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[str], object] | None = None):
        acc: dict = {}
        for word, c in (terms or {}).items():
            word = (word,) if isinstance(word, str) else tuple(word)
            acc[word] = acc.get(word, 0) + rational(c)
        self._terms = _clean(acc)
        self._hash = None

    @classmethod
    def identity(cls) -> DiffOperator:
        return cls({(): 1})

    @classmethod
    def word(cls, *letters: str, coeff=1) -> DiffOperator:
        return cls({tuple(letters): coeff})

    @classmethod
    def zero(cls) -> DiffOperator:
        return cls()

    @property
    def terms(self) -> Mapping[Word, Rational]:
        return dict(self._terms)

    def words(self) -> Iterable[Word]:
        return self._terms.keys()

    def letters(self) -> set:
        return {ch for w in self._terms for ch in w}

    def order(self) -> int:
        """Maximal word length; 0 for the zero operator."""
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffOperator({(): other})
        if not isinstance(other, DiffOperator):
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return DiffOperator(acc)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Scalar multiple, or composition ``self . other``."""
        if isinstance(other, (int, Fraction)):
            return DiffOperator({w: c * other for w, c in self._terms.items()})
        if not isinstance(other, DiffOperator):
            return NotImplemented
        acc: dict = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return DiffOperator(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        result = DiffOperator.identity()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            body = ".".join(w) if w else "id"
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator({self})"

    def apply(self, p: Polynomial, derivations: Mapping[str, Derivation]) -> Polynomial:
        return apply_operator(self, p, derivations)


def apply_operator(T: DiffOperator, p: Polynomial, derivations: Mapping[str, Derivation]) -> Polynomial:
    """Sum of coefficient times word action; shared word suffixes are computed once."""
    cache = {(): p}

    def act(word: Word) -> Polynomial:
        hit = cache.get(word)
        if hit is None:
            hit = derive(_lookup(derivations, word[0]), act(word[1:]))
            cache[word] = hit
        return hit

    acc: dict = {}
    for word, c in T._terms.items():
        for e, v in act(word)._terms.items():
            acc[e] = acc.get(e, 0) + c * v
    return Polynomial._raw(p.ctx, acc)


def binomial_in_operator(D: Derivation | str, shift, top: int) -> DiffOperator:
    """The operator binom(D + shift, top) = (D+shift)(D+shift-1)...(D+shift-top+1) / top!."""
    if top < 0:
        raise ValueError("top must be non-negative")
    name = D if isinstance(D, str) else D.name
    shift = rational(shift)
    letter = DiffOperator.word(name)
    result = DiffOperator.identity()
    for j in range(top):
        result = result * (letter + (shift - j))
    return result * Fraction(1, factorial(top))
