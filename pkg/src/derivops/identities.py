"""Standard polynomials of derived operations and exact identity checks.

The left standard polynomial of degree d antisymmetrizes the first d-1
arguments of the right-nested bracket ``{a_1, {a_2, ... {a_{d-1}, a_d}}}``;
the right one is the left one of the opposite operation.  Two evaluation
routes are provided: the literal permutation sum and a subset dynamic
program that peels the outermost argument off a subset, costing
O(2^(d-1) (d-1)) bracket applications.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations, product
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .derived import ArityError, DerivedOperation, apply, opposite, orders
from .diffops import DiffOperator, apply_operator
from .poly import (AlgebraContext, Polynomial, _clean, addmul_into,
                   format_polynomial)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class Mode(str, Enum):
    RANDOM = "random"
    EXHAUSTIVE = "exhaustive"
    CROSSCHECK = "crosscheck"


class Verdict(str, Enum):
    HOLDS_ON_ALL_TESTED = "HOLDS_ON_ALL_TESTED"
    REFUTED = "REFUTED"
    PROVED = "PROVED"


class CapExceededError(ValueError):
    pass


class BudgetExceededError(ValueError):
    pass


class InconsistencyError(AssertionError):
    """The permutation sum and the subset dynamic program disagreed."""


@dataclass(frozen=True)
class Limits:
    naive_cap: int = 8
    dp_cap: int = 22
    exhaustive_budget: int = 10 ** 7


DEFAULT_LIMITS = Limits()


# -- evaluation -------------------------------------------------------------

def _check_args(op: DerivedOperation, nargs: int, block: int, d: int):
    if op.arity != block + 1:
        raise ArityError(f"{op.name} has arity {op.arity}, expected {block + 1}")
    if nargs != block * d + 1:
        raise ArityError(f"expected {block * d + 1} arguments, got {nargs}")


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


def _naive(op: DerivedOperation, args: Sequence[Polynomial], block: int) -> Polynomial:
    front, last = list(args[:-1]), args[-1]
    total = Polynomial(op.ctx)
    for perm in permutations(range(len(front))):
        v = last
        for start in range(len(perm) - block, -1, -block):
            chunk = [front[i] for i in perm[start:start + block]]
            v = apply(op, chunk + [v])
        if v:
            total = total + v if _perm_sign(perm) > 0 else total - v
    return total


def _dp(op: DerivedOperation, args: Sequence[Polynomial], block: int) -> Polynomial:
    """Subset dynamic program over antisymmetrized argument blocks.

    v(S) = sum over ordered blocks t in S of sign(t, S) * op(a_t..., v(S - t)),
    where sign(t, S) counts inversions of t plus pairs (t_j, r) with r in
    S - t and r < t_j.  Only the layer of the previous cardinality is kept.
    """
    front, last = list(args[:-1]), args[-1]
    n = len(front)
    derivs = op.derivations
    for a in args:
        if a.ctx != op.ctx:
            raise ValueError("argument lives in another context")

    # {a_t..., b} = sum_g H_g(t) * g(b), grouped by the last-slot operator g
    groups: Dict[DiffOperator, List[Tuple[object, Tuple[DiffOperator, ...]]]] = {}
    for s in op.summands:
        groups.setdefault(s.factors[-1], []).append((s.coeff, s.factors[:-1]))
    gops = list(groups)
    slot_images: Dict[Tuple[int, DiffOperator, int], dict] = {}

    def slot_image(slot, f, i):
        key = (slot, f, i)
        hit = slot_images.get(key)
        if hit is None:
            hit = slot_images[key] = apply_operator(f, front[i], derivs)._terms
        return hit

    H: Dict[Tuple[int, ...], List[dict]] = {}
    for t in permutations(range(n), block):
        row = []
        for g in gops:
            acc: dict = {}
            for coeff, fs in groups[g]:
                prod = {(0,) * op.ctx.nvars: coeff}
                for slot, f in enumerate(fs):
                    img = slot_image(slot, f, t[slot])
                    if not img:
                        prod = None
                        break
                    nxt: dict = {}
                    addmul_into(nxt, prod, img)
                    prod = _clean(nxt)
                if prod:
                    for e, c in prod.items():
                        acc[e] = acc.get(e, 0) + c
            row.append(_clean(acc))
        H[t] = row

    layer: Dict[int, dict] = {0: dict(last._terms)}
    for size in range(block, n + 1, block):
        images = {}
        for mask, v in layer.items():
            if v:
                p = Polynomial._raw(op.ctx, dict(v))
                images[mask] = [apply_operator(g, p, derivs)._terms for g in gops]
        new_layer: Dict[int, dict] = {}
        for members in combinations(range(n), size):
            mask = 0
            for i in members:
                mask |= 1 << i
            rank = {i: r for r, i in enumerate(members)}
            acc: dict = {}
            for tset in combinations(members, block):
                tmask = 0
                for i in tset:
                    tmask |= 1 << i
                rest = mask ^ tmask
                g_imgs = images.get(rest)
                if g_imgs is None:
                    continue
                # pairs (u, r), r in rest, r < u  =  rank(u) - #{w in tset: w < u}
                cross = sum(rank[u] - j for j, u in enumerate(tset))
                for t in permutations(tset):
                    sign = _perm_sign(t) * (-1 if cross & 1 else 1)
                    hrow = H[t]
                    for gi in range(len(gops)):
                        h, gimg = hrow[gi], g_imgs[gi]
                        if h and gimg:
                            addmul_into(acc, h, gimg, sign)
            new_layer[mask] = _clean(acc)
        layer = new_layer
    full = (1 << n) - 1
    return Polynomial._raw(op.ctx, dict(layer.get(full, {})))


def standard_left_naive(op: DerivedOperation, d: int, args: Sequence[Polynomial],
                        limits: Limits = DEFAULT_LIMITS) -> Polynomial:
    """Literal sum over all (d-1)! permutations, a_d fixed innermost."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    _check_args(op, len(args), 1, d - 1)
    if d - 1 > limits.naive_cap:
        raise CapExceededError(f"d-1 = {d - 1} exceeds the naive cap {limits.naive_cap}")
    return _naive(op, args, 1)


def standard_left_dp(op: DerivedOperation, d: int, args: Sequence[Polynomial],
                     limits: Limits = DEFAULT_LIMITS) -> Polynomial:
    if d < 2:
        raise ValueError("degree must be >= 2")
    _check_args(op, len(args), 1, d - 1)
    if d - 1 > limits.dp_cap:
        raise CapExceededError(f"d-1 = {d - 1} exceeds the DP cap {limits.dp_cap}")
    return _dp(op, args, 1)


def standard_left(op, d, args, limits: Limits = DEFAULT_LIMITS) -> Polynomial:
    return standard_left_dp(op, d, args, limits)


def standard_right(op: DerivedOperation, d: int, args: Sequence[Polynomial],
                   limits: Limits = DEFAULT_LIMITS) -> Polynomial:
    return standard_left_dp(opposite(op), d, args, limits)


def standard(op, side: Side, d: int, args, limits: Limits = DEFAULT_LIMITS,
             method: str = "dp") -> Polynomial:
    side = Side(side)
    target = op if side is Side.LEFT else opposite(op)
    if method == "naive":
        return standard_left_naive(target, d, args, limits)
    return standard_left_dp(target, d, args, limits)


def kary_standard(op: DerivedOperation, d: int, args: Sequence[Polynomial],
                  limits: Limits = DEFAULT_LIMITS, method: str = "dp") -> Polynomial:
    """Antisymmetrization over S_{(k-1)d} of the block-nested k-ary bracket."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    block = op.arity - 1
    _check_args(op, len(args), block, d)
    slots = block * d
    if method == "naive":
        if slots > limits.naive_cap:
            raise CapExceededError(f"(k-1)d = {slots} exceeds the naive cap {limits.naive_cap}")
        return _naive(op, args, block)
    if slots > limits.dp_cap:
        raise CapExceededError(f"(k-1)d = {slots} exceeds the DP cap {limits.dp_cap}")
    return _dp(op, args, block)


def jacobiator(op: DerivedOperation, a: Polynomial, b: Polynomial, c: Polynomial) -> Polynomial:
    if op.arity != 2:
        raise ArityError("jacobiator needs a binary operation")
    return op(a, op(b, c)) + op(b, op(c, a)) + op(c, op(a, b))


def leibnizator(op: DerivedOperation, a: Polynomial, b: Polynomial, c: Polynomial) -> Polynomial:
    if op.arity != 2:
        raise ArityError("leibnizator needs a binary operation")
    return op(a, b * c) - op(a, b) * c - b * op(a, c)


def find_witness(fn: Callable[..., Polynomial], ctx: AlgebraContext, arity: int = 3,
                 max_degree: int = 3):
    """First monomial tuple (graded-lex, degree <= max_degree) where fn is nonzero."""
    monos = [Polynomial.monomial(ctx, e) for e in ctx.monomials(max_degree)]
    for combo in _tuples(len(monos), arity):
        args = [monos[i] for i in combo]
        value = fn(*args)
        if value:
            return args, value
    return None


def _tuples(n: int, arity: int):
    # lexicographic on (max index, tuple) so small monomials are tried first
    for top in range(n):
        for tup in product(range(top + 1), repeat=arity):
            if max(tup) == top:
                yield tup


# -- sampling and verification ------------------------------------------------

@dataclass(frozen=True)
class Sampler:
    """Deterministic random polynomials; trial t draws from a stream seeded by (seed, t)."""

    master_seed: int = 0
    max_degree: int = 3
    coeff_bound: int = 5
    trials: int = 50
    homogeneous: bool = False

    def rng(self, trial: int) -> random.Random:
        return random.Random(f"{self.master_seed}/{trial}")

    def draw(self, ctx: AlgebraContext, count: int, trial: int) -> List[Polynomial]:
        rng = self.rng(trial)
        monos = ctx.monomials(self.max_degree)
        by_weight: Dict[int, list] = {}
        if self.homogeneous:
            for e in monos:
                w = sum(a * b for a, b in zip(e, ctx.weights))
                by_weight.setdefault(w, []).append(e)
        out = []
        B = self.coeff_bound
        for _ in range(count):
            pool = monos
            if self.homogeneous:
                pool = by_weight[rng.choice(sorted(by_weight))]
            out.append(Polynomial(ctx, {e: rng.randint(-B, B) for e in pool}))
        return out


@dataclass
class Counterexample:
    args: List[Polynomial]
    value: Polynomial

    def as_dict(self):
        return {"args": [format_polynomial(a) for a in self.args],
                "value": format_polynomial(self.value)}


@dataclass
class VerificationReport:
    operation: str
    side: Side
    degree: int
    mode: Mode
    verdict: Verdict
    counterexample: Optional[Counterexample] = None
    seed: Optional[int] = None
    trials: Optional[int] = None
    evaluations: int = 0
    wall_time_ms: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def guarantee(self) -> str:
        if self.verdict is Verdict.REFUTED:
            return "refutation: the counterexample is an exact nonzero evaluation"
        if self.mode is Mode.EXHAUSTIVE:
            return "proof: vanishing on all monomial tuples up to the order bound"
        return "probabilistic: no refutation among the sampled evaluations"

    def as_dict(self):
        return {
            "operation": self.operation,
            "side": self.side.value,
            "degree": self.degree,
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "guarantee": self.guarantee,
            "counterexample": self.counterexample.as_dict() if self.counterexample else None,
            "seed": self.seed,
            "trials": self.trials,
            "evaluations": self.evaluations,
            "notes": list(self.notes),
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


def exhaustive_order_bound(op: DerivedOperation, d: int) -> int:
    """Per-slot derivative order bound r = (d-1) * total order."""
    return (d - 1) * orders(op).total_order


def exhaustive_tuple_count(op: DerivedOperation, d: int) -> int:
    """Tuples left after discarding repeats and orderings of the antisymmetrized slots."""
    r = exhaustive_order_bound(op, d)
    M = (r + 1) ** op.ctx.nvars
    return comb(M, d - 1) * M


def _trial_value(payload):
    op, side, d, args, limits, cross = payload
    value = standard(op, side, d, args, limits)
    if cross:
        naive = standard(op, side, d, args, limits, method="naive")
        if naive != value:
            raise InconsistencyError(f"DP and naive sums disagree on {list(map(str, args))}")
    return value


def verify(op: DerivedOperation, side: Side, d: int, mode: Mode = Mode.RANDOM,
           sampler: Sampler = Sampler(), limits: Limits = DEFAULT_LIMITS,
           jobs: int = 1) -> VerificationReport:
    side, mode = Side(side), Mode(mode)
    if op.arity != 2:
        raise ArityError("verify handles binary operations; use kary_standard")
    if d < 2:
        raise ValueError("degree must be >= 2")
    if d - 1 > limits.dp_cap:
        raise CapExceededError(f"d-1 = {d - 1} exceeds the DP cap {limits.dp_cap}")
    if mode is Mode.CROSSCHECK and d - 1 > limits.naive_cap:
        raise CapExceededError(f"d-1 = {d - 1} exceeds the naive cap {limits.naive_cap}")
    start = time.perf_counter()
    report = VerificationReport(op.name, side, d, mode, Verdict.HOLDS_ON_ALL_TESTED,
                                seed=sampler.master_seed)
    if mode is Mode.EXHAUSTIVE:
        _run_exhaustive(op, side, d, limits, report)
    else:
        report.trials = sampler.trials
        _run_random(op, side, d, sampler, limits, report, mode is Mode.CROSSCHECK, jobs)
    report.wall_time_ms = (time.perf_counter() - start) * 1000.0
    return report


def _run_random(op, side, d, sampler, limits, report, cross, jobs):
    draws = (sampler.draw(op.ctx, d, t) for t in range(sampler.trials))
    payloads = ((op, side, d, args, limits, cross) for args in draws)
    if jobs > 1:
        payloads = list(payloads)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_trial_value, payloads))
        results = zip((p[3] for p in payloads), values)
    else:
        results = ((p[3], _trial_value(p)) for p in payloads)
    for args, value in results:
        report.evaluations += 1
        if value:
            report.verdict = Verdict.REFUTED
            report.counterexample = Counterexample(list(args), value)
            return


def _run_exhaustive(op, side, d, limits, report):
    r = exhaustive_order_bound(op, d)
    count = exhaustive_tuple_count(op, d)
    if count > limits.exhaustive_budget:
        raise BudgetExceededError(
            f"{count} monomial tuples exceed the exhaustive budget {limits.exhaustive_budget}")
    ctx = op.ctx
    monos = [Polynomial.monomial(ctx, e) for e in ctx.box_monomials(r)]
    report.notes.append(f"per-variable exponent cap r = {r}; {len(monos)} monomials per slot")
    target = op if side is Side.LEFT else opposite(op)
    for front in combinations(range(len(monos)), d - 1):
        for last in range(len(monos)):
            args = [monos[i] for i in front] + [monos[last]]
            value = standard_left_dp(target, d, args, limits)
            report.evaluations += 1
            if value:
                report.verdict = Verdict.REFUTED
                report.counterexample = Counterexample(args, value)
                return
    report.verdict = Verdict.PROVED


@dataclass
class SearchResult:
    operation: str
    side: Side
    rows: List[Tuple[int, VerificationReport]]

    @property
    def min_degree(self) -> Optional[int]:
        """Smallest d from which no tested degree is refuted."""
        best = None
        for d, rep in reversed(self.rows):
            if rep.verdict is Verdict.REFUTED:
                break
            best = d
        return best

    def as_dict(self):
        return {"operation": self.operation, "side": self.side.value,
                "min_degree": self.min_degree,
                "degrees": [rep.as_dict() for _, rep in self.rows]}


def search_min_degree(op: DerivedOperation, side: Side, d_max: int,
                      sampler: Sampler = Sampler(), limits: Limits = DEFAULT_LIMITS,
                      jobs: int = 1) -> SearchResult:
    side = Side(side)
    if d_max - 1 > limits.dp_cap:
        raise CapExceededError(f"d_max-1 = {d_max - 1} exceeds the DP cap {limits.dp_cap}")
    rows = []
    for d in range(2, d_max + 1):
        mode = Mode.EXHAUSTIVE if exhaustive_tuple_count(op, d) <= limits.exhaustive_budget \
            else Mode.RANDOM
        rows.append((d, verify(op, side, d, mode, sampler, limits, jobs)))
    return SearchResult(op.name, side, rows)
