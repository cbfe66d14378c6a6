"""Named derived operations with their test algebras and expected facts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .bounds import BoundResult, bound_fd, bound_fg, bound_rc
from .derived import (DerivedOperation, bivector_bracket, leibniz_expand_product_rule,
                      orders, rankin_cohen, rankin_cohen_weight_formula,
                      used_derivations)
from .diffops import Derivation, derivation_commutator
from .identities import (DEFAULT_LIMITS, Limits, Mode, Sampler, Side, Verdict,
                         find_witness, jacobiator, leibnizator, verify)
from .parsing import parse_polynomial
from .poly import AlgebraContext, Polynomial, is_homogeneous


@dataclass(frozen=True)
class Fact:
    """A machine-checkable claim about a catalog operation.

    kinds: ``standard`` (side, degree), ``jacobi`` / ``leibniz`` (holds),
    ``symmetry`` (sign with {a,b} = sign {b,a}), ``novikov_axioms``,
    ``heisenberg``, ``commutator`` ([W,D] = 2D), ``rc_weight_identity``.
    """

    kind: str
    side: Optional[str] = None
    degree: Optional[int] = None
    holds: bool = True
    sign: Optional[int] = None
    note: str = ""

    def describe(self) -> str:
        if self.kind == "standard":
            return f"s_{{{self.degree},{self.side[0]}}} = 0"
        if self.kind in ("jacobi", "leibniz"):
            return f"{self.kind} identity {'holds' if self.holds else 'fails'}"
        if self.kind == "symmetry":
            return f"{{a,b}} = {'+' if self.sign > 0 else '-'}{{b,a}}"
        return self.note or self.kind

    def as_dict(self):
        out = {"kind": self.kind, "claim": self.describe()}
        for key in ("side", "degree", "sign"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.kind in ("jacobi", "leibniz"):
            out["holds"] = self.holds
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CatalogEntry:
    name: str
    ctx: AlgebraContext
    derivations: Dict[str, Derivation]
    operation: DerivedOperation
    facts: List[Fact] = field(default_factory=list)
    dim_g: Optional[int] = None  # dimension of the Lie algebra generated, when known
    description: str = ""

    def bounds(self) -> List[BoundResult]:
        return applicable_bounds(self.operation, self.dim_g,
                                 rc_index=_rc_index(self.name))

    def as_dict(self):
        op = self.operation
        return {
            "name": self.name,
            "description": self.description,
            "variables": [{"name": n, "weight": w} for n, w in self.ctx.variables],
            "derivations": {
                D.name: {v: str(img) for v, img in zip(self.ctx.names, D.images) if img}
                for D in self.derivations.values()},
            "operation": {
                "arity": op.arity,
                "summands": [{"coeff": str(s.coeff),
                              "factors": [str(f) for f in s.factors]} for s in op.summands]},
            "orders": orders(op).as_dict(),
            "dim_g": self.dim_g,
            "bounds": [b.as_dict() for b in self.bounds()],
            "expected_facts": [f.as_dict() for f in self.facts],
        }


def _rc_index(name: str) -> Optional[int]:
    if name.startswith("rc(") and name.endswith(")"):
        return int(name[3:-1])
    return None


def applicable_bounds(op: DerivedOperation, dim_g: Optional[int] = None,
                      g_order: Optional[int] = None, rc_index: Optional[int] = None) -> List[BoundResult]:
    """Theorem bounds using word-length orders unless a g-order override is given."""
    m = orders(op).total_order
    out = []
    n = len(used_derivations(op))
    if n > 1:
        out.append(bound_fg(n, m))
    if dim_g is not None:
        out.append(bound_fd(dim_g, m if g_order is None else g_order))
    if rc_index is not None and rc_index >= 1:
        out.append(bound_rc(rc_index))
    return out


# -- algebra models -----------------------------------------------------------

def one_variable_model() -> Tuple[AlgebraContext, Derivation]:
    ctx = AlgebraContext.of("x")
    return ctx, Derivation.partial("d", ctx, "x")


def rc_model_1() -> Tuple[AlgebraContext, Derivation, Derivation]:
    """k[y], weight(y) = 2, W Euler, D(y) = y^2."""
    ctx = AlgebraContext.of("y", weights=[2])
    return ctx, Derivation.euler("W", ctx), Derivation("D", ctx, {"y": parse_polynomial("y^2", ctx)})


def rc_model_2() -> Tuple[AlgebraContext, Derivation, Derivation]:
    """k[y, z], weights (2, 4), W Euler, D(y) = z, D(z) = y z."""
    ctx = AlgebraContext.of("y", "z", weights=[2, 4])
    D = Derivation("D", ctx, {"y": parse_polynomial("z", ctx), "z": parse_polynomial("y*z", ctx)})
    return ctx, Derivation.euler("W", ctx), D


def heisenberg_model(n: int) -> Tuple[AlgebraContext, Dict[str, Derivation]]:
    """k[x_1..x_{2n+1}] with X_i = d_i, Y_i = d_{n+i} + x_i d_{2n+1}, Z = d_{2n+1}."""
    names = [f"x{i}" for i in range(1, 2 * n + 2)]
    ctx = AlgebraContext.of(*names)
    last = names[-1]
    derivs: Dict[str, Derivation] = {}
    for i in range(1, n + 1):
        derivs[f"X{i}"] = Derivation.partial(f"X{i}", ctx, names[i - 1])
        derivs[f"Y{i}"] = Derivation(f"Y{i}", ctx, {names[n + i - 1]: ctx.one(),
                                                   last: ctx.var(names[i - 1])})
    derivs["Z"] = Derivation.partial("Z", ctx, last)
    return ctx, derivs


def heisenberg_defects(derivs: Dict[str, Derivation], n: int) -> List[str]:
    """Relations among X_i, Y_i, Z that fail, as readable strings (empty when all hold)."""
    Z = derivs["Z"]
    zero = Derivation("0", Z.ctx, {})
    bad = []

    def expect(a, b, target):
        if not derivation_commutator(derivs[a], derivs[b]).same_action(target):
            bad.append(f"[{a},{b}]")

    for i in range(1, n + 1):
        expect(f"X{i}", "Z", zero)
        expect(f"Y{i}", "Z", zero)
        for j in range(1, n + 1):
            expect(f"X{i}", f"X{j}", zero)
            expect(f"Y{i}", f"Y{j}", zero)
            expect(f"X{i}", f"Y{j}", Z if i == j else zero)
    return bad


# -- entries ------------------------------------------------------------------

def _hamiltonian_rows(n: int):
    rows = []
    for i in range(1, n + 1):
        rows.append((1, [(f"X{i}",), (f"Y{i}",)]))
        rows.append((-1, [(f"Y{i}",), (f"X{i}",)]))
    return rows


def poisson(n: int = 1) -> CatalogEntry:
    names = [f"x{i}" for i in range(1, 2 * n + 1)]
    ctx = AlgebraContext.of(*names)
    derivs = {}
    for i in range(1, n + 1):
        derivs[f"X{i}"] = Derivation.partial(f"X{i}", ctx, names[i - 1])
        derivs[f"Y{i}"] = Derivation.partial(f"Y{i}", ctx, names[n + i - 1])
    op = DerivedOperation.from_words(f"poisson({n})", ctx, derivs, _hamiltonian_rows(n))
    facts = [Fact("jacobi"), Fact("leibniz"), Fact("symmetry", sign=-1)]
    return CatalogEntry(op.name, ctx, derivs, op, facts, dim_g=2 * n,
                        description="Poisson bracket on k[x_1..x_2n]")


def jacobi(n: int = 1) -> CatalogEntry:
    ctx, derivs = heisenberg_model(n)
    # Z-terms enter as g Z(f) - f Z(g); with the opposite sign the Jacobi identity fails
    rows = [(-1, [(), ("Z",)]), (1, [("Z",), ()])] + _hamiltonian_rows(n)
    op = DerivedOperation.from_words(f"jacobi({n})", ctx, derivs, rows)
    facts = [Fact("jacobi"), Fact("leibniz", holds=False), Fact("symmetry", sign=-1),
             Fact("heisenberg", note="Heisenberg commutation relations")]
    return CatalogEntry(op.name, ctx, derivs, op, facts, dim_g=2 * n + 1,
                        description="Jacobi bracket of the contact structure on k[x_1..x_2n+1]")


def mayer(n: int = 1) -> CatalogEntry:
    ctx, derivs = heisenberg_model(n)
    op = DerivedOperation.from_words(f"mayer({n})", ctx, derivs, _hamiltonian_rows(n))
    facts = [Fact("leibniz"), Fact("jacobi", holds=False), Fact("symmetry", sign=-1),
             Fact("heisenberg", note="Heisenberg commutation relations")]
    return CatalogEntry(op.name, ctx, derivs, op, facts, dim_g=2 * n + 1,
                        description="Mayer bracket with the contact derivations")


def _one_derivation(name, rows, facts, description) -> CatalogEntry:
    ctx, d = one_variable_model()
    op = DerivedOperation.from_words(name, ctx, {"d": d}, rows)
    return CatalogEntry(name, ctx, {"d": d}, op, facts, dim_g=1, description=description)


def _w(k: int):
    return ("d",) * k


def novikov() -> CatalogEntry:
    return _one_derivation(
        "novikov", [(1, [_w(0), _w(1)])],
        [Fact("standard", "right", 3), Fact("standard", "left", 4),
         Fact("novikov_axioms", note="left-symmetry and right-commutativity")],
        "Novikov product a.d(b) on k[x]")


def novikov_comm() -> CatalogEntry:
    return _one_derivation(
        "novikov_comm", [(1, [_w(0), _w(1)]), (-1, [_w(1), _w(0)])],
        [Fact("standard", "left", 5), Fact("symmetry", sign=-1)],
        "commutator a.d(b) - b.d(a)")


def novikov_anti() -> CatalogEntry:
    return _one_derivation(
        "novikov_anti", [(1, [_w(0), _w(1)]), (1, [_w(1), _w(0)])],
        [Fact("standard", "left", 4), Fact("symmetry", sign=1)],
        "anticommutator a.d(b) + b.d(a)")


def dzh_skew2() -> CatalogEntry:
    return _one_derivation(
        "dzh_skew2", [(1, [_w(0), _w(2)]), (-1, [_w(2), _w(0)])],
        [Fact("symmetry", sign=-1)], "a.d^2(b) - b.d^2(a)")


def dzh_skew12() -> CatalogEntry:
    return _one_derivation(
        "dzh_skew12", [(1, [_w(1), _w(2)]), (-1, [_w(2), _w(1)])],
        [Fact("symmetry", sign=-1)], "d(a).d^2(b) - d(b).d^2(a)")


def dzh_order3() -> CatalogEntry:
    return _one_derivation(
        "dzh_order3",
        [(1, [_w(3), _w(0)]), (-2, [_w(2), _w(1)]), (2, [_w(1), _w(2)]), (-1, [_w(0), _w(3)])],
        [Fact("symmetry", sign=-1)], "d^3(a)b - 2d^2(a)d(b) + 2d(a)d^2(b) - a.d^3(b)")


def dzh_0alia() -> CatalogEntry:
    return _one_derivation(
        "dzh_0alia",
        [(1, [_w(3), _w(0)]), (4, [_w(2), _w(1)]), (5, [_w(1), _w(2)]), (2, [_w(0), _w(3)])],
        [], "d^3(a)b + 4d^2(a)d(b) + 5d(a)d^2(b) + 2a.d^3(b)")


def dzh_star1() -> CatalogEntry:
    return _one_derivation(
        "dzh_star1", [(1, [_w(1), _w(2)])],
        [Fact("standard", "right", 4,
              note="empirical degree 4 is below the theorem bound 9")],
        "d(a).d^2(b)")


def dzh_star2(m: int = 1) -> CatalogEntry:
    ctx, d = one_variable_model()
    op = leibniz_expand_product_rule(d, m)
    return CatalogEntry(op.name, ctx, {"d": d}, op, [], dim_g=1,
                        description=f"-a.d^{m}(b) + d^{m}(a)b + d^{m}(ab)")


def dzh_star3() -> CatalogEntry:
    return _one_derivation(
        "dzh_star3", [(1, [_w(2), _w(0)]), (1, [_w(1), _w(1)])], [], "d(d(a)b)")


def twoder_skew() -> CatalogEntry:
    ctx = AlgebraContext.of("x", "y")
    derivs = {"d1": Derivation.partial("d1", ctx, "x"), "d2": Derivation.partial("d2", ctx, "y")}
    op = DerivedOperation.from_words(
        "twoder_skew", ctx, derivs, [(1, [("d1",), ("d2",)]), (-1, [("d2",), ("d1",)])])
    return CatalogEntry(op.name, ctx, derivs, op,
                        [Fact("standard", "left", 16), Fact("symmetry", sign=-1)], dim_g=2,
                        description="d1(a)d2(b) - d1(b)d2(a) on k[x,y]")


def almost_poisson() -> CatalogEntry:
    ctx = AlgebraContext.of("x1", "x2", "x3")
    x1, x2, x3 = ctx.gens()
    op = bivector_bracket({(0, 1): x3, (0, 2): -x2, (1, 2): x1}, ctx, name="almost_poisson")
    return CatalogEntry(op.name, ctx, op.derivations, op,
                        [Fact("jacobi"), Fact("leibniz"), Fact("symmetry", sign=-1)],
                        description="bivector bracket of the so(3) Lie-Poisson structure")


def rc(n: int = 1) -> CatalogEntry:
    ctx, W, D = rc_model_2()
    op = rankin_cohen(n, W, D)
    facts = [Fact("symmetry", sign=(-1) ** n),
             Fact("commutator", note="[W,D] = 2D")]
    if n >= 1:
        d = bound_rc(n).d
        facts += [Fact("standard", "left", d), Fact("standard", "right", d)]
    if n == 1:
        facts.append(Fact("rc_weight_identity",
                          note="[[a,b]_1,W(c)]_0 + [[b,c]_1,W(a)]_0 + [[c,a]_1,W(b)]_0 = 0"))
    return CatalogEntry(op.name, ctx, {"W": W, "D": D}, op, facts, dim_g=2,
                        description=f"generalized Rankin-Cohen bracket [-,-]_{n} on rc-model-2")


_BUILDERS: Dict[str, Callable[..., CatalogEntry]] = {
    "poisson": poisson, "jacobi": jacobi, "mayer": mayer,
    "novikov": novikov, "novikov_comm": novikov_comm, "novikov_anti": novikov_anti,
    "dzh_skew2": dzh_skew2, "dzh_skew12": dzh_skew12, "dzh_order3": dzh_order3,
    "dzh_0alia": dzh_0alia, "dzh_star1": dzh_star1, "dzh_star2": dzh_star2,
    "dzh_star3": dzh_star3, "twoder_skew": twoder_skew, "almost_poisson": almost_poisson,
    "rc": rc,
}
_PARAMETRIZED = {"poisson", "jacobi", "mayer", "dzh_star2", "rc"}


def catalog_names() -> List[str]:
    return list(_BUILDERS)


def get_entry(key: str) -> CatalogEntry:
    """Look up ``name`` or ``name:param`` (e.g. ``rc:2``, ``poisson:2``)."""
    name, _, param = key.partition(":")
    builder = _BUILDERS.get(name)
    if builder is None:
        raise KeyError(f"unknown catalog operation {name!r}; known: {', '.join(_BUILDERS)}")
    if param:
        if name not in _PARAMETRIZED:
            raise ValueError(f"{name} takes no parameter")
        return builder(int(param))
    return builder()


def catalog_list() -> List[CatalogEntry]:
    return [builder() for builder in _BUILDERS.values()]


# -- checks -------------------------------------------------------------------

def rc_weight_identity_check(a: Polynomial, b: Polynomial, c: Polynomial,
                             model=None) -> Polynomial:
    """[a,b]_1 W(c) + [b,c]_1 W(a) + [c,a]_1 W(b) in rc-model-2; expected to vanish."""
    for p in (a, b, c):
        if not is_homogeneous(p):
            raise ValueError(f"argument {p} is not weight-homogeneous")
    _, W, D = model or rc_model_2()
    br = rankin_cohen(1, W, D)
    return br(a, b) * W(c) + br(b, c) * W(a) + br(c, a) * W(b)


def novikov_defects(op: DerivedOperation, a, b, c) -> Tuple[Polynomial, Polynomial]:
    """(left-symmetry defect, right-commutativity defect) of a binary operation."""
    left = (op(op(a, b), c) - op(a, op(b, c))) - (op(op(b, a), c) - op(b, op(a, c)))
    right = op(op(a, b), c) - op(op(a, c), b)
    return left, right


def check_fact(entry: CatalogEntry, fact: Fact, sampler: Sampler = Sampler(),
               limits: Limits = DEFAULT_LIMITS) -> Tuple[bool, str]:
    """Check one expected fact; returns (passed, detail)."""
    op, ctx = entry.operation, entry.ctx
    if fact.kind == "standard":
        s = sampler
        if _rc_index(entry.name) is not None:
            s = Sampler(s.master_seed, s.max_degree, s.coeff_bound, s.trials, homogeneous=True)
        rep = verify(op, Side(fact.side), fact.degree, Mode.RANDOM, s, limits)
        return rep.verdict is not Verdict.REFUTED, rep.verdict.value
    if fact.kind in ("jacobi", "leibniz"):
        fn = jacobiator if fact.kind == "jacobi" else leibnizator
        if fact.holds:
            for t in range(sampler.trials):
                value = fn(op, *sampler.draw(ctx, 3, t))
                if value:
                    return False, f"nonzero {fact.kind} defect {value}"
            return True, f"zero on {sampler.trials} random triples"
        found = find_witness(lambda a, b, c: fn(op, a, b, c), ctx)
        if found is None:
            return False, "no witness among small monomials"
        args, value = found
        return True, f"witness {[str(x) for x in args]} -> {value}"
    if fact.kind == "symmetry":
        for t in range(sampler.trials):
            a, b = sampler.draw(ctx, 2, t)
            if op(a, b) != op(b, a).scale(fact.sign):
                return False, f"symmetry fails on ({a}, {b})"
        return True, "ok"
    if fact.kind == "novikov_axioms":
        for t in range(sampler.trials):
            left, right = novikov_defects(op, *sampler.draw(ctx, 3, t))
            if left or right:
                return False, "Novikov identity fails"
        return True, "ok"
    if fact.kind == "heisenberg":
        n = sum(1 for k in entry.derivations if k.startswith("X"))
        bad = heisenberg_defects(entry.derivations, n)
        return not bad, ", ".join(bad) or "ok"
    if fact.kind == "commutator":
        W, D = entry.derivations["W"], entry.derivations["D"]
        comm = derivation_commutator(W, D)
        target = Derivation("2D", ctx, {v: img.scale(2) for v, img in zip(ctx.names, D.images)})
        return comm.same_action(target), str(comm)
    if fact.kind == "rc_weight_identity":
        s = Sampler(sampler.master_seed, sampler.max_degree, sampler.coeff_bound,
                    sampler.trials, homogeneous=True)
        for t in range(s.trials):
            value = rc_weight_identity_check(*s.draw(ctx, 3, t))
            if value:
                return False, f"nonzero value {value}"
        return True, "ok"
    raise ValueError(f"no checker for fact kind {fact.kind!r}")


def rc_weight_consistency(n: int, a: Polynomial, b: Polynomial) -> bool:
    """rankin_cohen(n) agrees with the weight formula on homogeneous a, b."""
    _, W, D = rc_model_2()
    return rankin_cohen(n, W, D)(a, b) == rankin_cohen_weight_formula(n, D, a, b)

