"""Identity candidates as term trees, their evaluation, and verdicts.

An identity candidate is an expression tree over numbered variables with
products, derivations, the six derived products, the star operator, scalar
multiples and sums.  Evaluating the tree on distinct free generators and
testing the normal form for zero decides whether the candidate vanishes in
every differential perm algebra: any assignment of values extends to an
endomorphism of the free algebra commuting with all the operations, so the
generator substitution is the universal one (this is itself a tested
property, not an act of faith).

Two evaluation modes exist: the ordinary one, where the derivation acts on
normal forms, and a δ-parametric one, where a derivation node is pushed
through the syntactic product structure with the rule
D(uv) = δ(D(u)v + uD(v)) and bottoms out at generator leaves.  In the
second mode a zero normal form over Q[δ] certifies the identity in every
perm algebra with a δ-derivation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Union

from .algebra import (
    CTX_DELTA,
    CTX_Q,
    AlgebraError,
    Context,
    DeltaPoly,
    DELTA,
    DiffPermPoly,
    Monomial,
    Scalar,
    _coerce_scalar,
    derived_product,
    monomial_key,
)


class NonMultilinearError(AlgebraError):
    """The expansion of an identity candidate is not multilinear."""


# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------


class Expr:
    """Base node; arithmetic operators build trees, nothing is evaluated."""

    __slots__ = ()

    def __add__(self, other: "Expr") -> "Expr":
        terms = []
        for e in (self, other):
            terms.extend(e.terms if isinstance(e, Sum) else (e,))
        return Sum(tuple(terms))

    def __sub__(self, other: "Expr") -> "Expr":
        return self + Scale(-1, other)

    def __mul__(self, other: "Expr") -> "Expr":
        return Mul(self, other)

    def __neg__(self) -> "Expr":
        return Scale(-1, self)


@dataclass(frozen=True, slots=True)
class Var(Expr):
    index: int


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True, slots=True)
class Der(Expr):
    body: Expr
    axis: int = 1


@dataclass(frozen=True, slots=True)
class DerOp(Expr):
    tag: str
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True, slots=True)
class Star(Expr):
    body: Expr


@dataclass(frozen=True, slots=True)
class Scale(Expr):
    coeff: Union[int, Fraction, DeltaPoly]
    body: Expr


@dataclass(frozen=True, slots=True)
class Sum(Expr):
    terms: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Assoc(Expr):
    """Associator (a, b, c) = (a · b) · c - a · (b · c) of a derived product."""

    tag: str
    a: Expr
    b: Expr
    c: Expr


@dataclass(frozen=True, slots=True)
class Bracket(Expr):
    """Readability alias for a bracket-like derived product."""

    tag: str
    lhs: Expr
    rhs: Expr


def v(i: int) -> Var:
    return Var(i)


def desugar(e: Expr) -> Expr:
    """Expand derived products, associators and brackets into the primitive
    nodes Var / Mul / Der / Scale / Sum / Star."""
    if isinstance(e, Var):
        return e
    if isinstance(e, Mul):
        return Mul(desugar(e.lhs), desugar(e.rhs))
    if isinstance(e, Der):
        return Der(desugar(e.body), e.axis)
    if isinstance(e, Star):
        return Star(desugar(e.body))
    if isinstance(e, Scale):
        return Scale(e.coeff, desugar(e.body))
    if isinstance(e, Sum):
        return Sum(tuple(desugar(t) for t in e.terms))
    if isinstance(e, Bracket):
        return desugar(DerOp(e.tag, e.lhs, e.rhs))
    if isinstance(e, Assoc):
        return desugar(DerOp(e.tag, DerOp(e.tag, e.a, e.b), e.c)
                       + Scale(-1, DerOp(e.tag, e.a, DerOp(e.tag, e.b, e.c))))
    if isinstance(e, DerOp):
        a, b = desugar(e.lhs), desugar(e.rhs)
        tag = e.tag
        if tag == "prec":
            return Mul(a, Der(b))
        if tag == "succ":
            return Mul(Der(a), b)
        if tag == "loz":
            return Sum((Mul(a, Der(b)), Mul(b, Der(a))))
        if tag == "bullet":
            return Sum((Mul(Der(a), b), Mul(a, Der(b))))
        if tag == "diamond":
            return Sum((Mul(a, Der(b)), Scale(-1, Mul(b, Der(a)))))
        if tag == "circ":
            return Sum((Mul(Der(a), b), Scale(-1, Mul(a, Der(b)))))
        raise AlgebraError(f"unknown derived product tag: {tag!r}")
    raise AlgebraError(f"not an expression node: {e!r}")


def substitute_delta(e: Expr, value) -> Expr:
    """Replace delta-polynomial scalar coefficients by their value at a
    concrete rational delta."""
    if isinstance(e, Scale):
        c = e.coeff
        if isinstance(c, DeltaPoly):
            c = c.subs(value)
        return Scale(c, substitute_delta(e.body, value))
    if isinstance(e, Mul):
        return Mul(substitute_delta(e.lhs, value), substitute_delta(e.rhs, value))
    if isinstance(e, Der):
        return Der(substitute_delta(e.body, value), e.axis)
    if isinstance(e, Star):
        return Star(substitute_delta(e.body, value))
    if isinstance(e, Sum):
        return Sum(tuple(substitute_delta(t, value) for t in e.terms))
    if isinstance(e, DerOp):
        return DerOp(e.tag, substitute_delta(e.lhs, value),
                     substitute_delta(e.rhs, value))
    if isinstance(e, Bracket):
        return Bracket(e.tag, substitute_delta(e.lhs, value),
                       substitute_delta(e.rhs, value))
    if isinstance(e, Assoc):
        return Assoc(e.tag, substitute_delta(e.a, value),
                     substitute_delta(e.b, value), substitute_delta(e.c, value))
    return e


def used_vars(e: Expr) -> set[int]:
    out: set[int] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.index)
        elif isinstance(node, Mul):
            stack += [node.lhs, node.rhs]
        elif isinstance(node, (Der, Star, Scale)):
            stack.append(node.body)
        elif isinstance(node, Sum):
            stack.extend(node.terms)
        elif isinstance(node, (DerOp, Bracket)):
            stack += [node.lhs, node.rhs]
        elif isinstance(node, Assoc):
            stack += [node.a, node.b, node.c]
    return out


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _check_subst(subst: Mapping[int, DiffPermPoly], ctx: Context):
    for i, p in subst.items():
        if p.ctx != ctx:
            raise AlgebraError(f"substitution for x{i} is from context {p.ctx}, "
                               f"expected {ctx}")


def eval_expr(e: Expr, subst: Mapping[int, DiffPermPoly],
              ctx: Context = CTX_Q) -> DiffPermPoly:
    """Structural evaluation with the ordinary derivation.

    Every variable must be bound; derived products and star require a
    single-derivation rational context.
    """
    if ctx.delta:
        raise AlgebraError("δ context: use eval_delta")
    _check_subst(subst, ctx)
    cache: dict[int, DiffPermPoly] = {}

    def rec(node: Expr) -> DiffPermPoly:
        got = cache.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Var):
            if node.index not in subst:
                raise AlgebraError(f"unbound variable x{node.index}")
            val = subst[node.index]
        elif isinstance(node, Mul):
            val = rec(node.lhs) * rec(node.rhs)
        elif isinstance(node, Der):
            val = rec(node.body).derive(node.axis)
        elif isinstance(node, (DerOp, Bracket)):
            if ctx.arity != 1:
                raise AlgebraError("derived products require a single derivation")
            val = derived_product(node.tag, rec(node.lhs), rec(node.rhs))
        elif isinstance(node, Assoc):
            if ctx.arity != 1:
                raise AlgebraError("derived products require a single derivation")
            a, b, c = rec(node.a), rec(node.b), rec(node.c)
            t = node.tag
            val = (derived_product(t, derived_product(t, a, b), c)
                   - derived_product(t, a, derived_product(t, b, c)))
        elif isinstance(node, Star):
            val = rec(node.body).star()
        elif isinstance(node, Scale):
            val = rec(node.body).scale(node.coeff)
        elif isinstance(node, Sum):
            val = DiffPermPoly.zero(ctx)
            for t in node.terms:
                val = val + rec(t)
        else:
            raise AlgebraError(f"not an expression node: {node!r}")
        cache[id(node)] = val
        return val

    return rec(e)


def eval_delta(e: Expr, subst: Mapping[int, DiffPermPoly],
               ctx: Context = CTX_DELTA) -> DiffPermPoly:
    """Evaluation with the δ-scaled Leibniz rule D(uv) = δ(D(u)v + uD(v)).

    Derivation nodes are pushed through the syntactic product structure of
    the tree; k stacked derivations crossing one product node contribute
    δ^k and a binomial spread.  At a leaf, D just raises the derivative
    order of the generator.  Substituting anything other than a scalar
    multiple of a single generator under a derivation is rejected: the rule
    does not act on flattened monomials.
    """
    if not ctx.delta:
        raise AlgebraError("eval_delta requires a δ context")
    if ctx.arity != 1:
        raise AlgebraError("δ evaluation is single-derivation")
    _check_subst(subst, ctx)
    tree = desugar(e)
    cache: dict[tuple[int, int], DiffPermPoly] = {}
    delta_pows = [DeltaPoly.const(1), DELTA]

    def dpow(k: int) -> DeltaPoly:
        while len(delta_pows) <= k:
            delta_pows.append(delta_pows[-1] * DELTA)
        return delta_pows[k]

    def rec(node: Expr, k: int) -> DiffPermPoly:
        key = (id(node), k)
        got = cache.get(key)
        if got is not None:
            return got
        if isinstance(node, Var):
            if node.index not in subst:
                raise AlgebraError(f"unbound variable x{node.index}")
            val = subst[node.index]
            if k:
                if len(val.terms) != 1:
                    raise AlgebraError("ambiguous δ-derivation: derivative of a "
                                       "non-monomial substitution")
                (m, c), = val.terms.items()
                if m.degree != 1:
                    raise AlgebraError("ambiguous δ-derivation: derivative of a "
                                       "flattened product")
                val = DiffPermPoly(ctx, {Monomial((), m.last.derived(0, k)): c},
                                   _owned=True)
        elif isinstance(node, Der):
            if node.axis != 1:
                raise AlgebraError("δ evaluation is single-derivation")
            val = rec(node.body, k + 1)
        elif isinstance(node, Mul):
            if k == 0:
                val = rec(node.lhs, 0) * rec(node.rhs, 0)
            else:
                val = DiffPermPoly.zero(ctx)
                for i in range(k + 1):
                    term = rec(node.lhs, i) * rec(node.rhs, k - i)
                    val = val + term.scale(comb(k, i))
                val = val.scale(dpow(k))
        elif isinstance(node, Scale):
            val = rec(node.body, k).scale(_coerce_scalar(node.coeff, ctx))
        elif isinstance(node, Sum):
            val = DiffPermPoly.zero(ctx)
            for t in node.terms:
                val = val + rec(t, k)
        elif isinstance(node, Star):
            raise AlgebraError("star is not defined in a δ context")
        else:
            raise AlgebraError(f"not a primitive node: {node!r}")
        cache[key] = val
        return val

    return rec(tree, 0)


# ---------------------------------------------------------------------------
# verdicts and identity checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity check; a surviving term witnesses failure."""

    is_identity: bool
    witness: tuple[Monomial, Scalar] | None = None


def _generators(arity_vars: int, ctx: Context) -> dict[int, DiffPermPoly]:
    return {i: DiffPermPoly.generator(i, 0, ctx)
            for i in range(1, arity_vars + 1)}


def check_identity(e: Expr, nvars: int, ctx: Context = CTX_Q) -> Verdict:
    """Decide whether ``e = 0`` holds identically, by substituting distinct
    generators for x1..x_nvars and expanding.

    The candidate must be multilinear: each monomial of the expansion has to
    contain each of the variables exactly once.  Non-multilinear candidates
    are rejected rather than multilinearized.
    """
    vs = used_vars(e)
    if vs and max(vs) > nvars:
        raise AlgebraError(f"expression uses x{max(vs)} beyond arity {nvars}")
    subst = _generators(nvars, ctx)
    poly = eval_delta(e, subst, ctx) if ctx.delta else eval_expr(e, subst, ctx)
    want = tuple(range(1, nvars + 1))
    for m in poly.terms:
        seen = tuple(sorted(s.var for s in m.factors))
        if seen != want:
            raise NonMultilinearError(
                f"expansion is not multilinear in x1..x{nvars}: "
                f"monomial variables {seen}")
    if poly.is_zero():
        return Verdict(True, None)
    m, c = min(poly.terms.items(), key=lambda mc: monomial_key(mc[0]))
    return Verdict(False, (m, c))


# ---------------------------------------------------------------------------
# formal vector fields (coefficients times formal derivations)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalVectorField:
    """Sum of coefficient polynomials attached to formal derivation slots."""

    ctx: Context
    terms: tuple[tuple[int, DiffPermPoly], ...]

    @classmethod
    def make(cls, pairs: list[tuple[DiffPermPoly, int]],
             ctx: Context) -> "FormalVectorField":
        acc: dict[int, DiffPermPoly] = {}
        for coeff, idx in pairs:
            if coeff.ctx != ctx:
                raise AlgebraError("vector field coefficient context mismatch")
            if not 1 <= idx <= ctx.arity:
                raise AlgebraError("derivation index out of range")
            acc[idx] = acc.get(idx, DiffPermPoly.zero(ctx)) + coeff
        terms = tuple((i, p) for i, p in sorted(acc.items()) if not p.is_zero())
        return cls(ctx, terms)

    def __add__(self, other: "FormalVectorField") -> "FormalVectorField":
        pairs = [(p, i) for i, p in self.terms] + [(p, i) for i, p in other.terms]
        return FormalVectorField.make(pairs, self.ctx)

    def __sub__(self, other: "FormalVectorField") -> "FormalVectorField":
        pairs = [(p, i) for i, p in self.terms] + [(-p, i) for i, p in other.terms]
        return FormalVectorField.make(pairs, self.ctx)

    def is_zero(self) -> bool:
        return not self.terms


def vf_leibniz_bracket(X: FormalVectorField,
                       Y: FormalVectorField) -> FormalVectorField:
    """[a D_i, b D_j] = D_j(a) b D_i - a D_i(b) D_j, extended bilinearly."""
    pairs = []
    for i, a in X.terms:
        for j, b in Y.terms:
            pairs.append((a.derive(j) * b, i))
            pairs.append((-(a * b.derive(i)), j))
    return FormalVectorField.make(pairs, X.ctx)


def vf_prec(X: FormalVectorField, Y: FormalVectorField) -> FormalVectorField:
    """(a D_i) prec (b D_j) = (a D_i(b)) D_j, extended bilinearly."""
    pairs = []
    for i, a in X.terms:
        for j, b in Y.terms:
            pairs.append((a * b.derive(i), j))
    return FormalVectorField.make(pairs, X.ctx)


def _vf_witness(Z: FormalVectorField) -> tuple[Monomial, Scalar] | None:
    for _, p in Z.terms:
        if not p.is_zero():
            m, c = min(p.terms.items(), key=lambda mc: monomial_key(mc[0]))
            return (m, c)
    return None


# ---------------------------------------------------------------------------
# built-in identity suites
# ---------------------------------------------------------------------------


def _perm_sign(perm: tuple[int, ...]) -> int:
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv % 2 else 1


def standard_identity(tag: str, n: int) -> Expr:
    """Standard identity of degree n for a bracket: the alternating sum over
    permutations of the first n-1 arguments of the right-nested products

        x_{s(1)} . (x_{s(2)} . ( ... . (x_{s(n-1)} . x_n)))

    with the innermost argument fixed.  Each bracketed summand expands into
    up to n! monomials of n factors.  Suffix subtrees are shared so
    evaluation caches hit."""
    memo: dict[tuple[int, ...], Expr] = {}

    def chain(rest: tuple[int, ...]) -> Expr:
        got = memo.get(rest)
        if got is None:
            if len(rest) == 1:
                got = Var(rest[0])
            else:
                got = DerOp(tag, Var(rest[0]), chain(rest[1:]))
            memo[rest] = got
        return got

    terms = []
    for perm in itertools.permutations(range(1, n)):
        e = chain(perm + (n,))
        s = _perm_sign(perm)
        terms.append(e if s == 1 else Scale(-1, e))
    return Sum(tuple(terms))


def _tortken_loz() -> Expr:
    a, b, c, d = v(1), v(2), v(3), v(4)
    t = "loz"
    return (DerOp(t, DerOp(t, a, b), DerOp(t, c, d))
            - DerOp(t, DerOp(t, a, d), DerOp(t, b, c))
            + DerOp(t, Assoc(t, a, b, c), d)
            - DerOp(t, Assoc(t, a, d, c), b))


def _degree5_loz() -> Expr:
    a, b, c, d, e = v(1), v(2), v(3), v(4), v(5)
    t = "loz"

    def chain(*args: Expr) -> Expr:
        out = args[0]
        for nxt in args[1:]:
            out = DerOp(t, out, nxt)
        return out

    return (Scale(2, chain(b, a, c, d, e)) - chain(b, a, c, e, d)
            + Scale(-2, chain(b, a, d, c, e)) + chain(b, a, d, e, c)
            - chain(c, a, b, d, e) + chain(c, a, b, e, d)
            + chain(c, a, d, e, b) - chain(c, a, e, b, d)
            + chain(d, a, b, c, e) - chain(d, a, b, e, c)
            - chain(d, a, c, e, b) + chain(d, a, e, b, c)
            + chain(e, a, b, c, d) - chain(e, a, b, d, c))


def _tortken_di_1() -> Expr:
    a, b, c, d = v(1), v(2), v(3), v(4)
    t = "bullet"
    return (DerOp(t, DerOp(t, a, b), DerOp(t, c, d))
            - DerOp(t, DerOp(t, c, b), DerOp(t, a, d))
            + DerOp(t, Assoc(t, a, b, c), d)
            + DerOp(t, b, DerOp(t, a, DerOp(t, c, d))
                    - DerOp(t, c, DerOp(t, a, d))))


def _tortken_di_2() -> Expr:
    a, b, c, d = v(1), v(2), v(3), v(4)
    t = "bullet"
    return (DerOp(t, DerOp(t, a, b), DerOp(t, c, d))
            - DerOp(t, DerOp(t, a, c), DerOp(t, b, d))
            - DerOp(t, b, Assoc(t, a, c, d))
            + DerOp(t, c, Assoc(t, a, b, d)))


def _jacobi(tag: str) -> Expr:
    a, b, c = v(1), v(2), v(3)
    return (DerOp(tag, DerOp(tag, a, b), c)
            + DerOp(tag, DerOp(tag, b, c), a)
            + DerOp(tag, DerOp(tag, c, a), b))


def _delta_leibniz() -> Expr:
    a, b, c = v(1), v(2), v(3)
    t = "circ"
    return (DerOp(t, DerOp(t, a, b), c)
            - DerOp(t, a, DerOp(t, b, c))
            + DerOp(t, b, DerOp(t, a, c)))


def _delta_transposed() -> Expr:
    # (δ+1) x {y,z} = {xy, z} + {y, xz} with {a,b} = D(a)b - aD(b)
    xv, yv, zv = v(1), v(2), v(3)
    br = DerOp("circ", yv, zv)
    lhs_core = Mul(xv, br)
    return (Scale(DELTA, lhs_core) + lhs_core
            - DerOp("circ", Mul(xv, yv), zv)
            - DerOp("circ", yv, Mul(xv, zv)))


def _w_formal_case(kind: str) -> Verdict:
    """Left Leibniz law or pre-Lie associator symmetry for formal vector
    fields with free-generator coefficients, over all 27 derivation-index
    triples in a three-derivation context."""
    ctx = Context(3, False)
    a = DiffPermPoly.generator(1, (0, 0, 0), ctx)
    b = DiffPermPoly.generator(2, (0, 0, 0), ctx)
    c = DiffPermPoly.generator(3, (0, 0, 0), ctx)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            for k in (1, 2, 3):
                X = FormalVectorField.make([(a, i)], ctx)
                Y = FormalVectorField.make([(b, j)], ctx)
                Z = FormalVectorField.make([(c, k)], ctx)
                if kind == "leibniz":
                    lhs = vf_leibniz_bracket(vf_leibniz_bracket(X, Y), Z)
                    rhs = (vf_leibniz_bracket(X, vf_leibniz_bracket(Y, Z))
                           - vf_leibniz_bracket(Y, vf_leibniz_bracket(X, Z)))
                else:
                    axy = vf_prec(vf_prec(X, Y), Z) - vf_prec(X, vf_prec(Y, Z))
                    ayx = vf_prec(vf_prec(Y, X), Z) - vf_prec(Y, vf_prec(X, Z))
                    lhs, rhs = axy, ayx
                diff = lhs - rhs
                if not diff.is_zero():
                    return Verdict(False, _vf_witness(diff))
    return Verdict(True, None)


@dataclass(frozen=True)
class SuiteCase:
    name: str
    expected: bool
    nvars: int = 0
    expr: Expr | None = None
    ctx: Context = CTX_Q
    runner: Callable[[], Verdict] | None = None

    def run(self) -> Verdict:
        if self.runner is not None:
            return self.runner()
        return check_identity(self.expr, self.nvars, self.ctx)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    expected: bool
    verdict: Verdict

    @property
    def ok(self) -> bool:
        return self.verdict.is_identity == self.expected


SUITE_IDS = ("a", "b", "c", "d", "e", "f", "g", "h")


def suite_cases(suite_id: str) -> list[SuiteCase]:
    if suite_id == "a":
        comm = DerOp("loz", v(1), v(2)) - DerOp("loz", v(2), v(1))
        return [
            SuiteCase("loz-commutative", True, 2, comm),
            SuiteCase("loz-tortken", True, 4, _tortken_loz()),
            SuiteCase("loz-degree5", True, 5, _degree5_loz()),
        ]
    if suite_id == "b":
        lc = (DerOp("bullet", DerOp("bullet", v(1), v(2)), v(3))
              - DerOp("bullet", DerOp("bullet", v(2), v(1)), v(3)))
        return [
            SuiteCase("bullet-left-comm", True, 3, lc),
            SuiteCase("bullet-tortken-di-1", True, 4, _tortken_di_1()),
            SuiteCase("bullet-tortken-di-2", True, 4, _tortken_di_2()),
        ]
    if suite_id == "c":
        anti = DerOp("diamond", v(1), v(2)) + DerOp("diamond", v(2), v(1))
        return [
            SuiteCase("diamond-anticomm", True, 2, anti),
            SuiteCase("diamond-jacobi", True, 3, _jacobi("diamond")),
            SuiteCase("diamond-std6", True, 6, standard_identity("diamond", 6)),
            SuiteCase("diamond-std5", False, 5, standard_identity("diamond", 5)),
        ]
    if suite_id == "d":
        sym = Assoc("prec", v(1), v(2), v(3)) - Assoc("prec", v(2), v(1), v(3))
        return [SuiteCase("prec-pre-lie", True, 3, sym)]
    if suite_id == "e":
        return [SuiteCase("delta-leibniz", True, 3, _delta_leibniz(),
                          ctx=CTX_DELTA)]
    if suite_id == "f":
        return [SuiteCase("delta-transposed", True, 3, _delta_transposed(),
                          ctx=CTX_DELTA)]
    if suite_id == "g":
        return [SuiteCase("formal-W-leibniz", True,
                          runner=lambda: _w_formal_case("leibniz"))]
    if suite_id == "h":
        return [SuiteCase("formal-W-pre-lie", True,
                          runner=lambda: _w_formal_case("prelie"))]
    raise AlgebraError(f"unknown suite: {suite_id!r}")


def run_suite(suite_id: str) -> list[SuiteResult]:
    return [SuiteResult(c.name, c.expected, c.run())
            for c in suite_cases(suite_id)]


def run_all_suites() -> list[tuple[str, list[SuiteResult]]]:
    return [(sid, run_suite(sid)) for sid in SUITE_IDS]
