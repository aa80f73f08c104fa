"""Exact arithmetic in free differential perm algebras.

A perm algebra is an associative algebra satisfying the left-commutative
law (a b) c = (b a) c.  Consequently a monomial is determined by the
multiset of all factors except the final one, plus the final factor; we
keep the left part sorted and that sorted word is the canonical form.
Generators x_k carry formal derivative multi-indices, one slot per
derivation of the ambient context (one slot in the usual single-derivation
setting).

All coefficient arithmetic is exact: plain rationals, or univariate
rational polynomials in a formal parameter delta for computations with a
delta-scaled Leibniz rule.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union


class AlgebraError(ValueError):
    """Raised for invalid algebra operations (context mismatch, bad input)."""


# ---------------------------------------------------------------------------
# contexts and scalars
# ---------------------------------------------------------------------------


class Context(NamedTuple):
    """Ambient setting of a computation: derivation arity and scalar domain.

    ``arity`` is the number of commuting formal derivations; ``delta`` selects
    rational-polynomial coefficients in the formal parameter delta instead of
    plain rationals.  Values from different contexts never mix silently.
    """

    arity: int = 1
    delta: bool = False


#: plain rationals, one derivation
CTX_Q = Context(1, False)
#: coefficients in Q[delta], one delta-derivation
CTX_DELTA = Context(1, True)


class DeltaPoly:
    """A univariate polynomial in the formal parameter delta over Q.

    Immutable.  Interoperates with ``int`` and ``Fraction`` (constants embed
    canonically into Q[delta]).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction helpers

    @classmethod
    def const(cls, c) -> "DeltaPoly":
        return cls((c,))

    @classmethod
    def _lift(cls, other):
        if isinstance(other, DeltaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls((other,))
        return None

    # -- ring operations

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return DeltaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return DeltaPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return DeltaPoly(out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def subs(self, value):
        """Evaluate at a concrete rational value of delta."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __repr__(self) -> str:
        return f"DeltaPoly({self.coeffs!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                head = format_scalar(c)
            else:
                var = "δ" if k == 1 else f"δ^{k}"
                if c == 1:
                    head = var
                elif c == -1:
                    head = f"-{var}"
                else:
                    head = f"{format_scalar(c)}*{var}"
            parts.append(head)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


#: the formal parameter itself
DELTA = DeltaPoly((0, 1))

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, DeltaPoly]


def _coerce_scalar(c, ctx: Context) -> Scalar:
    """Admit a scalar into the coefficient domain of ``ctx`` or fail."""
    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, DeltaPoly):
        if not ctx.delta:
            raise AlgebraError("delta coefficient in a rational context")
        return c
    raise AlgebraError(f"not an exact scalar: {c!r}")


def format_scalar(c) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# symbols and monomials
# ---------------------------------------------------------------------------


class Symbol(NamedTuple):
    """One differential generator: variable index plus derivative multi-index.

    Symbols order lexicographically by (var, dord); that order is the
    canonical order used for monomial normal forms.
    """

    var: int
    dord: tuple[int, ...]

    def derived(self, axis: int = 0, times: int = 1) -> "Symbol":
        d = list(self.dord)
        d[axis] += times
        return Symbol(self.var, tuple(d))

    @property
    def order(self) -> int:
        return sum(self.dord)


def symbol(var: int, order: Union[int, Sequence[int]] = 0, arity: int = 1) -> Symbol:
    """Build a generator symbol; ``order`` is an int (single derivation) or a
    full multi-index of length ``arity``."""
    if var < 1:
        raise AlgebraError("variable index must be >= 1")
    if isinstance(order, int):
        if order < 0:
            raise AlgebraError("derivative order must be >= 0")
        if arity == 1:
            return Symbol(var, (order,))
        if order == 0:
            return Symbol(var, (0,) * arity)
        raise AlgebraError("scalar order is ambiguous for arity > 1")
    dord = tuple(order)
    if len(dord) != arity or any(s < 0 for s in dord):
        raise AlgebraError("bad derivative multi-index")
    return Symbol(var, dord)


class Monomial(NamedTuple):
    """Canonical basis monomial: sorted left factors plus a final factor."""

    left: tuple[Symbol, ...]
    last: Symbol

    @property
    def degree(self) -> int:
        return len(self.left) + 1

    @property
    def factors(self) -> tuple[Symbol, ...]:
        return self.left + (self.last,)


def normalize(raw: Sequence[Symbol]) -> Monomial:
    """Canonical form of a factor sequence: sort everything but the last."""
    if not raw:
        raise AlgebraError("empty monomial")
    return Monomial(tuple(sorted(raw[:-1])), raw[-1])


def monomial_key(m: Monomial):
    """Total order on monomials: degree, then the canonical factor sequence."""
    return (len(m.left), m.left, m.last)


def grade(m: Monomial, arity: int = 1) -> tuple[int, int]:
    """Degree and weight of a basis monomial.

    The weight grading gives every underived generator weight -1 and raises
    weight by one per derivative, so a monomial's weight is the total
    derivative order minus the degree.  It is only defined in the
    single-derivation setting.
    """
    if arity != 1:
        raise AlgebraError("weight is defined only for a single derivation")
    deg = m.degree
    return deg, sum(s.order for s in m.factors) - deg


def format_symbol(s: Symbol) -> str:
    if len(s.dord) == 1:
        k = s.dord[0]
        if k == 0:
            return f"x{s.var}"
        if k <= 3:
            return f"x{s.var}" + "'" * k
        return f"x{s.var}^({k})"
    if any(s.dord):
        return f"x{s.var}^({','.join(map(str, s.dord))})"
    return f"x{s.var}"


def format_monomial(m: Monomial) -> str:
    return " ".join(format_symbol(s) for s in m.factors)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class DiffPermPoly:
    """An element of the free differential perm algebra, in normal form.

    Stored as a finite map from canonical monomials to nonzero exact
    scalars.  Instances are immutable by convention: no method mutates
    ``terms`` after construction, so values can be shared freely.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Mapping[Monomial, Scalar], _owned: bool = False):
        if not _owned:
            terms = {m: c for m, c in terms.items() if c}
        self.ctx = ctx
        self.terms = terms

    # -- constructors

    @classmethod
    def zero(cls, ctx: Context = CTX_Q) -> "DiffPermPoly":
        return cls(ctx, {}, _owned=True)

    @classmethod
    def generator(cls, var: int, order: Union[int, Sequence[int]] = 0,
                  ctx: Context = CTX_Q) -> "DiffPermPoly":
        s = symbol(var, order, ctx.arity)
        one: Scalar = DeltaPoly.const(1) if ctx.delta else 1
        return cls(ctx, {Monomial((), s): one}, _owned=True)

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Monomial, Scalar]],
                   ctx: Context = CTX_Q) -> "DiffPermPoly":
        acc: dict[Monomial, Scalar] = {}
        for m, c in pairs:
            for s in m.factors:
                if len(s.dord) != ctx.arity:
                    raise AlgebraError("symbol arity does not match context")
            c = _coerce_scalar(c, ctx)
            prev = acc.get(m)
            acc[m] = c if prev is None else prev + c
        return cls(ctx, {m: c for m, c in acc.items() if c}, _owned=True)

    @classmethod
    def monomial(cls, syms: Sequence[Symbol], coeff: Scalar = 1,
                 ctx: Context = CTX_Q) -> "DiffPermPoly":
        return cls.from_terms([(normalize(syms), coeff)], ctx)

    # -- basic structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPermPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None  # mutable dict inside; not intended as a key

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda mc: monomial_key(mc[0]))

    def variables(self) -> list[int]:
        vs = set()
        for m in self.terms:
            for s in m.factors:
                vs.add(s.var)
        return sorted(vs)

    def max_var(self) -> int:
        return max((s.var for m in self.terms for s in m.factors), default=0)

    def weights(self) -> list[int]:
        """Distinct monomial weights (single-derivation contexts only)."""
        return sorted({grade(m, self.ctx.arity)[1] for m in self.terms})

    def degrees(self) -> list[int]:
        return sorted({m.degree for m in self.terms})

    def _check_ctx(self, other: "DiffPermPoly"):
        if self.ctx != other.ctx:
            raise AlgebraError(
                f"context mismatch: {self.ctx} vs {other.ctx}")

    # -- linear structure

    def __add__(self, other: "DiffPermPoly") -> "DiffPermPoly":
        if not isinstance(other, DiffPermPoly):
            return NotImplemented
        self._check_ctx(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            prev = acc.get(m)
            v = c if prev is None else prev + c
            if v:
                acc[m] = v
            elif prev is not None:
                del acc[m]
        return DiffPermPoly(self.ctx, acc, _owned=True)

    def __neg__(self) -> "DiffPermPoly":
        return DiffPermPoly(self.ctx, {m: -c for m, c in self.terms.items()},
                            _owned=True)

    def __sub__(self, other: "DiffPermPoly") -> "DiffPermPoly":
        if not isinstance(other, DiffPermPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "DiffPermPoly":
        c = _coerce_scalar(c, self.ctx)
        if not c:
            return DiffPermPoly.zero(self.ctx)
        return DiffPermPoly(self.ctx, {m: c * v for m, v in self.terms.items()},
                            _owned=True)

    # -- multiplication

    def __mul__(self, other):
        if isinstance(other, DiffPermPoly):
            self._check_ctx(other)
            acc: dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                head = m1.left + (m1.last,)
                for m2, c2 in other.terms.items():
                    key = Monomial(tuple(sorted(head + m2.left)), m2.last)
                    c = c1 * c2
                    prev = acc.get(key)
                    v = c if prev is None else prev + c
                    if v:
                        acc[key] = v
                    elif prev is not None:
                        del acc[key]
            return DiffPermPoly(self.ctx, acc, _owned=True)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    # -- differential structure

    def derive(self, j: int = 1) -> "DiffPermPoly":
        """Apply the j-th derivation (Leibniz rule over the factors)."""
        ctx = self.ctx
        if ctx.delta:
            raise AlgebraError(
                "ambiguous δ-derivation: a flattened polynomial has no "
                "preferred product tree")
        if not 1 <= j <= ctx.arity:
            raise AlgebraError(f"derivation index {j} out of range 1..{ctx.arity}")
        ax = j - 1
        acc: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            L = m.left
            for i in range(len(L)):
                key = Monomial(tuple(sorted(L[:i] + (L[i].derived(ax),) + L[i + 1:])),
                               m.last)
                prev = acc.get(key)
                v = c if prev is None else prev + c
                if v:
                    acc[key] = v
                elif prev is not None:
                    del acc[key]
            key = Monomial(L, m.last.derived(ax))
            prev = acc.get(key)
            v = c if prev is None else prev + c
            if v:
                acc[key] = v
            elif prev is not None:
                del acc[key]
        return DiffPermPoly(ctx, acc, _owned=True)

    def star(self) -> "DiffPermPoly":
        """Symmetrized differentiation: each factor is derived in turn and
        moved to the final position.

        This closed form coincides with the recursive rule
        (u v)* = u v* + v u* for every factorization; it depends only on the
        factor multiset of a monomial.
        """
        ctx = self.ctx
        if ctx.arity != 1:
            raise AlgebraError("star requires a single-derivation context")
        if ctx.delta:
            raise AlgebraError("star is not defined over Q[δ] coefficients")
        acc: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            fs = m.left + (m.last,)
            for i in range(len(fs)):
                rest = fs[:i] + fs[i + 1:]
                key = Monomial(tuple(sorted(rest)), fs[i].derived(0))
                prev = acc.get(key)
                v = c if prev is None else prev + c
                if v:
                    acc[key] = v
                elif prev is not None:
                    del acc[key]
        return DiffPermPoly(ctx, acc, _owned=True)

    def __repr__(self) -> str:
        return f"<DiffPermPoly {format_poly(self)}>"


def format_poly(p: DiffPermPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        mono = format_monomial(m)
        if isinstance(c, DeltaPoly):
            if len([x for x in c.coeffs if x]) > 1:
                parts.append((+1, f"({c}) {mono}"))
            else:
                s = str(c)
                if s.startswith("-"):
                    parts.append((-1, f"{s[1:]} {mono}" if s != "-1" else mono))
                else:
                    parts.append((+1, f"{s} {mono}" if s != "1" else mono))
        else:
            sign = 1 if c > 0 else -1
            a = abs(c)
            parts.append((sign, mono if a == 1 else f"{format_scalar(a)} {mono}"))
    sign, head = parts[0]
    out = ("-" if sign < 0 else "") + head
    for sign, piece in parts[1:]:
        out += (" - " if sign < 0 else " + ") + piece
    return out


# ---------------------------------------------------------------------------
# derived products and module-level operations
# ---------------------------------------------------------------------------

DERIVED_PRODUCT_TAGS = ("prec", "succ", "loz", "bullet", "diamond", "circ")


def derived_product(tag: str, a: DiffPermPoly, b: DiffPermPoly) -> DiffPermPoly:
    """One of the six bilinear products built from the derivation d:

    prec    a b'          succ    a' b
    loz     a b' + b a'   bullet  a' b + a b'
    diamond a b' - b a'   circ    a' b - a b'
    """
    if a.ctx != b.ctx:
        raise AlgebraError("context mismatch in derived product")
    if tag == "prec":
        return a * b.derive()
    if tag == "succ":
        return a.derive() * b
    if tag == "loz":
        return a * b.derive() + b * a.derive()
    if tag == "bullet":
        return a.derive() * b + a * b.derive()
    if tag == "diamond":
        return a * b.derive() - b * a.derive()
    if tag == "circ":
        return a.derive() * b - a * b.derive()
    raise AlgebraError(f"unknown derived product tag: {tag!r}")


def mul(a: DiffPermPoly, b: DiffPermPoly) -> DiffPermPoly:
    return a * b


def annihilator_test(p: DiffPermPoly) -> bool:
    """Right-annihilator membership: p kills the whole algebra from the left
    iff multiplying by one fresh generator gives zero.

    Right multiplication sorts every factor of p into the left part, so the
    product only remembers factor multisets; it vanishes exactly when p is a
    combination of differences of monomials with equal factor multisets,
    which is the right annihilator of the free algebra.
    """
    if p.is_zero():
        return True
    fresh = DiffPermPoly.generator(p.max_var() + 1, 0, p.ctx)
    return (p * fresh).is_zero()


def apply_substitution(p: DiffPermPoly,
                       images: Mapping[int, DiffPermPoly]) -> DiffPermPoly:
    """Endomorphism sending each variable to its image polynomial.

    A derived occurrence x_k^{(s)} goes to the s-fold derivative of the
    image of x_k; factors are multiplied back in their original order.
    """
    ctx = p.ctx
    if ctx.delta:
        raise AlgebraError("ambiguous δ-derivation: substitute before "
                           "expanding, or work in a rational context")
    for v, q in images.items():
        if q.ctx != ctx:
            raise AlgebraError("substitution image context mismatch")
    cache: dict[Symbol, DiffPermPoly] = {}

    def image_of(sym: Symbol) -> DiffPermPoly:
        got = cache.get(sym)
        if got is None:
            base = images.get(sym.var)
            if base is None:
                got = DiffPermPoly(ctx, {Monomial((), sym): 1}, _owned=True)
            else:
                got = base
                for ax, times in enumerate(sym.dord):
                    for _ in range(times):
                        got = got.derive(ax + 1)
            cache[sym] = got
        return got

    acc: dict[Monomial, Scalar] = {}
    for m, c in p.terms.items():
        prod = None
        for sym in m.left + (m.last,):
            q = image_of(sym)
            prod = q if prod is None else prod * q
        for mm, cc in prod.terms.items():
            v = c * cc
            prev = acc.get(mm)
            nv = v if prev is None else prev + v
            if nv:
                acc[mm] = nv
            elif prev is not None:
                del acc[mm]
    return DiffPermPoly(ctx, acc, _owned=True)


def rename_vars(p: DiffPermPoly, mapping: Mapping[int, int]) -> DiffPermPoly:
    """Substitution of generators for generators (derivative orders kept)."""
    acc: dict[Monomial, Scalar] = {}
    for m, c in p.terms.items():
        syms = [Symbol(mapping.get(s.var, s.var), s.dord) for s in m.factors]
        key = Monomial(tuple(sorted(syms[:-1])), syms[-1])
        prev = acc.get(key)
        v = c if prev is None else prev + c
        if v:
            acc[key] = v
        elif prev is not None:
            del acc[key]
    return DiffPermPoly(p.ctx, acc, _owned=True)


def is_multilinear(p: DiffPermPoly, k: int | None = None) -> bool:
    """True when every monomial contains each variable exactly once.

    With ``k`` given the variable set must be exactly 1..k; otherwise the
    common variable set of the first monomial is used.
    """
    if p.is_zero():
        return True
    want: tuple[int, ...] | None = tuple(range(1, k + 1)) if k else None
    for m in p.terms:
        vs = tuple(sorted(s.var for s in m.factors))
        if want is None:
            want = vs
            if len(set(vs)) != len(vs):
                return False
        if vs != want:
            return False
    return True


def specialize_delta(p: DiffPermPoly, value: Rational = 1) -> DiffPermPoly:
    """Evaluate Q[δ] coefficients at a rational value, landing in the
    plain-rational context of the same arity."""
    if not p.ctx.delta:
        return p
    ctx = Context(p.ctx.arity, False)
    acc: dict[Monomial, Scalar] = {}
    for m, c in p.terms.items():
        v = c.subs(value) if isinstance(c, DeltaPoly) else c
        if v:
            acc[m] = v
    return DiffPermPoly(ctx, acc, _owned=True)


def x(var: int, order: int = 0) -> DiffPermPoly:
    """Shorthand generator in the default rational single-derivation context."""
    return DiffPermPoly.generator(var, order, CTX_Q)
