"""Spans of iterated derived products and their multilinear dimensions.

Two generated subalgebras are analysed: the closure of the generators under
the symmetrized product a b' + b a' and the closure under a' b + a b'.  For
each we can generate the multilinear degree-n component by a span saturation
over variable subsets, generate the explicit comparison family (star images,
respectively derivatives, of the weight -2 multilinear basis monomials), and
verify by exact rank computation that both families span the same space of
dimension C(2n-3, n-1), respectively n * C(2n-3, n-1).

Rank and membership use fraction-free Gaussian elimination on integer rows
keyed by a fixed total monomial order, so results are exact and pivot
choices are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Iterator

from .algebra import (
    CTX_Q,
    AlgebraError,
    Context,
    DiffPermPoly,
    Monomial,
    Symbol,
    derived_product,
    format_poly,
    monomial_key,
)

_NORMALIZE_EVERY = 8  # gcd-normalize a working row after this many eliminations


def _int_row(p: DiffPermPoly) -> dict[Monomial, int]:
    """Clear denominators: the primitive integer row spanning the same line."""
    denom = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            denom = denom * c.denominator // gcd(denom, c.denominator)
    row = {}
    for m, c in p.terms.items():
        v = c * denom
        row[m] = int(v)
    return row


def _row_gcd_normalize(row: dict[Monomial, int]) -> dict[Monomial, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {m: v // g for m, v in row.items()}
    return row


class SpanBasis:
    """Exact linear span of polynomials with membership queries.

    ``elements`` keeps the independent input polynomials in insertion order;
    ``echelon`` is the row-reduced integer representation (pivot monomial to
    primitive row) realizing the same row space over Q.
    """

    def __init__(self, ctx: Context = CTX_Q):
        self.ctx = ctx
        self.elements: list[DiffPermPoly] = []
        self._pivots: dict[Monomial, dict[Monomial, int]] = {}

    @classmethod
    def from_elements(cls, elems: Iterable[DiffPermPoly]) -> "SpanBasis":
        elems = list(elems)
        basis = cls(elems[0].ctx if elems else CTX_Q)
        for p in elems:
            basis.add(p)
        return basis

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def echelon(self) -> dict[Monomial, dict[Monomial, int]]:
        return self._pivots

    def _reduce(self, row: dict[Monomial, int]) -> dict[Monomial, int]:
        steps = 0
        while row:
            lead = min(row, key=monomial_key)
            prow = self._pivots.get(lead)
            if prow is None:
                return row
            a, b = row[lead], prow[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            nxt: dict[Monomial, int] = {}
            for m, v in row.items():
                nxt[m] = v * fa
            for m, v in prow.items():
                w = nxt.get(m, 0) - v * fb
                if w:
                    nxt[m] = w
                elif m in nxt:
                    del nxt[m]
            row = nxt
            steps += 1
            if steps % _NORMALIZE_EVERY == 0 and row:
                row = _row_gcd_normalize(row)
        return row

    def add(self, p: DiffPermPoly) -> bool:
        """Insert a polynomial; True when it enlarged the span."""
        if p.ctx != self.ctx:
            raise AlgebraError("mixed contexts in span")
        if p.ctx.delta:
            raise AlgebraError("span computations require rational "
                               "coefficients")
        if p.is_zero():
            return False
        rem = self._reduce(_int_row(p))
        if not rem:
            return False
        rem = _row_gcd_normalize(rem)
        lead = min(rem, key=monomial_key)
        if rem[lead] < 0:
            rem = {m: -v for m, v in rem.items()}
        self._pivots[lead] = rem
        self.elements.append(p)
        return True

    def contains(self, p: DiffPermPoly) -> bool:
        if p.ctx != self.ctx:
            raise AlgebraError("mixed contexts in span")
        if p.ctx.delta:
            raise AlgebraError("span computations require rational "
                               "coefficients")
        return not self._reduce(_int_row(p))


def rank(elems: Iterable[DiffPermPoly]) -> int:
    """Dimension of the linear span, by exact elimination."""
    return SpanBasis.from_elements(elems).rank


def dimension_formula(n: int, variant: str) -> int:
    """Multilinear dimension of the generated subalgebra in degree n."""
    if variant == "star":
        return comb(2 * n - 3, n - 1)
    if variant == "prime":
        return n * comb(2 * n - 3, n - 1)
    raise AlgebraError(f"unknown variant: {variant!r}")


def _variant_tag(variant: str) -> str:
    if variant == "star":
        return "loz"
    if variant == "prime":
        return "bullet"
    raise AlgebraError(f"unknown variant: {variant!r}")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def weight_minus2_monomials(n: int) -> list[Monomial]:
    """All basis monomials multilinear in x1..xn with weight -2: derivative
    orders summing to n-2 spread over the n distinct variables, times a
    choice of final factor."""
    out = []
    for orders in _compositions(n - 2, n):
        syms = [Symbol(k, (orders[k - 1],)) for k in range(1, n + 1)]
        for last_idx in range(n):
            rest = syms[:last_idx] + syms[last_idx + 1:]
            out.append(Monomial(tuple(sorted(rest)), syms[last_idx]))
    return out


def generate_S(n: int, variant: str) -> list[DiffPermPoly]:
    """The explicit comparison family in degree n: star images (variant
    ``star``, deduplicated since star only sees the factor multiset) or
    derivatives (variant ``prime``) of the weight -2 multilinear monomials."""
    if n < 2:
        raise AlgebraError("generate_S needs degree n >= 2")
    if variant not in ("star", "prime"):
        raise AlgebraError(f"unknown variant: {variant!r}")
    out: list[DiffPermPoly] = []
    seen: set[tuple] = set()
    for m in weight_minus2_monomials(n):
        u = DiffPermPoly(CTX_Q, {m: 1})
        img = u.star() if variant == "star" else u.derive()
        if variant == "star":
            key = tuple(sorted(img.terms.items(), key=lambda mc: monomial_key(mc[0])))
            if key in seen:
                continue
            seen.add(key)
        out.append(img)
    return out


def generate_closure(tag: str, n: int) -> list[DiffPermPoly]:
    """Spanning list of the multilinear degree-n component of the subalgebra
    generated by x1..xn under the tagged product.

    Works subset-by-subset: the component supported on a variable set A is
    spanned by products of the components of complementary nonempty pieces
    of A, so a single pass in order of increasing subset size saturates.
    """
    if tag not in ("loz", "bullet"):
        raise AlgebraError(f"closure is defined for loz/bullet, not {tag!r}")
    if n < 1:
        raise AlgebraError("degree must be >= 1")
    allvars = tuple(range(1, n + 1))
    spans: dict[tuple[int, ...], list[DiffPermPoly]] = {}
    for k in allvars:
        spans[(k,)] = [DiffPermPoly.generator(k, 0, CTX_Q)]
    from itertools import combinations

    for size in range(2, n + 1):
        for subset in combinations(allvars, size):
            basis = SpanBasis(CTX_Q)
            sset = set(subset)
            for lsize in range(1, size):
                for left in combinations(subset, lsize):
                    right = tuple(sorted(sset - set(left)))
                    if tag == "loz" and subset[0] not in left:
                        continue  # symmetric product: one order is enough
                    for a in spans[left]:
                        for b in spans[right]:
                            basis.add(derived_product(tag, a, b))
            spans[subset] = basis.elements
    return spans[allvars]


@dataclass
class DimensionReport:
    """Outcome of the degree-n dimension verification for one variant."""

    n: int
    variant: str
    formula: int
    rank_closure: int
    rank_S: int
    size_S: int
    missing_from_closure: list[str] = field(default_factory=list)
    missing_from_S: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.rank_closure == self.rank_S == self.size_S == self.formula
                and not self.missing_from_closure and not self.missing_from_S)

    def record(self) -> dict:
        return {
            "n": self.n,
            "variant": self.variant,
            "formula": self.formula,
            "rank_closure": self.rank_closure,
            "rank_S": self.rank_S,
            "ok": self.ok,
        }


def verify_dimension(n: int, variant: str) -> DimensionReport:
    """Check, in degree n: the saturated closure span and the explicit family
    have equal rank, the family is linearly independent, its size matches the
    closed-form dimension, and each family is contained in the span of the
    other.  Failures carry witness elements."""
    if n < 2:
        raise AlgebraError("verify_dimension needs n >= 2")
    tag = _variant_tag(variant)
    closure = generate_closure(tag, n)
    family = generate_S(n, variant)
    closure_basis = SpanBasis.from_elements(closure)
    family_basis = SpanBasis.from_elements(family)
    report = DimensionReport(
        n=n,
        variant=variant,
        formula=dimension_formula(n, variant),
        rank_closure=closure_basis.rank,
        rank_S=family_basis.rank,
        size_S=len(family),
    )
    for p in family:
        if not closure_basis.contains(p):
            report.missing_from_closure.append(format_poly(p))
    for p in closure:
        if not family_basis.contains(p):
            report.missing_from_S.append(format_poly(p))
    return report
