"""Witt-type Lie and Leibniz algebras over a tensor perm algebra.

From the polynomial algebra k[x_1..x_n] one builds the perm algebra
P_n = k[x_1..x_n] (x) span(x_1..x_n) with product
(u x x_r) (v x x_s) = (u v x_r) x x_s, carrying the commuting Euler-type
derivations D_i(u x x_j) = (x_i d/dx_i u) x x_j + [i = j] u x x_i.  The
direct sum of n copies of P_n, one per derivation slot, carries

  * a Lie bracket      [a D_i, b D_j]   = a D_i(b) D_j - b D_j(a) D_i,
  * a Leibniz bracket  [a D_i, b D_j]_o = D_j(a) b D_i - a D_i(b) D_j.

On basis elements everything reduces to integer coefficient rules; the
embedded rule tables for n = 1 and n = 2 are verified here by exhaustive
instantiation over a finite exponent box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Union

from .algebra import AlgebraError

Rational = Union[int, Fraction]


class TBasis(NamedTuple):
    """Basis element x^e (x) x_alpha of the tensor perm algebra."""

    e: tuple[int, ...]
    alpha: int


class WBasis(NamedTuple):
    """Basis element (x^e (x) x_alpha) D_i of the Witt-type algebra."""

    e: tuple[int, ...]
    alpha: int
    i: int


def _merge(acc: dict, key, val) -> None:
    prev = acc.get(key)
    v = val if prev is None else prev + val
    if v:
        acc[key] = v
    elif prev is not None:
        del acc[key]


class PermTensorElem:
    """Element of the tensor perm algebra P_n; immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[TBasis, Rational], _owned=False):
        if not _owned:
            terms = {b: c for b, c in terms.items() if c}
        self.n = n
        self.terms = terms

    @classmethod
    def basis(cls, n: int, e: tuple[int, ...], alpha: int) -> "PermTensorElem":
        if len(e) != n or not 1 <= alpha <= n or any(k < 0 for k in e):
            raise AlgebraError("bad tensor basis data")
        return cls(n, {TBasis(tuple(e), alpha): 1}, _owned=True)

    @classmethod
    def zero(cls, n: int) -> "PermTensorElem":
        return cls(n, {}, _owned=True)

    def _check(self, other: "PermTensorElem"):
        if self.n != other.n:
            raise AlgebraError("tensor algebra dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, PermTensorElem):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PermTensorElem") -> "PermTensorElem":
        self._check(other)
        acc = dict(self.terms)
        for b, c in other.terms.items():
            _merge(acc, b, c)
        return PermTensorElem(self.n, acc, _owned=True)

    def __neg__(self) -> "PermTensorElem":
        return PermTensorElem(self.n, {b: -c for b, c in self.terms.items()},
                              _owned=True)

    def __sub__(self, other: "PermTensorElem") -> "PermTensorElem":
        return self + (-other)

    def scale(self, c: Rational) -> "PermTensorElem":
        if not c:
            return PermTensorElem.zero(self.n)
        return PermTensorElem(self.n, {b: c * v for b, v in self.terms.items()},
                              _owned=True)

    def __repr__(self):
        return f"<PermTensorElem n={self.n} {self.terms}>"


def perm_product(a: PermTensorElem, b: PermTensorElem) -> PermTensorElem:
    """(x^e (x) x_alpha)(x^f (x) x_beta) = x^{e+f+1_alpha} (x) x_beta."""
    a._check(b)
    acc: dict[TBasis, Rational] = {}
    for (e, alpha), c1 in a.terms.items():
        for (f, beta), c2 in b.terms.items():
            g = list(e)
            for i, fi in enumerate(f):
                g[i] += fi
            g[alpha - 1] += 1
            _merge(acc, TBasis(tuple(g), beta), c1 * c2)
    return PermTensorElem(a.n, acc, _owned=True)


def euler_derivation(i: int, a: PermTensorElem) -> PermTensorElem:
    """D_i scales x^e (x) x_alpha by e_i, plus one more when alpha = i."""
    if not 1 <= i <= a.n:
        raise AlgebraError("derivation index out of range")
    acc: dict[TBasis, Rational] = {}
    for (e, alpha), c in a.terms.items():
        lam = e[i - 1] + (1 if alpha == i else 0)
        if lam:
            _merge(acc, TBasis(e, alpha), lam * c)
    return PermTensorElem(a.n, acc, _owned=True)


class WittElement:
    """Element of the Witt-type algebra: tensor coefficients on derivation
    slots; immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[WBasis, Rational], _owned=False):
        if not _owned:
            terms = {b: c for b, c in terms.items() if c}
        self.n = n
        self.terms = terms

    @classmethod
    def basis(cls, n: int, e: tuple[int, ...], alpha: int, i: int) -> "WittElement":
        if len(e) != n or not 1 <= alpha <= n or not 1 <= i <= n:
            raise AlgebraError("bad Witt basis data")
        return cls(n, {WBasis(tuple(e), alpha, i): 1}, _owned=True)

    @classmethod
    def zero(cls, n: int) -> "WittElement":
        return cls(n, {}, _owned=True)

    def _check(self, other: "WittElement"):
        if self.n != other.n:
            raise AlgebraError("Witt algebra dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WittElement") -> "WittElement":
        self._check(other)
        acc = dict(self.terms)
        for b, c in other.terms.items():
            _merge(acc, b, c)
        return WittElement(self.n, acc, _owned=True)

    def __neg__(self) -> "WittElement":
        return WittElement(self.n, {b: -c for b, c in self.terms.items()},
                           _owned=True)

    def __sub__(self, other: "WittElement") -> "WittElement":
        return self + (-other)

    def scale(self, c: Rational) -> "WittElement":
        if not c:
            return WittElement.zero(self.n)
        return WittElement(self.n, {b: c * v for b, v in self.terms.items()},
                           _owned=True)

    def __repr__(self):
        return f"<WittElement n={self.n} {self.terms}>"


def witt_prec(v: WittElement, w: WittElement) -> WittElement:
    """(a D_i) prec (b D_j) = (a D_i(b)) D_j, extended bilinearly."""
    v._check(w)
    acc: dict[WBasis, Rational] = {}
    for (e, alpha, i), c1 in v.terms.items():
        for (f, beta, j), c2 in w.terms.items():
            lam = f[i - 1] + (1 if beta == i else 0)
            if not lam:
                continue
            g = list(e)
            for t, ft in enumerate(f):
                g[t] += ft
            g[alpha - 1] += 1
            _merge(acc, WBasis(tuple(g), beta, j), lam * c1 * c2)
    return WittElement(v.n, acc, _owned=True)


def lie_bracket(v: WittElement, w: WittElement) -> WittElement:
    """[v, w] = v prec w - w prec v; antisymmetric by construction."""
    return witt_prec(v, w) - witt_prec(w, v)


def leibniz_bracket(v: WittElement, w: WittElement) -> WittElement:
    """[a D_i, b D_j]_o = D_j(a) b D_i - a D_i(b) D_j, extended bilinearly;
    not antisymmetric in general."""
    v._check(w)
    acc: dict[WBasis, Rational] = {}
    for (e, alpha, i), c1 in v.terms.items():
        for (f, beta, j), c2 in w.terms.items():
            g = list(e)
            for t, ft in enumerate(f):
                g[t] += ft
            g[alpha - 1] += 1
            key = tuple(g)
            lam1 = e[j - 1] + (1 if alpha == j else 0)
            if lam1:
                _merge(acc, WBasis(key, beta, i), lam1 * c1 * c2)
            lam2 = f[i - 1] + (1 if beta == i else 0)
            if lam2:
                _merge(acc, WBasis(key, beta, j), -lam2 * c1 * c2)
    return WittElement(v.n, acc, _owned=True)


# ---------------------------------------------------------------------------
# embedded coefficient rules for n = 1 and n = 2
# ---------------------------------------------------------------------------

# A rule maps the exponent tuple (m, n, p, q) of a basis pair to the exact
# expected bracket.  x and y stand for the first and second tensor/derivation
# slots.  Targets: coefficient callable, exponent callable, direction, slot.

_X, _Y = 1, 2


def _exp_x(m, n, p, q):  # exponents when the left tensor direction is x
    return (m + p + 1, n + q)


def _exp_y(m, n, p, q):  # exponents when the left tensor direction is y
    return (m + p, n + q + 1)


@dataclass(frozen=True)
class BracketRule:
    table: str          # "lie" or "leibniz"
    block: str
    left: tuple[int, int]      # (alpha, i) of the left basis element
    right: tuple[int, int]     # (beta, j) of the right basis element
    targets: tuple             # ((coeff_fn, exp_fn, alpha, i), ...)

    def expected(self, n_dim: int, m: int, n: int, p: int, q: int) -> WittElement:
        out = WittElement.zero(n_dim)
        for coeff_fn, exp_fn, alpha, i in self.targets:
            c = coeff_fn(m, n, p, q)
            if c:
                out = out + WittElement.basis(n_dim, exp_fn(m, n, p, q),
                                              alpha, i).scale(c)
        return out


W1_RULES = (
    BracketRule("lie", "n=1", (1, 1), (1, 1),
                (((lambda m, n, p, q: p - m),
                  (lambda m, n, p, q: (m + p + 1,)), 1, 1),),),
)

# Lie table for n = 2.  The two entries marked "skew-consistent" repair the
# tensor direction of one target each: as printed alongside the other block
# entries they would contradict the antisymmetry of the bracket, which also
# pins the four remaining (alpha y / beta x) derivation combinations below.
W2_LIE_RULES = (
    # block (i): both derivation slots x
    BracketRule("lie", "i", (_X, _X), (_X, _X),
                (((lambda m, n, p, q: p - m), _exp_x, _X, _X),)),
    BracketRule("lie", "i", (_X, _X), (_Y, _X),
                (((lambda m, n, p, q: p), _exp_x, _Y, _X),
                 ((lambda m, n, p, q: -(m + 1)), _exp_y, _X, _X))),
    BracketRule("lie", "i", (_Y, _X), (_X, _X),   # skew-consistent
                (((lambda m, n, p, q: p + 1), _exp_y, _X, _X),
                 ((lambda m, n, p, q: -m), _exp_x, _Y, _X))),
    BracketRule("lie", "i", (_Y, _X), (_Y, _X),
                (((lambda m, n, p, q: p - m), _exp_y, _Y, _X),)),
    # block (ii): both derivation slots y
    BracketRule("lie", "ii", (_X, _Y), (_X, _Y),
                (((lambda m, n, p, q: q - n), _exp_x, _X, _Y),)),
    BracketRule("lie", "ii", (_X, _Y), (_Y, _Y),
                (((lambda m, n, p, q: q + 1), _exp_x, _Y, _Y),
                 ((lambda m, n, p, q: -n), _exp_y, _X, _Y))),
    BracketRule("lie", "ii", (_Y, _Y), (_X, _Y),   # skew-consistent
                (((lambda m, n, p, q: q), _exp_y, _X, _Y),
                 ((lambda m, n, p, q: -(n + 1)), _exp_x, _Y, _Y))),
    BracketRule("lie", "ii", (_Y, _Y), (_Y, _Y),
                (((lambda m, n, p, q: q - n), _exp_y, _Y, _Y),)),
    # block (iii): left slot x, right slot y
    BracketRule("lie", "iii", (_X, _X), (_X, _Y),
                (((lambda m, n, p, q: p + 1), _exp_x, _X, _Y),
                 ((lambda m, n, p, q: -n), _exp_x, _X, _X))),
    BracketRule("lie", "iii", (_X, _X), (_Y, _Y),
                (((lambda m, n, p, q: p), _exp_x, _Y, _Y),
                 ((lambda m, n, p, q: -n), _exp_y, _X, _X))),
    BracketRule("lie", "iii", (_Y, _X), (_X, _Y),
                (((lambda m, n, p, q: p + 1), _exp_y, _X, _Y),
                 ((lambda m, n, p, q: -(n + 1)), _exp_x, _Y, _X))),
    BracketRule("lie", "iii", (_Y, _X), (_Y, _Y),
                (((lambda m, n, p, q: p), _exp_y, _Y, _Y),
                 ((lambda m, n, p, q: -(n + 1)), _exp_y, _Y, _X))),
    # block (iii-skew): left slot y, right slot x, forced by antisymmetry
    BracketRule("lie", "iii-skew", (_X, _Y), (_X, _X),
                (((lambda m, n, p, q: q), _exp_x, _X, _X),
                 ((lambda m, n, p, q: -(m + 1)), _exp_x, _X, _Y))),
    BracketRule("lie", "iii-skew", (_Y, _Y), (_X, _X),
                (((lambda m, n, p, q: q), _exp_y, _X, _X),
                 ((lambda m, n, p, q: -m), _exp_x, _Y, _Y))),
    BracketRule("lie", "iii-skew", (_X, _Y), (_Y, _X),
                (((lambda m, n, p, q: q + 1), _exp_x, _Y, _X),
                 ((lambda m, n, p, q: -(m + 1)), _exp_y, _X, _Y))),
    BracketRule("lie", "iii-skew", (_Y, _Y), (_Y, _X),
                (((lambda m, n, p, q: q + 1), _exp_y, _Y, _X),
                 ((lambda m, n, p, q: -m), _exp_y, _Y, _Y))),
)

W2_LEIBNIZ_RULES = (
    # block (a): left tensor direction x
    BracketRule("leibniz", "a", (_X, _X), (_X, _X),
                (((lambda m, n, p, q: m - p), _exp_x, _X, _X),)),
    BracketRule("leibniz", "a", (_X, _X), (_X, _Y),
                (((lambda m, n, p, q: n), _exp_x, _X, _X),
                 ((lambda m, n, p, q: -(p + 1)), _exp_x, _X, _Y))),
    BracketRule("leibniz", "a", (_X, _Y), (_X, _X),
                (((lambda m, n, p, q: m + 1), _exp_x, _X, _Y),
                 ((lambda m, n, p, q: -q), _exp_x, _X, _X))),
    BracketRule("leibniz", "a", (_X, _Y), (_X, _Y),
                (((lambda m, n, p, q: n - q), _exp_x, _X, _Y),)),
    BracketRule("leibniz", "a", (_X, _X), (_Y, _X),
                (((lambda m, n, p, q: m + 1 - p), _exp_x, _Y, _X),)),
    BracketRule("leibniz", "a", (_X, _X), (_Y, _Y),
                (((lambda m, n, p, q: n), _exp_x, _Y, _X),
                 ((lambda m, n, p, q: -p), _exp_x, _Y, _Y))),
    BracketRule("leibniz", "a", (_X, _Y), (_Y, _X),
                (((lambda m, n, p, q: m + 1), _exp_x, _Y, _Y),
                 ((lambda m, n, p, q: -(q + 1)), _exp_x, _Y, _X))),
    BracketRule("leibniz", "a", (_X, _Y), (_Y, _Y),
                (((lambda m, n, p, q: n - q - 1), _exp_x, _Y, _Y),)),
    # block (b): left tensor direction y
    BracketRule("leibniz", "b", (_Y, _X), (_X, _X),
                (((lambda m, n, p, q: m - p - 1), _exp_y, _X, _X),)),
    BracketRule("leibniz", "b", (_Y, _X), (_X, _Y),
                (((lambda m, n, p, q: n + 1), _exp_y, _X, _X),
                 ((lambda m, n, p, q: -(p + 1)), _exp_y, _X, _Y))),
    BracketRule("leibniz", "b", (_Y, _Y), (_X, _X),
                (((lambda m, n, p, q: m), _exp_y, _X, _Y),
                 ((lambda m, n, p, q: -q), _exp_y, _X, _X))),
    BracketRule("leibniz", "b", (_Y, _Y), (_X, _Y),
                (((lambda m, n, p, q: n + 1 - q), _exp_y, _X, _Y),)),
    BracketRule("leibniz", "b", (_Y, _X), (_Y, _X),
                (((lambda m, n, p, q: m - p), _exp_y, _Y, _X),)),
    BracketRule("leibniz", "b", (_Y, _X), (_Y, _Y),
                (((lambda m, n, p, q: n + 1), _exp_y, _Y, _X),
                 ((lambda m, n, p, q: -p), _exp_y, _Y, _Y))),
    BracketRule("leibniz", "b", (_Y, _Y), (_Y, _X),
                (((lambda m, n, p, q: m), _exp_y, _Y, _Y),
                 ((lambda m, n, p, q: -(q + 1)), _exp_y, _Y, _X))),
    BracketRule("leibniz", "b", (_Y, _Y), (_Y, _Y),
                (((lambda m, n, p, q: n - q), _exp_y, _Y, _Y),)),
)


# ---------------------------------------------------------------------------
# tables and verification
# ---------------------------------------------------------------------------


def _slot_name(n: int, idx: int) -> str:
    return ("x", "y")[idx - 1] if n == 2 else str(idx)


def _coeff_str(c: Rational) -> str:
    return str(c)


def structure_table(n: int, kind: str, bound: int) -> dict:
    """Explicit bracket values for all basis pairs with exponents up to
    ``bound``, ordered by (block, left pattern, exponents) for stable diffs.
    Entries carry the computed results; for n = 1 and n = 2 they coincide
    with the embedded coefficient rules (see ``verify_tables``)."""
    if n not in (1, 2):
        raise AlgebraError("structure tables cover n = 1 and n = 2 only")
    if kind not in ("lie", "leibniz"):
        raise AlgebraError(f"unknown table kind: {kind!r}")
    if bound < 0:
        raise AlgebraError("bound must be >= 0")
    bracket = lie_bracket if kind == "lie" else leibniz_bracket
    entries = []
    if n == 1:
        pairs = [(((m,), 1, 1), ((p,), 1, 1))
                 for m in range(bound + 1) for p in range(bound + 1)]
    else:
        if kind == "lie":
            block_order = [((1, 1), (1, 1)), ((1, 1), (2, 1)), ((2, 1), (1, 1)),
                           ((2, 1), (2, 1)),
                           ((1, 2), (1, 2)), ((1, 2), (2, 2)), ((2, 2), (1, 2)),
                           ((2, 2), (2, 2)),
                           ((1, 1), (1, 2)), ((1, 1), (2, 2)), ((2, 1), (1, 2)),
                           ((2, 1), (2, 2)),
                           ((1, 2), (1, 1)), ((1, 2), (2, 1)), ((2, 2), (1, 1)),
                           ((2, 2), (2, 1))]
        else:
            block_order = [(l, r)
                           for l in [(1, 1), (1, 2)] for r in
                           [(1, 1), (1, 2), (2, 1), (2, 2)]] + \
                          [(l, r)
                           for l in [(2, 1), (2, 2)] for r in
                           [(1, 1), (1, 2), (2, 1), (2, 2)]]
        pairs = []
        for (al, il), (be, jr) in block_order:
            for m in range(bound + 1):
                for nn in range(bound + 1):
                    for p in range(bound + 1):
                        for q in range(bound + 1):
                            pairs.append((((m, nn), al, il), ((p, q), be, jr)))
    for (e1, a1, i1), (e2, a2, i2) in pairs:
        left = WittElement.basis(n, e1, a1, i1)
        right = WittElement.basis(n, e2, a2, i2)
        out = bracket(left, right)
        entries.append({
            "left": {"e": list(e1), "alpha": _slot_name(n, a1),
                     "i": _slot_name(n, i1)},
            "right": {"e": list(e2), "alpha": _slot_name(n, a2),
                      "i": _slot_name(n, i2)},
            "result": [{"coeff": _coeff_str(c),
                        "basis": {"e": list(b.e),
                                  "alpha": _slot_name(n, b.alpha),
                                  "i": _slot_name(n, b.i)}}
                       for b, c in sorted(out.terms.items())],
        })
    return {"n": n, "kind": kind, "bound": bound, "entries": entries}


@dataclass
class RuleCheck:
    table: str
    block: str
    left: str
    right: str
    checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


@dataclass
class TableVerification:
    bound: int
    rules: list[RuleCheck]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rules)

    @property
    def total_checks(self) -> int:
        return sum(r.checked for r in self.rules)


def _format_witt(v: WittElement, n: int) -> str:
    if v.is_zero():
        return "0"
    parts = []
    for b, c in sorted(v.terms.items()):
        name = (f"E[{','.join(map(str, b.e))};"
                f"{_slot_name(n, b.alpha)},{_slot_name(n, b.i)}]")
        parts.append(f"{_coeff_str(c)}*{name}")
    return " + ".join(parts)


def verify_tables(bound: int = 3) -> TableVerification:
    """Exhaustively instantiate every embedded coefficient rule over the
    exponent box 0..bound and compare with the computed brackets."""
    out = []
    # n = 1
    rule = W1_RULES[0]
    chk = RuleCheck("lie", rule.block, "E[m;1,1]", "E[p;1,1]")
    for m in range(bound + 1):
        for p in range(bound + 1):
            left = WittElement.basis(1, (m,), 1, 1)
            right = WittElement.basis(1, (p,), 1, 1)
            got = lie_bracket(left, right)
            want = rule.expected(1, m, 0, p, 0)
            chk.checked += 1
            if got != want:
                chk.mismatches.append({
                    "at": [m, p],
                    "computed": _format_witt(got, 1),
                    "expected": _format_witt(want, 1)})
    out.append(chk)
    # n = 2
    for rules, bracket in ((W2_LIE_RULES, lie_bracket),
                           (W2_LEIBNIZ_RULES, leibniz_bracket)):
        for rule in rules:
            al, il = rule.left
            be, jr = rule.right
            chk = RuleCheck(rule.table, rule.block,
                            f"E[m,n;{_slot_name(2, al)},{_slot_name(2, il)}]",
                            f"E[p,q;{_slot_name(2, be)},{_slot_name(2, jr)}]")
            for m in range(bound + 1):
                for n_ in range(bound + 1):
                    for p in range(bound + 1):
                        for q in range(bound + 1):
                            left = WittElement.basis(2, (m, n_), al, il)
                            right = WittElement.basis(2, (p, q), be, jr)
                            got = bracket(left, right)
                            want = rule.expected(2, m, n_, p, q)
                            chk.checked += 1
                            if got != want:
                                chk.mismatches.append({
                                    "at": [m, n_, p, q],
                                    "computed": _format_witt(got, 2),
                                    "expected": _format_witt(want, 2)})
            out.append(chk)
    return TableVerification(bound, out)
