"""From a nontrivial multilinear identity to a derivative-only consequence.

Any multilinear identity f = 0 that does not already lie in the right
annihilator of the free algebra forces an identity of the form
a_1' a_2' ... a_m' = 0.  The constructive pipeline:

  * split f along a distinguished variable into coefficients of its
    derivative orders (``decompose``);
  * antisymmetrize over two fresh variables y, z (``h0``) and multiply by a
    fresh u on the right, which kills the order-zero part;
  * repeatedly lower the top derivative order with fresh variables t_i
    (``h_step``), each step being a combination of substitutions, right
    multiplications and subtractions;
  * one final substitution leaves  n! * c_n * t_1' ... t_n' * y z u,  where
    c_n is the top coefficient; recurse on c_n with the derived factors kept
    as inert context;
  * once a single monomial remains, substitute a -> a' on its underived
    factors.

Every intermediate polynomial is recorded in a trace whose steps can be
replayed exactly with the public algebra operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .algebra import (
    CTX_Q,
    AlgebraError,
    DiffPermPoly,
    Monomial,
    Scalar,
    Symbol,
    annihilator_test,
    apply_substitution,
    is_multilinear,
    rename_vars,
)

OUTCOME_DERIVATIVE_ONLY = "derivative_only"
OUTCOME_RIGHT_ANNIHILATOR = "right_annihilator"


# ---------------------------------------------------------------------------
# decomposition along one variable
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """f = sum_s g_s x_k^{(s)} + sum_s x_k^{(s)} p_s, coefficients in the
    remaining variables, s running from 0 to the top order n of x_k."""

    var: int
    n: int
    g: tuple[DiffPermPoly, ...]
    p: tuple[DiffPermPoly, ...]

    def reassemble(self) -> DiffPermPoly:
        ctx = self.g[0].ctx
        out = DiffPermPoly.zero(ctx)
        for s in range(self.n + 1):
            xs = DiffPermPoly.generator(self.var, s, ctx)
            out = out + self.g[s] * xs + xs * self.p[s]
        return out


def decompose(f: DiffPermPoly, k: int) -> Decomposition:
    """Route each monomial by the position of its x_k factor: final factor
    to the g side, otherwise (after moving it to the front, which the perm
    law allows) to the p side."""
    if f.is_zero():
        raise AlgebraError("cannot decompose the zero polynomial")
    if not is_multilinear(f):
        raise AlgebraError("decompose requires a multilinear polynomial")
    ctx = f.ctx
    if len(f.variables()) < 2:
        raise AlgebraError("decompose requires at least two variables")
    gacc: dict[int, dict[Monomial, Scalar]] = {}
    pacc: dict[int, dict[Monomial, Scalar]] = {}
    n = 0
    for m, c in f.terms.items():
        if m.last.var == k:
            s = sum(m.last.dord)
            rest = Monomial(m.left[:-1], m.left[-1])
            side = gacc
        else:
            hits = [i for i, sym in enumerate(m.left) if sym.var == k]
            if not hits:
                raise AlgebraError(f"variable x{k} missing from a monomial")
            i = hits[0]
            s = sum(m.left[i].dord)
            rest = Monomial(m.left[:i] + m.left[i + 1:], m.last)
            side = pacc
        n = max(n, s)
        bucket = side.setdefault(s, {})
        prev = bucket.get(rest)
        v = c if prev is None else prev + c
        if v:
            bucket[rest] = v
        elif prev is not None:
            del bucket[rest]
    g = tuple(DiffPermPoly(ctx, gacc.get(s, {}), _owned=True)
              for s in range(n + 1))
    p = tuple(DiffPermPoly(ctx, pacc.get(s, {}), _owned=True)
              for s in range(n + 1))
    return Decomposition(k, n, g, p)


# ---------------------------------------------------------------------------
# the pipeline steps
# ---------------------------------------------------------------------------


def h0(f: DiffPermPoly, k: int, y: int | None = None,
       z: int | None = None) -> DiffPermPoly:
    """f with x_k renamed to y, times z, minus the same with y and z swapped.

    Expands to  sum_s c_s (y^{(s)} z - z^{(s)} y) + c_0 (y z - z y)  with
    c_s = g_s + p_s from the decomposition; the trailing c_0 part dies after
    a right multiplication by a fresh generator.
    """
    if f.is_zero():
        raise AlgebraError("h0 of the zero polynomial")
    if k not in f.variables():
        raise AlgebraError(f"variable x{k} does not occur")
    top = f.max_var()
    if y is None:
        y = top + 1
    if z is None:
        z = max(top, y) + 1
    gy = DiffPermPoly.generator(y, 0, f.ctx)
    gz = DiffPermPoly.generator(z, 0, f.ctx)
    return rename_vars(f, {k: y}) * gz - rename_vars(f, {k: z}) * gy


def _detect_roles(h: DiffPermPoly) -> tuple[int, int, int]:
    """Recover (y, z, u) from a polynomial in the pipeline normal shape."""
    if h.is_zero():
        raise AlgebraError("h_step: zero polynomial has no shape")
    lasts = {m.last for m in h.terms}
    if len(lasts) != 1:
        raise AlgebraError("h_step: expected a common final factor u, found "
                           f"{len(lasts)} distinct final factors")
    usym = next(iter(lasts))
    if any(usym.dord):
        raise AlgebraError("h_step: the common final factor must be underived")
    u = usym.var
    candidates = sorted({s.var for m in h.terms for s in m.left
                         if s.order >= 1})
    pairs = []
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            a, b = candidates[i], candidates[j]
            if rename_vars(h, {a: b, b: a}) == -h:
                pairs.append((a, b))
    if not pairs:
        raise AlgebraError("h_step: no variable pair (y, z) with "
                           "h(z, y) = -h(y, z) found")
    y, z = max(pairs, key=lambda ab: (ab[1], ab[0]))
    return y, z, u


def h_step(h: DiffPermPoly, t: int,
           roles: tuple[int, int, int] | None = None) -> DiffPermPoly:
    """One derivative-order-lowering step with a fresh variable t:

        h(y t, z) u - h(y, z) t u - h(z t, y) u + h(z, y) t u

    computed as A - (A with y and z swapped) for
    A = h[y -> y t] - h[u -> t u].  The top index drops by one and the new
    leading coefficient is the old one times (top index) * t'.
    """
    if roles is None:
        roles = _detect_roles(h)
    y, z, u = roles
    ctx = h.ctx
    gy = DiffPermPoly.generator(y, 0, ctx)
    gt = DiffPermPoly.generator(t, 0, ctx)
    gu = DiffPermPoly.generator(u, 0, ctx)
    A = (apply_substitution(h, {y: gy * gt})
         - apply_substitution(h, {u: gt * gu}))
    return A - rename_vars(A, {y: z, z: y})


def _final_step(h: DiffPermPoly, t: int, y: int, u: int) -> DiffPermPoly:
    """h[y -> y t] - h[u -> t u]: the closing substitution of one pass."""
    ctx = h.ctx
    gy = DiffPermPoly.generator(y, 0, ctx)
    gt = DiffPermPoly.generator(t, 0, ctx)
    gu = DiffPermPoly.generator(u, 0, ctx)
    return (apply_substitution(h, {y: gy * gt})
            - apply_substitution(h, {u: gt * gu}))


# ---------------------------------------------------------------------------
# full reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    name: str
    rule: dict
    poly: DiffPermPoly


@dataclass
class ReductionResult:
    outcome: str
    m: int | None
    certificate: DiffPermPoly | None
    trace: list[TraceStep] = field(default_factory=list)


def multiset_normal_form(p: DiffPermPoly) -> DiffPermPoly:
    """Representative of p modulo the right annihilator: every monomial is
    replaced by the fully sorted monomial on the same factor multiset."""
    acc: dict[Monomial, Scalar] = {}
    for m, c in p.terms.items():
        fs = sorted(m.factors)
        key = Monomial(tuple(fs[:-1]), fs[-1])
        prev = acc.get(key)
        v = c if prev is None else prev + c
        if v:
            acc[key] = v
        elif prev is not None:
            del acc[key]
    return DiffPermPoly(p.ctx, acc, _owned=True)


def _top_order(p: DiffPermPoly, var: int) -> int:
    return max(sum(s.dord) for m in p.terms for s in m.factors if s.var == var)


def _pick_variable(cls: DiffPermPoly) -> tuple[int, int]:
    """Distinguished variable for one pass: maximal top derivative order in
    the annihilator-reduced polynomial, ties broken by the larger index.
    Computing on the reduced form guarantees the extracted top coefficient
    survives right multiplication."""
    best: tuple[int, int] | None = None
    for var in cls.variables():
        n = _top_order(cls, var)
        if best is None or (n, var) > best:
            best = (n, var)
    assert best is not None
    return best[1], best[0]


def _strip_factors(poly: DiffPermPoly, strip: list[Symbol], last_var: int
                   ) -> tuple[DiffPermPoly | None, Scalar | None]:
    """Remove one occurrence of each symbol of ``strip`` plus the final
    underived ``last_var`` factor from every monomial; the remainder comes
    back in multiset normal form, or as a bare scalar when nothing is left.
    ``(None, None)`` signals an unexpected shape."""
    ctx = poly.ctx
    acc: dict[Monomial, Scalar] = {}
    scalar_part: Scalar | None = None
    for m, c in poly.terms.items():
        if m.last.var != last_var or any(m.last.dord):
            return None, None
        fs = list(m.left)
        for s in strip:
            try:
                fs.remove(s)
            except ValueError:
                return None, None
        if not fs:
            scalar_part = c if scalar_part is None else scalar_part + c
            continue
        fs.sort()
        key = Monomial(tuple(fs[:-1]), fs[-1])
        prev = acc.get(key)
        v = c if prev is None else prev + c
        if v:
            acc[key] = v
        elif prev is not None:
            del acc[key]
    if scalar_part is not None:
        if acc or not scalar_part:
            return None, None
        return None, scalar_part
    return DiffPermPoly(ctx, acc, _owned=True), None


def reduce_identity(f: DiffPermPoly) -> ReductionResult:
    """Run the reduction pipeline on a multilinear identity.

    Returns either the right-annihilator verdict or a derivative-only
    certificate: a single monomial, every factor derived exactly once, with
    a nonzero coefficient, together with the full step trace.
    """
    if f.is_zero():
        raise AlgebraError("reduce: zero polynomial")
    if f.ctx != CTX_Q:
        raise AlgebraError("reduce: expected the rational single-derivation "
                           "context")
    if not is_multilinear(f):
        raise AlgebraError("reduce: input is not multilinear")
    trace = [TraceStep("input", {"op": "input"}, f)]
    if annihilator_test(f):
        return ReductionResult(OUTCOME_RIGHT_ANNIHILATOR, None, None, trace)

    current = f
    inert: list[Symbol] = []
    coeff_scalar: Scalar | None = None  # set when the coefficient is a constant
    fresh = f.max_var()
    passes = 0

    while True:
        cls = multiset_normal_form(current)
        assert not cls.is_zero()
        max_order = max(s.order for m in cls.terms for s in m.factors)
        single = len(cls.terms) == 1
        if single and max_order <= 1 and (passes >= 1 or max_order == 0):
            break
        k, n = _pick_variable(cls)
        label = f"pass{passes + 1}"
        y, z = fresh + 1, fresh + 2
        ts = [fresh + 2 + i for i in range(1, n + 1)]
        u = fresh + 3 + n
        fresh = u

        H = h0(current, k, y, z)
        trace.append(TraceStep(f"{label}:h0",
                               {"op": "h0", "var": k, "y": y, "z": z}, H))
        H = H * DiffPermPoly.generator(u, 0, CTX_Q)
        trace.append(TraceStep(f"{label}:h0*u", {"op": "rmul", "var": u}, H))
        for i in range(n - 1):
            H = h_step(H, ts[i], roles=(y, z, u))
            trace.append(TraceStep(
                f"{label}:h{i + 1}*u",
                {"op": "h_step", "t": ts[i], "y": y, "z": z, "u": u}, H))
        H = _final_step(H, ts[n - 1], y, u)
        trace.append(TraceStep(
            f"{label}:final", {"op": "final_subst", "t": ts[n - 1], "y": y,
                               "u": u}, H))
        assert not H.is_zero()

        strip = [Symbol(t, (1,)) for t in ts] + [Symbol(y, (0,)),
                                                 Symbol(z, (0,))]
        remainder, scalar = _strip_factors(H, strip, u)
        if remainder is None and scalar is None:
            raise AlgebraError("reduction pipeline produced an unexpected "
                               "shape; cannot extract the top coefficient")
        if remainder is not None:
            current = remainder
            trace.append(TraceStep(
                f"{label}:coefficient",
                {"op": "extract", "strip": [(s.var, s.dord[0]) for s in strip]
                 + [(u, 0)]}, remainder))
        else:
            coeff_scalar = scalar
            current = None
        inert.extend(strip)
        inert.append(Symbol(u, (0,)))
        passes += 1
        if current is None:
            break

    # assemble the certificate
    if current is None:
        factors = list(inert)
        coeff = coeff_scalar
    else:
        (mono, coeff), = multiset_normal_form(current).terms.items()
        factors = list(mono.factors) + inert

    bumped = [s if s.order >= 1 else s.derived(0) for s in factors]
    rules: dict = {"op": "certificate",
                   "inert": [(s.var, s.dord[0]) for s in inert],
                   "bumped": sorted({s.var for s in factors if s.order == 0})}
    if len(bumped) < 2:
        pad = Symbol(fresh + 1, (1,))
        bumped.append(pad)
        rules["padded_with"] = pad.var
    bumped.sort()
    cert_mono = Monomial(tuple(bumped[:-1]), bumped[-1])
    certificate = DiffPermPoly(CTX_Q, {cert_mono: coeff}, _owned=True)
    trace.append(TraceStep("certificate", rules, certificate))
    return ReductionResult(OUTCOME_DERIVATIVE_ONLY, len(bumped), certificate,
                           trace)
