import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from permdiff.algebra import (
    CTX_DELTA,
    CTX_Q,
    AlgebraError,
    Context,
    DELTA,
    DiffPermPoly,
    apply_substitution,
    derived_product,
    specialize_delta,
    x,
)
from permdiff.exprs import (
    Assoc,
    Der,
    DerOp,
    FormalVectorField,
    Mul,
    NonMultilinearError,
    Scale,
    Star,
    Sum,
    SUITE_IDS,
    Var,
    check_identity,
    desugar,
    eval_delta,
    eval_expr,
    run_suite,
    standard_identity,
    substitute_delta,
    suite_cases,
    used_vars,
    v,
    vf_leibniz_bracket,
    vf_prec,
)


def gens(n, ctx=CTX_Q):
    return {i: DiffPermPoly.generator(i, 0, ctx) for i in range(1, n + 1)}


class TestEval:
    def test_mul_der(self):
        e = Mul(Var(1), Der(Var(2)))
        assert eval_expr(e, gens(2)) == x(1) * x(2, 1)

    def test_assoc_against_two_eval_calls(self):
        e = Assoc("loz", v(1), v(2), v(3))
        got = eval_expr(e, gens(3))
        ab = derived_product("loz", x(1), x(2))
        bc = derived_product("loz", x(2), x(3))
        want = derived_product("loz", ab, x(3)) - derived_product("loz", x(1), bc)
        assert got == want

    def test_sum_cancels(self):
        e = Sum((Mul(v(1), v(2)), Scale(-1, Mul(v(1), v(2)))))
        assert eval_expr(e, gens(2)).is_zero()

    def test_unbound_variable(self):
        with pytest.raises(AlgebraError, match="unbound"):
            eval_expr(Mul(v(1), v(9)), gens(2))

    def test_derived_op_needs_single_derivation(self):
        ctx = Context(2, False)
        with pytest.raises(AlgebraError, match="single derivation"):
            eval_expr(DerOp("loz", v(1), v(2)), gens(2, ctx), ctx)

    def test_star_node(self):
        assert eval_expr(Star(Mul(v(1), v(2))), gens(2)) == (x(1) * x(2)).star()

    def test_desugar_preserves_value(self):
        e = Assoc("diamond", v(1), DerOp("bullet", v(2), v(3)), v(4))
        assert eval_expr(desugar(e), gens(4)) == eval_expr(e, gens(4))


def _tree_strategy(max_depth=3, nvars=3):
    leaf = st.integers(1, nvars).map(Var)
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.tuples(sub, sub).map(lambda ab: Mul(*ab)),
            sub.map(Der),
            st.tuples(st.sampled_from(("prec", "loz", "diamond", "circ")),
                      sub, sub).map(lambda t: DerOp(*t)),
            st.tuples(st.integers(-2, 2).filter(bool), sub).map(
                lambda ce: Scale(*ce)),
            st.tuples(sub, sub).map(lambda ab: Sum(ab)),
        ),
        max_leaves=6)


class TestSubstitutionSoundness:
    @given(_tree_strategy(), st.data())
    @settings(max_examples=120)
    def test_eval_commutes_with_endomorphisms(self, tree, data):
        """eval on substituted values equals the endomorphism image of eval
        on generators; this is what justifies generator substitution."""
        imgs = {}
        for i in sorted(used_vars(tree)) or [1]:
            var = data.draw(st.integers(1, 3), label=f"var{i}")
            order = data.draw(st.integers(0, 2), label=f"ord{i}")
            factor2 = data.draw(st.booleans(), label=f"two{i}")
            p = x(var, order)
            if factor2:
                p = p * x(data.draw(st.integers(1, 3), label=f"v2{i}"))
            imgs[i] = p
        direct = eval_expr(tree, {**gens(3), **imgs})
        via_endo = apply_substitution(eval_expr(tree, gens(3)), imgs)
        assert direct == via_endo


class TestEvalDelta:
    def test_delta_leibniz_on_product(self):
        e = Der(Mul(v(1), v(2)))
        got = eval_delta(e, gens(2, CTX_DELTA))
        g1 = DiffPermPoly.generator(1, 0, CTX_DELTA)
        g2 = DiffPermPoly.generator(2, 0, CTX_DELTA)
        g1p = DiffPermPoly.generator(1, 1, CTX_DELTA)
        g2p = DiffPermPoly.generator(2, 1, CTX_DELTA)
        assert got == (g1p * g2 + g1 * g2p).scale(DELTA)

    def test_second_derivative_of_circ(self):
        e = Der(DerOp("circ", v(1), v(2)))
        got = eval_delta(e, gens(2, CTX_DELTA))
        g1pp = DiffPermPoly.generator(1, 2, CTX_DELTA)
        g2 = DiffPermPoly.generator(2, 0, CTX_DELTA)
        g1 = DiffPermPoly.generator(1, 0, CTX_DELTA)
        g2pp = DiffPermPoly.generator(2, 2, CTX_DELTA)
        assert got == (g1pp * g2 - g1 * g2pp).scale(DELTA)

    def test_specialization_at_one_matches_eval_on_every_suite_expr(self):
        for sid in ("a", "b", "c", "d", "e", "f"):
            for case in suite_cases(sid):
                nvars = case.nvars
                plain = eval_expr(substitute_delta(case.expr, 1), gens(nvars))
                dval = eval_delta(case.expr, gens(nvars, CTX_DELTA))
                assert specialize_delta(dval, 1) == plain, case.name

    @given(_tree_strategy(), st.data())
    @settings(max_examples=60)
    def test_specialization_at_one_on_random_trees(self, tree, data):
        plain = eval_expr(tree, gens(3))
        dval = eval_delta(tree, gens(3, CTX_DELTA))
        assert specialize_delta(dval, 1) == plain

    def test_flattened_product_under_derivation_is_ambiguous(self):
        sub = gens(2, CTX_DELTA)
        sub[1] = sub[1] * sub[2]
        with pytest.raises(AlgebraError, match="ambiguous"):
            eval_delta(Der(v(1)), sub)

    def test_star_rejected(self):
        with pytest.raises(AlgebraError, match="star"):
            eval_delta(Star(v(1)), gens(1, CTX_DELTA))


class TestCheckIdentity:
    def test_tortken_under_loz(self):
        case, = [c for c in suite_cases("a") if c.name == "loz-tortken"]
        assert check_identity(case.expr, 4).is_identity

    def test_std5_fails_with_witness(self):
        verdict = check_identity(standard_identity("diamond", 5), 5)
        assert not verdict.is_identity
        m, c = verdict.witness
        assert c != 0 and m.degree == 5

    def test_jacobi_under_diamond(self):
        e = (DerOp("diamond", DerOp("diamond", v(1), v(2)), v(3))
             + DerOp("diamond", DerOp("diamond", v(2), v(3)), v(1))
             + DerOp("diamond", DerOp("diamond", v(3), v(1)), v(2)))
        assert check_identity(e, 3).is_identity

    def test_jacobi_is_stable_under_variable_permutation(self):
        for p1, p2, p3 in itertools.permutations((1, 2, 3)):
            e = (DerOp("diamond", DerOp("diamond", v(p1), v(p2)), v(p3))
                 + DerOp("diamond", DerOp("diamond", v(p2), v(p3)), v(p1))
                 + DerOp("diamond", DerOp("diamond", v(p3), v(p1)), v(p2)))
            assert check_identity(e, 3).is_identity

    def test_non_multilinear_rejected(self):
        with pytest.raises(NonMultilinearError):
            check_identity(Mul(v(1), v(1)), 1)

    def test_variable_beyond_arity_rejected(self):
        with pytest.raises(AlgebraError, match="beyond arity"):
            check_identity(Mul(v(1), v(5)), 2)


class TestIdentitySoundness:
    """A true verdict means the expression vanishes under *every*
    substitution, not just on generators; spot-check that end to end."""

    @given(st.data())
    @settings(max_examples=40)
    def test_verified_identities_vanish_on_random_values(self, data):
        named = {}
        for sid in ("a", "b", "c", "d"):
            for case in suite_cases(sid):
                if case.expected and case.expr is not None and case.nvars <= 4:
                    named[case.name] = case
        case = data.draw(st.sampled_from(sorted(named)), label="identity")
        case = named[case]
        subst = {}
        for i in range(1, case.nvars + 1):
            var = data.draw(st.integers(1, 3), label=f"v{i}")
            order = data.draw(st.integers(0, 2), label=f"o{i}")
            p = x(var, order)
            if data.draw(st.booleans(), label=f"m{i}"):
                p = p * x(data.draw(st.integers(1, 3), label=f"w{i}"))
            if data.draw(st.booleans(), label=f"s{i}"):
                p = p + x(data.draw(st.integers(1, 3), label=f"u{i}"),
                          data.draw(st.integers(0, 1), label=f"p{i}"))
            subst[i] = p
        assert eval_expr(case.expr, subst).is_zero()


class TestFormalVectorFields:
    def test_leibniz_bracket_formula(self):
        ctx = Context(3, False)
        a = DiffPermPoly.generator(1, (0, 0, 0), ctx)
        b = DiffPermPoly.generator(2, (0, 0, 0), ctx)
        X = FormalVectorField.make([(a, 1)], ctx)
        Y = FormalVectorField.make([(b, 2)], ctx)
        got = vf_leibniz_bracket(X, Y)
        want = FormalVectorField.make(
            [(a.derive(2) * b, 1), (-(a * b.derive(1)), 2)], ctx)
        assert got == want

    def test_prec_formula(self):
        ctx = Context(3, False)
        a = DiffPermPoly.generator(1, (0, 0, 0), ctx)
        b = DiffPermPoly.generator(2, (0, 0, 0), ctx)
        X = FormalVectorField.make([(a, 3)], ctx)
        Y = FormalVectorField.make([(b, 2)], ctx)
        assert vf_prec(X, Y) == FormalVectorField.make(
            [(a * b.derive(3), 2)], ctx)

    def test_left_leibniz_all_27_triples(self):
        ctx = Context(3, False)
        a = DiffPermPoly.generator(1, (0, 0, 0), ctx)
        b = DiffPermPoly.generator(2, (0, 0, 0), ctx)
        c = DiffPermPoly.generator(3, (0, 0, 0), ctx)
        for i, j, k in itertools.product((1, 2, 3), repeat=3):
            X = FormalVectorField.make([(a, i)], ctx)
            Y = FormalVectorField.make([(b, j)], ctx)
            Z = FormalVectorField.make([(c, k)], ctx)
            lhs = vf_leibniz_bracket(vf_leibniz_bracket(X, Y), Z)
            rhs = (vf_leibniz_bracket(X, vf_leibniz_bracket(Y, Z))
                   - vf_leibniz_bracket(Y, vf_leibniz_bracket(X, Z)))
            assert (lhs - rhs).is_zero(), (i, j, k)

    def test_pre_lie_all_27_triples(self):
        ctx = Context(3, False)
        a = DiffPermPoly.generator(1, (0, 0, 0), ctx)
        b = DiffPermPoly.generator(2, (0, 0, 0), ctx)
        c = DiffPermPoly.generator(3, (0, 0, 0), ctx)
        for i, j, k in itertools.product((1, 2, 3), repeat=3):
            X = FormalVectorField.make([(a, i)], ctx)
            Y = FormalVectorField.make([(b, j)], ctx)
            Z = FormalVectorField.make([(c, k)], ctx)
            axy = vf_prec(vf_prec(X, Y), Z) - vf_prec(X, vf_prec(Y, Z))
            ayx = vf_prec(vf_prec(Y, X), Z) - vf_prec(Y, vf_prec(X, Z))
            assert (axy - ayx).is_zero(), (i, j, k)


class TestSuites:
    def test_all_suites_report_expected_verdicts(self):
        for sid in SUITE_IDS:
            for r in run_suite(sid):
                assert r.ok, f"{sid}:{r.name}"

    def test_std5_reports_false_with_witness(self):
        results = {r.name: r for r in run_suite("c")}
        r = results["diamond-std5"]
        assert not r.verdict.is_identity and r.expected is False
        assert r.verdict.witness is not None

    def test_unknown_suite(self):
        with pytest.raises(AlgebraError, match="unknown suite"):
            run_suite("z")

    def test_suite_counts(self):
        assert [len(suite_cases(sid)) for sid in SUITE_IDS] == \
            [3, 3, 4, 1, 1, 1, 1, 1]
