"""
Unit Tests for the Kernel

Well-formedness checking with error paths, normalization by evaluation and
conversion, including properties over randomly generated expressions.
"""

import pytest
from hypothesis import given, settings, strategies as st


def _bool_con():
    from cwfcheck.syntax import BoolT, Empty, Ext

    return Ext(Empty(), BoolT())


def _not():
    """λ b. boolrec b false true over the empty context"""
    from cwfcheck.syntax import BoolRec, BoolT, Empty, FalseC, Lam, Q, TrueC

    return Lam(BoolT(), BoolT(), BoolRec(BoolT(), FalseC(), TrueC(), Q(Empty(), BoolT())))


class TestChecking:
    """Syntax-directed well-formedness"""

    @pytest.mark.unit
    def test_contexts(self):
        from cwfcheck.checker import check_con
        from cwfcheck.syntax import Empty, Ext, Pi, BoolT, UnitT

        check_con(Empty())
        check_con(Ext(_bool_con(), Pi(BoolT(), UnitT())))

    @pytest.mark.unit
    def test_infers_base_types(self):
        from cwfcheck.checker import check
        from cwfcheck.syntax import BoolCode, BoolT, Sort, TrueC, TT, UnitT, Univ

        assert check(Sort.TM, TrueC()) == BoolT()
        assert check(Sort.TM, TT()) == UnitT()
        assert check(Sort.TM, BoolCode()) == Univ()

    @pytest.mark.unit
    def test_substitution_endpoints(self):
        from cwfcheck.checker import check_sub
        from cwfcheck.syntax import BoolT, Empty, P

        assert check_sub(P(Empty(), BoolT())) == (_bool_con(), Empty())

    @pytest.mark.unit
    def test_applying_a_non_function(self):
        from cwfcheck.checker import check
        from cwfcheck.errors import TypeMismatchError
        from cwfcheck.syntax import App, BoolT, Pi, Sort, TrueC

        with pytest.raises(TypeMismatchError) as info:
            check(Sort.TM, App(BoolT(), BoolT(), TrueC(), TrueC()))
        assert info.value.path == ("App.fn",)
        assert info.value.expected == Pi(BoolT(), BoolT())
        assert info.value.actual == BoolT()

    @pytest.mark.unit
    def test_variable_outside_its_context(self):
        from cwfcheck.checker import check
        from cwfcheck.errors import IllFormedError
        from cwfcheck.syntax import BoolT, Empty, Q, Sort

        with pytest.raises(IllFormedError, match="variable context"):
            check(Sort.TM, Q(Empty(), BoolT()))

    @pytest.mark.unit
    def test_composite_with_mismatched_middle(self):
        from cwfcheck.checker import check_sub
        from cwfcheck.errors import IllFormedError
        from cwfcheck.syntax import BoolT, Comp, Empty, Id, P

        with pytest.raises(IllFormedError) as info:
            check_sub(Comp(P(Empty(), BoolT()), Id(Empty())))
        assert info.value.path == ("Comp.delta",)
        assert "Comp.delta" in str(info.value)

    @pytest.mark.unit
    def test_unannotated_pair_with_closed_type(self):
        from cwfcheck.checker import check_sub
        from cwfcheck.syntax import Empty, Id, Pair, TrueC

        assert check_sub(Pair(Id(Empty()), TrueC())) == (Empty(), _bool_con())

    @pytest.mark.unit
    def test_unannotated_pair_with_dependent_type(self):
        from cwfcheck.checker import check_sub
        from cwfcheck.errors import IllFormedError
        from cwfcheck.syntax import El, Empty, Ext, Id, Pair, Q, Univ

        universe = Ext(Empty(), Univ())
        con = Ext(universe, El(Q(Empty(), Univ())))
        with pytest.raises(IllFormedError, match="annotation"):
            check_sub(Pair(Id(con), Q(universe, El(Q(Empty(), Univ())))))

    @pytest.mark.unit
    def test_dependent_eliminator(self):
        from cwfcheck.checker import infer_tm, normalize_ty
        from cwfcheck.syntax import BoolRec, BoolT, Empty, FalseC, Q, SubT, TrueC

        ty = infer_tm(_bool_con(), BoolRec(BoolT(), FalseC(), TrueC(), Q(Empty(), BoolT())))
        assert isinstance(ty, SubT)
        assert normalize_ty(_bool_con(), ty) == BoolT()


class TestNormalization:
    """Normal forms by evaluation and read-back"""

    @pytest.mark.unit
    def test_beta(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import App, BoolT, Empty, Lam, Q, Sort, TrueC

        identity = Lam(BoolT(), BoolT(), Q(Empty(), BoolT()))
        assert normalize(Sort.TM, App(BoolT(), BoolT(), identity, TrueC())) == TrueC()

    @pytest.mark.unit
    def test_negation(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import App, BoolT, FalseC, Sort, TrueC

        assert normalize(Sort.TM, App(BoolT(), BoolT(), _not(), TrueC())) == FalseC()
        assert normalize(Sort.TM, App(BoolT(), BoolT(), _not(), FalseC())) == TrueC()

    @pytest.mark.unit
    def test_stuck_eliminator_stays_neutral(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import BoolRec, BoolT, Empty, FalseC, Q, Sort, TrueC

        tm = BoolRec(BoolT(), FalseC(), TrueC(), Q(Empty(), BoolT()))
        assert normalize(Sort.TM, tm, _bool_con()) == tm

    @pytest.mark.unit
    def test_projections(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import BoolT, FalseC, Fst, PairTm, Snd, Sort, TrueC

        pair = PairTm(BoolT(), BoolT(), TrueC(), FalseC())
        assert normalize(Sort.TM, Fst(BoolT(), BoolT(), pair)) == TrueC()
        assert normalize(Sort.TM, Snd(BoolT(), BoolT(), pair)) == FalseC()

    @pytest.mark.unit
    def test_unit_variable_reads_back_as_tt(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import Empty, Ext, Q, Sort, TT, UnitT

        assert normalize(Sort.TM, Q(Empty(), UnitT()), Ext(Empty(), UnitT())) == TT()

    @pytest.mark.unit
    def test_decoding_codes(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import BoolCode, BoolT, El, Empty, Ext, Sort, UnitCode, UnitT

        assert normalize(Sort.TY, El(BoolCode())) == BoolT()
        assert normalize(Sort.TY, El(UnitCode())) == UnitT()
        assert normalize(Sort.CON, Ext(Empty(), El(BoolCode()))) == _bool_con()

    @pytest.mark.unit
    def test_substitution_normal_form(self):
        from cwfcheck.checker import normalize
        from cwfcheck.syntax import BoolT, Empty, Eps, Id, Pair, Sort, TrueC

        nf = normalize(Sort.SUB, Pair(Id(Empty()), TrueC(), BoolT()))
        assert nf == Pair(Eps(Empty()), TrueC(), BoolT())


class TestConversion:
    """Equality of normal forms"""

    @pytest.mark.unit
    def test_projection_after_extension(self):
        from cwfcheck.checker import convertible
        from cwfcheck.syntax import BoolT, Comp, Empty, Id, P, Pair, Sort, TrueC

        left = Comp(P(Empty(), BoolT()), Pair(Id(Empty()), TrueC(), BoolT()))
        assert convertible(Sort.SUB, left, Id(Empty()))

    @pytest.mark.unit
    def test_function_eta(self):
        from cwfcheck.checker import convertible
        from cwfcheck.syntax import App, BoolT, Empty, Ext, Lam, P, Pi, Q, Sort, SubTm

        fn_ty = Pi(BoolT(), BoolT())
        con = Ext(Empty(), fn_ty)
        f = Q(Empty(), fn_ty)
        expanded = Lam(BoolT(), BoolT(), App(BoolT(), BoolT(), SubTm(f, P(con, BoolT())), Q(con, BoolT())))
        assert convertible(Sort.TM, f, expanded, con)

    @pytest.mark.unit
    def test_distinct_constants(self):
        from cwfcheck.checker import convertible
        from cwfcheck.syntax import FalseC, Sort, TrueC

        assert not convertible(Sort.TM, TrueC(), FalseC())

    @pytest.mark.unit
    def test_terms_of_different_types(self):
        from cwfcheck.checker import convertible
        from cwfcheck.errors import TypeMismatchError
        from cwfcheck.syntax import Sort, TrueC, TT

        with pytest.raises(TypeMismatchError) as info:
            convertible(Sort.TM, TrueC(), TT())
        assert info.value.path == ("index",)


class TestRandomExpressions:
    """Generated expressions are well-formed and normal forms are stable"""

    @pytest.mark.unit
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_generated_terms_check(self, seed):
        from cwfcheck.checker import infer_tm
        from cwfcheck.generator import random_wellformed
        from cwfcheck.syntax import Sort

        con = random_wellformed(seed, 20, Sort.CON)
        tm = random_wellformed(seed, 20, Sort.TM, context=con)
        infer_tm(con, tm)

    @pytest.mark.unit
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_normalization_is_idempotent(self, seed):
        from cwfcheck.checker import convertible, normalize
        from cwfcheck.generator import random_wellformed
        from cwfcheck.syntax import Sort

        con = random_wellformed(seed, 20, Sort.CON)
        ty = random_wellformed(seed, 20, Sort.TY, context=con)
        nf = normalize(Sort.TY, ty, con)
        assert normalize(Sort.TY, nf, con) == nf
        assert convertible(Sort.TY, ty, nf, con)

    @pytest.mark.unit
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_generated_substitutions_check(self, seed):
        from cwfcheck.checker import check_sub, convertible, normalize
        from cwfcheck.generator import random_wellformed
        from cwfcheck.syntax import Sort

        sub = random_wellformed(seed, 20, Sort.SUB)
        check_sub(sub)
        assert convertible(Sort.SUB, sub, normalize(Sort.SUB, sub))
