"""
Unit Tests for Models and the Law Harness

The syntactic, standard and slice models pass every schema on small
budgets; the corrupted model is caught. Full-budget runs are marked slow.
"""

import random

import pytest


SMALL_BUDGET = 8


class TestModels:
    """Named models and their samplers"""

    @pytest.mark.unit
    def test_names(self):
        from cwfcheck.models import MODEL_NAMES, build_model

        for name in MODEL_NAMES:
            model, sampler = build_model(name)
            assert model.name == name
            assert sampler.sample_con(random.Random(0)) is not None

    @pytest.mark.unit
    def test_unknown_model(self):
        from cwfcheck.errors import PreconditionError
        from cwfcheck.models import build_model

        with pytest.raises(PreconditionError, match="unknown model"):
            build_model("initial")

    @pytest.mark.unit
    def test_standard_interpretation(self, settings):
        from cwfcheck.models import StandardModel
        from cwfcheck.syntax import BoolT, Empty, Ext

        model = StandardModel(settings)
        con = model.con_of(Ext(Empty(), BoolT()))
        assert con.envs == ((False,), (True,))
        assert model.describe(con) == str(Ext(Empty(), BoolT()))

    @pytest.mark.unit
    def test_context_limit(self):
        from cwfcheck.config import Settings
        from cwfcheck.errors import PreconditionError
        from cwfcheck.models import StandardModel
        from cwfcheck.syntax import BoolT, Empty, Ext

        model = StandardModel(Settings(max_context_environments=1))
        with pytest.raises(PreconditionError, match="environments"):
            model.con_of(Ext(Empty(), BoolT()))

    @pytest.mark.unit
    def test_standard_representability_is_unique(self, settings):
        from cwfcheck.models import StandardModel
        from cwfcheck.syntax import BoolT, Empty, Id, TrueC

        model = StandardModel(settings)
        empty = model.con_of(Empty())
        sigma = model.sub_of(Id(Empty()), empty, empty)
        ty = model.ty_of(empty, BoolT())
        tm = model.tm_of(empty, TrueC())
        result = model.representability(empty, empty, ty, sigma, tm, random.Random(0))
        assert result.count == 1
        assert result.method == "enumeration"

    @pytest.mark.unit
    def test_syntactic_representability(self):
        from cwfcheck.models import SyntacticModel
        from cwfcheck.syntax import BoolT, Empty, Id, TrueC

        result = SyntacticModel().representability(
            Empty(), Empty(), BoolT(), Id(Empty()), TrueC(), random.Random(0)
        )
        assert result.count == 1
        assert result.checked >= 3


class TestLawHarness:
    """law_harness and run_schema"""

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["syntax", "standard"])
    def test_sound_models_pass(self, name):
        from cwfcheck.harness import SCHEMAS, law_harness
        from cwfcheck.models import build_model

        model, sampler = build_model(name)
        report = law_harness(model, sampler, SMALL_BUDGET, seed=1)
        assert [r.schema for r in report.results] == list(SCHEMAS)
        assert report.passed, report.to_dict()

    @pytest.mark.unit
    def test_corrupted_pairing_is_caught(self):
        from cwfcheck.harness import law_harness
        from cwfcheck.models import build_model

        model, sampler = build_model("corrupted")
        report = law_harness(model, sampler, 20, seed=0, schemas=["p-beta", "q-beta"])
        assert not report.passed
        failing = [r for r in report.results if not r.passed]
        assert failing[0].counterexample is not None
        assert "sample" in failing[0].counterexample

    @pytest.mark.unit
    def test_reports_are_reproducible(self):
        from cwfcheck.harness import law_harness
        from cwfcheck.models import build_model

        model, sampler = build_model("standard")
        first = law_harness(model, sampler, 4, seed=5).to_dict()
        second = law_harness(model, sampler, 4, seed=5).to_dict()
        assert first == second

    @pytest.mark.unit
    def test_sample_accounting(self):
        from cwfcheck.harness import run_schema
        from cwfcheck.models import build_model

        model, sampler = build_model("syntax")
        result = run_schema(model, sampler, "assoc", 5, 0)
        assert result.samples + result.skipped == 5

    @pytest.mark.unit
    def test_bad_arguments(self):
        from cwfcheck.errors import PreconditionError
        from cwfcheck.harness import law_harness, run_schema
        from cwfcheck.models import build_model

        model, sampler = build_model("syntax")
        with pytest.raises(PreconditionError, match="budget"):
            law_harness(model, sampler, 0)
        with pytest.raises(PreconditionError, match="unknown law schema"):
            run_schema(model, sampler, "beta", 1, 0)
        with pytest.raises(KeyError):
            law_harness(model, sampler, 1, schemas=["assoc"]).result("idl")


class TestSlices:
    """Slice models over a base context"""

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["syntax", "standard"])
    def test_slices_pass(self, name):
        from cwfcheck.harness import law_harness
        from cwfcheck.models import build_slice

        model, sampler = build_slice(name, seed=2)
        assert model.name == f"slice({name})"
        report = law_harness(model, sampler, SMALL_BUDGET, seed=2)
        assert report.passed, report.to_dict()

    @pytest.mark.unit
    def test_empty_context_of_a_slice(self):
        from cwfcheck.models import SliceCon, build_slice
        from cwfcheck.syntax import BoolT, Empty, Ext, Id

        con = Ext(Empty(), BoolT())
        model, _ = build_slice("syntax", con=con)
        assert model.empty() == SliceCon(con, Id(con))
        assert model.eps(model.empty()) == Id(con)

    @pytest.mark.unit
    def test_slicing_a_failing_model_is_refused(self):
        from cwfcheck.errors import PreconditionError
        from cwfcheck.models import base_context, build_model, slice_model
        from cwfcheck.syntax import BoolT, Empty, Ext

        model, sampler = build_model("corrupted")
        base = base_context(model, Ext(Empty(), BoolT()))
        with pytest.raises(PreconditionError, match="laws fail"):
            slice_model(model, base, sampler, budget=20, seed=0)

    @pytest.mark.unit
    def test_building_a_slice_checks_the_base_laws(self):
        from cwfcheck.errors import PreconditionError
        from cwfcheck.models import build_slice

        with pytest.raises(PreconditionError, match="laws fail"):
            build_slice("corrupted", seed=0, budget=20)

    @pytest.mark.unit
    def test_slicing_without_a_budget(self):
        from cwfcheck.models import SliceModel, base_context, build_model, slice_model
        from cwfcheck.syntax import Empty

        model, _ = build_model("standard")
        sliced = slice_model(model, base_context(model, Empty()))
        assert isinstance(sliced, SliceModel)


class TestFullBudget:
    """Full-size harness runs"""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["syntax", "standard"])
    def test_default_budget(self, name, settings):
        from cwfcheck.harness import law_harness
        from cwfcheck.models import build_model

        model, sampler = build_model(name)
        assert law_harness(model, sampler, settings.budget, seed=0).passed

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("name", ["syntax", "standard"])
    def test_slices_at_full_budget(self, name, seed):
        from cwfcheck.harness import law_harness
        from cwfcheck.models import build_slice

        model, sampler = build_slice(name, seed=seed)
        report = law_harness(model, sampler, 500, seed=seed)
        assert report.passed, report.to_dict()

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["syntax", "standard"])
    def test_representability_alone(self, name):
        from cwfcheck.harness import law_harness
        from cwfcheck.models import build_model

        model, sampler = build_model(name)
        report = law_harness(model, sampler, 200, seed=0, schemas=["representability"])
        assert [r.schema for r in report.results] == ["representability"]
        assert report.passed, report.to_dict()
