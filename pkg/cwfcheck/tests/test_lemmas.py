"""
Unit Tests for the Lemma Suite

The identity lemmas on named semicategories and on whole enumeration
shapes, with the oracle cross-checks switched on.
"""

import pytest


class TestCheckSemicat:
    """check_semicat"""

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["z2", "trivial", "codiscrete2", "constant_composition"])
    def test_named_instances_pass(self, name, request):
        from cwfcheck.lemmas import LEMMAS, ORACLE_LEMMAS, check_semicat

        checks = check_semicat(request.getfixturevalue(name), oracle=True)
        assert [c.id for c in checks] == list(LEMMAS + ORACLE_LEMMAS)
        assert all(c.passed for c in checks), [c for c in checks if not c.passed]

    @pytest.mark.unit
    def test_oracle_is_opt_in(self, z2):
        from cwfcheck.lemmas import LEMMAS, check_semicat

        assert [c.id for c in check_semicat(z2)] == list(LEMMAS)

    @pytest.mark.unit
    def test_slice_check_is_skipped_without_identities(self, constant_composition):
        from cwfcheck.lemmas import check_semicat

        checks = {c.id: c for c in check_semicat(constant_composition, oracle=True)}
        assert checks["slice-identities"].detail == {"skipped": "no identity structure"}

    @pytest.mark.unit
    def test_describe(self, trivial):
        from cwfcheck.lemmas import describe_semicat

        assert describe_semicat(trivial) == {"objects": ["x"], "composition": ["f∘f=f"]}


class TestShapes:
    """check_shape over every semicategory of a hom-size shape"""

    @pytest.mark.unit
    def test_one_object_two_morphisms(self):
        from cwfcheck.lemmas import check_shape

        summary = check_shape(1, (2,), oracle=True)
        assert summary.id == "shape/1/2"
        assert summary.instances == 8
        assert summary.passed
        assert summary.to_dict()["hom_sizes"] == [2]

    @pytest.mark.unit
    def test_two_objects(self):
        from cwfcheck.lemmas import check_shape

        summary = check_shape(2, (1, 1, 0, 1))
        assert summary.instances > 0
        assert summary.passed, summary.to_dict()

    @pytest.mark.slow
    @pytest.mark.oracle
    def test_one_object_three_morphisms_with_oracle(self):
        from cwfcheck.lemmas import check_shape

        summary = check_shape(1, (3,), oracle=True)
        assert summary.instances == 113
        assert summary.passed, summary.to_dict()

    @pytest.mark.slow
    @pytest.mark.oracle
    def test_up_to_two_objects_three_morphisms_with_oracle(self):
        from cwfcheck.finsemicat import EnumSpec, enumerate_semicats
        from cwfcheck.lemmas import check_semicat, describe_semicat

        spec = EnumSpec(max_objects=2, max_total_morphisms=3, min_total_morphisms=0)
        count = 0
        for C in enumerate_semicats(spec):
            failed = [c.id for c in check_semicat(C, oracle=True) if not c.passed]
            assert failed == [], describe_semicat(C)
            count += 1
        assert count == 318
