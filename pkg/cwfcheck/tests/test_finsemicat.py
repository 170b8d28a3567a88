"""
Unit Tests for Finite Semicategories

Construction checks, identity theory, nerves and slices, set-valued
functors and the brute-force enumerator.
"""

import pytest


class TestConstruction:
    """FinSemicat validation at build time"""

    @pytest.mark.unit
    def test_named_instances_build(self, z2, trivial, codiscrete2, constant_composition):
        assert len(z2.morphisms) == 2
        assert len(trivial.morphisms) == 1
        assert len(codiscrete2.morphisms) == 4
        assert constant_composition.compose(1, 1) == 0

    @pytest.mark.unit
    def test_partial_composition_is_rejected(self):
        from cwfcheck.errors import SemicatError
        from cwfcheck.finsemicat import FinSemicat

        with pytest.raises(SemicatError, match="not total"):
            FinSemicat.build(["x"], [("x", "x", "a"), ("x", "x", "b")], [("a", "a", "a")])

    @pytest.mark.unit
    def test_non_associative_composition_is_rejected(self):
        from cwfcheck.errors import SemicatError
        from cwfcheck.finsemicat import FinSemicat

        composition = [
            (g, f, "b" if (g, f) == ("a", "a") else "a")
            for g in ("a", "b") for f in ("a", "b")
        ]
        with pytest.raises(SemicatError, match="not associative"):
            FinSemicat.build(["x"], [("x", "x", "a"), ("x", "x", "b")], composition)

    @pytest.mark.unit
    def test_composite_in_wrong_hom_is_rejected(self):
        from cwfcheck.errors import SemicatError
        from cwfcheck.finsemicat import FinSemicat

        with pytest.raises(SemicatError, match="wrong hom"):
            FinSemicat.build(
                ["x", "y"],
                [("x", "x", "i"), ("x", "y", "f")],
                [("i", "i", "f"), ("f", "i", "f")],
            )

    @pytest.mark.unit
    def test_unknown_names_are_rejected(self):
        from cwfcheck.errors import SemicatError
        from cwfcheck.finsemicat import FinSemicat

        with pytest.raises(SemicatError, match="unknown object"):
            FinSemicat.build(["x"], [("x", "y", "f")], [])
        with pytest.raises(SemicatError, match="unknown morphism"):
            FinSemicat.build(["x"], [("x", "x", "f")], [("f", "f", "g")])

    @pytest.mark.unit
    def test_compose_outside_domain(self, codiscrete2):
        from cwfcheck.errors import SemicatError

        f = codiscrete2.morphism_index("x0x1")
        with pytest.raises(SemicatError, match="not composable"):
            codiscrete2.compose(f, f)


class TestIdentityTheory:
    """Equivalences, good identities, neutrality and I(e)"""

    @pytest.mark.unit
    def test_z2_has_the_unit_as_its_identity(self, z2):
        from cwfcheck.finsemicat import good_identities, identity_structure, is_equivalence

        assert all(is_equivalence(z2, m) for m in range(2))
        assert good_identities(z2, 0) == [z2.morphism_index("e")]
        assert identity_structure(z2) == {0: z2.morphism_index("e")}

    @pytest.mark.unit
    def test_trivial_idempotent_is_an_identity(self, trivial):
        from cwfcheck.finsemicat import identity_structure

        assert identity_structure(trivial) == {0: 0}

    @pytest.mark.unit
    def test_constant_composition_has_no_identity(self, constant_composition):
        from cwfcheck.finsemicat import identity_structure, is_equivalence, is_idempotent

        a = constant_composition.morphism_index("a")
        assert is_idempotent(constant_composition, a)
        assert not is_equivalence(constant_composition, a)
        assert identity_structure(constant_composition) is None

    @pytest.mark.unit
    @pytest.mark.parametrize("name", ["z2", "trivial", "codiscrete2", "constant_composition"])
    def test_good_identities_are_neutral(self, name, request):
        from cwfcheck.finsemicat import check_id_characterisation

        C = request.getfixturevalue(name)
        report = check_id_characterisation(C)
        assert report.passed
        assert report.checked == sum(len(C.hom(x, x)) for x in range(len(C.objects)))

    @pytest.mark.unit
    def test_characterisation_over_all_small_monoids(self):
        from cwfcheck.finsemicat import check_id_characterisation, enumerate_shape

        for C in enumerate_shape(1, (3,)):
            assert check_id_characterisation(C).passed

    @pytest.mark.unit
    def test_I_of_an_equivalence(self, z2, codiscrete2):
        from cwfcheck.finsemicat import I_of

        assert I_of(z2, z2.morphism_index("g")) == z2.morphism_index("e")
        e = codiscrete2.morphism_index("x0x1")
        assert I_of(codiscrete2, e) == codiscrete2.morphism_index("x0x0")

    @pytest.mark.unit
    def test_I_of_needs_an_equivalence(self, constant_composition):
        from cwfcheck.errors import PreconditionError
        from cwfcheck.finsemicat import I_of

        with pytest.raises(PreconditionError):
            I_of(constant_composition, 0)


class TestConstructions:
    """Nerve, opposite and slice"""

    @pytest.mark.unit
    def test_nerve_counts_chains(self, z2, codiscrete2):
        from cwfcheck.finsemicat import nerve

        assert nerve(z2, 2).cell_counts() == [1, 2, 4]
        assert nerve(codiscrete2, 3).cell_counts() == [2, 4, 8, 16]

    @pytest.mark.unit
    def test_nerve_inner_face_composes(self, z2):
        from cwfcheck.finsemicat import nerve

        A = nerve(z2, 2)
        cell = A.index(2, "g;g")
        assert A.name(1, A.face(2, cell, 1)) == "e"
        assert A.name(1, A.face(2, cell, 0)) == "g"

    @pytest.mark.unit
    def test_nerve_is_valid(self, constant_composition):
        from cwfcheck.finsemicat import nerve
        from cwfcheck.finsset import validate

        assert validate(nerve(constant_composition, 4)).valid

    @pytest.mark.unit
    def test_negative_cap(self, z2):
        from cwfcheck.errors import SemicatError
        from cwfcheck.finsemicat import nerve

        with pytest.raises(SemicatError):
            nerve(z2, -1)

    @pytest.mark.unit
    def test_opposite(self, z2, codiscrete2):
        from cwfcheck.finsemicat import opposite

        assert opposite(z2) == z2
        op = opposite(codiscrete2)
        f = op.morphisms[op.morphism_index("x0x1")]
        assert (op.objects[f.src], op.objects[f.dst]) == ("x1", "x0")

    @pytest.mark.unit
    def test_slice_lifts_identities(self, z2):
        from cwfcheck.finsemicat import slice

        S, report = slice(z2, 0)
        assert S.objects == ("e", "g")
        assert len(S.morphisms) == 4
        assert report.passed
        assert report.lifted_identities == {"e": "e@e", "g": "e@g"}

    @pytest.mark.unit
    def test_slice_without_base_identities(self, constant_composition):
        from cwfcheck.finsemicat import slice

        _, report = slice(constant_composition, 0)
        assert not report.base_has_identities
        assert report.passed


class TestFunctors:
    """Set-valued functors and their elements"""

    @pytest.mark.unit
    def test_functoriality_is_checked(self, z2):
        from cwfcheck.errors import SemicatError
        from cwfcheck.finsemicat import FinSetFunctor

        with pytest.raises(SemicatError, match="not functorial"):
            FinSetFunctor(z2, (("a", "b"),), ((0, 1), (0, 0)))

    @pytest.mark.unit
    def test_group_action_elements_give_a_kan_projection(self, z2):
        from cwfcheck.finsemicat import FinSetFunctor, category_of_elements
        from cwfcheck.finsset import FibrationKind, fibration_kind

        F = FinSetFunctor(z2, (("a", "b"),), ((0, 1), (1, 0)))
        elements, projection = category_of_elements(F, 3)
        assert elements.objects == ("x:a", "x:b")
        assert [m.name for m in elements.morphisms] == ["e@a", "e@b", "g@a", "g@b"]
        assert fibration_kind(projection, 3) == FibrationKind.KAN

    @pytest.mark.unit
    def test_representation(self, z2, trivial):
        from cwfcheck.finsemicat import FinSetFunctor, representation_check

        swap = FinSetFunctor(z2, (("a", "b"),), ((0, 1), (1, 0)))
        assert representation_check(swap, 0, 0)
        collapse = FinSetFunctor(trivial, (("p", "q"),), ((0, 0),))
        assert not representation_check(collapse, 0, 0)

    @pytest.mark.unit
    def test_id_preservation(self, z2, trivial):
        from cwfcheck.finsemicat import FinSetFunctor, functor_id_preserving, id_preservation_failures

        swap = FinSetFunctor(z2, (("a", "b"),), ((0, 1), (1, 0)))
        assert functor_id_preserving(swap)
        collapse = FinSetFunctor(trivial, (("p", "q"),), ((0, 0),))
        failures = id_preservation_failures(collapse)
        assert len(failures) == 1
        assert "not injective" in failures[0]

    @pytest.mark.unit
    def test_id_preservation_needs_identities(self, constant_composition):
        from cwfcheck.errors import PreconditionError
        from cwfcheck.finsemicat import FinSetFunctor, id_preservation_failures

        F = FinSetFunctor(constant_composition, (("u",),), ((0,), (0,)))
        with pytest.raises(PreconditionError):
            id_preservation_failures(F)

    @pytest.mark.unit
    def test_enumerate_functors_on_trivial(self, trivial):
        from cwfcheck.finsemicat import enumerate_functors

        # carriers of size 0, 1 and 2 with idempotent actions
        assert len(list(enumerate_functors(trivial, 2))) == 1 + 1 + 3

    @pytest.mark.slow
    @pytest.mark.oracle
    def test_every_small_functor_gives_a_left_fibration(self):
        from cwfcheck.finsemicat import (
            EnumSpec, category_of_elements, enumerate_functors, enumerate_semicats,
        )
        from cwfcheck.finsset import FibrationKind, fibration_kind

        spec = EnumSpec(max_objects=2, max_total_morphisms=2, min_objects=1, min_total_morphisms=0)
        functors = 0
        for C in enumerate_semicats(spec):
            for F in enumerate_functors(C, 2):
                _, projection = category_of_elements(F, 3)
                kind = fibration_kind(projection, 3)
                assert kind in (FibrationKind.LEFT, FibrationKind.KAN), (C.morphisms, F.carriers)
                functors += 1
        assert functors > 100


class TestEnumeration:
    """Labeled semicategories by hom-size shape"""

    @pytest.mark.unit
    @pytest.mark.parametrize("morphisms,expected", [(0, 1), (1, 1), (2, 8), (3, 113)])
    def test_one_object_counts(self, morphisms, expected, settings):
        from cwfcheck.finsemicat import EnumSpec, enumerate_semicats

        spec = EnumSpec(max_objects=1, max_total_morphisms=morphisms)
        assert sum(1 for _ in enumerate_semicats(spec, settings)) == expected

    @pytest.mark.unit
    def test_two_objects_one_morphism(self, settings):
        from cwfcheck.finsemicat import EnumSpec, enumerate_shapes, enumerate_semicats

        spec = EnumSpec(max_objects=2, max_total_morphisms=1)
        assert len(enumerate_shapes(spec, settings)) == 4
        assert sum(1 for _ in enumerate_semicats(spec, settings)) == 4

    @pytest.mark.unit
    def test_ranges_include_smaller_shapes(self, settings):
        from cwfcheck.finsemicat import EnumSpec, enumerate_semicats

        spec = EnumSpec(max_objects=1, max_total_morphisms=2, min_total_morphisms=0)
        assert sum(1 for _ in enumerate_semicats(spec, settings)) == 1 + 1 + 8

    @pytest.mark.unit
    def test_enumeration_is_deterministic(self):
        from cwfcheck.finsemicat import enumerate_shape

        assert list(enumerate_shape(1, (2,))) == list(enumerate_shape(1, (2,)))

    @pytest.mark.unit
    def test_bounds(self, settings):
        from cwfcheck.errors import EnumerationBoundError
        from cwfcheck.finsemicat import EnumSpec, enumerate_shapes

        with pytest.raises(EnumerationBoundError):
            EnumSpec(max_objects=-1, max_total_morphisms=1)
        with pytest.raises(EnumerationBoundError):
            EnumSpec(max_objects=1, max_total_morphisms=1, min_objects=2)
        with pytest.raises(EnumerationBoundError):
            enumerate_shapes(EnumSpec(max_objects=1, max_total_morphisms=5), settings)
