"""
Unit Tests for the Semi-Simplex Category

Counts of monotone maps, simplex and horn cells, face-map identities and
the horn inclusion.
"""

from math import comb

import pytest


class TestMonotoneMaps:
    """Strictly increasing maps between finite ordinals"""

    @pytest.mark.unit
    @pytest.mark.parametrize("i", range(6))
    @pytest.mark.parametrize("j", range(6))
    def test_count_is_binomial(self, i, j):
        from cwfcheck.simplexcat import enumerate_monotone

        assert len(enumerate_monotone(i, j)) == comb(j + 1, i + 1)

    @pytest.mark.unit
    def test_enumeration_is_lexicographic(self):
        from cwfcheck.simplexcat import enumerate_monotone

        values = [m.values for m in enumerate_monotone(1, 2)]
        assert values == [(0, 1), (0, 2), (1, 2)]

    @pytest.mark.unit
    def test_rejects_non_increasing_values(self):
        from cwfcheck.errors import SimplexError
        from cwfcheck.simplexcat import MonotoneMap

        with pytest.raises(SimplexError):
            MonotoneMap(1, 2, (1, 1))
        with pytest.raises(SimplexError):
            MonotoneMap(1, 2, (0, 3))

    @pytest.mark.unit
    def test_negative_ordinal_is_an_error(self):
        from cwfcheck.errors import SimplexError
        from cwfcheck.simplexcat import enumerate_monotone

        with pytest.raises(SimplexError):
            enumerate_monotone(-1, 2)

    @pytest.mark.unit
    def test_composition_and_identity(self):
        from cwfcheck.simplexcat import MonotoneMap, compose_monotone, identity_map

        f = MonotoneMap(1, 2, (0, 2))
        g = MonotoneMap(2, 3, (0, 1, 3))
        assert compose_monotone(g, f).values == (0, 3)
        assert compose_monotone(identity_map(2), f) == f
        assert compose_monotone(f, identity_map(1)) == f

    @pytest.mark.unit
    def test_composition_checks_domains(self):
        from cwfcheck.errors import SimplexError
        from cwfcheck.simplexcat import compose_monotone, face_map

        with pytest.raises(SimplexError):
            compose_monotone(face_map(2, 0), face_map(3, 0))


class TestFaceMaps:
    """d_i omits i"""

    @pytest.mark.unit
    def test_face_values(self):
        from cwfcheck.simplexcat import face_map

        assert face_map(2, 1).values == (0, 2)
        assert face_map(1, 0).values == (1,)

    @pytest.mark.unit
    def test_out_of_range_index(self):
        from cwfcheck.errors import SimplexError
        from cwfcheck.simplexcat import face_map

        with pytest.raises(SimplexError):
            face_map(2, 3)
        with pytest.raises(SimplexError):
            face_map(0, 0)

    @pytest.mark.unit
    @pytest.mark.parametrize("n", range(2, 6))
    def test_semisimplicial_identity(self, n):
        """d_j ∘ d_i = d_i ∘ d_{j-1} for i < j"""
        from cwfcheck.simplexcat import compose_monotone, face_map

        for j in range(n + 1):
            for i in range(j):
                left = compose_monotone(face_map(n, j), face_map(n - 1, i))
                right = compose_monotone(face_map(n, i), face_map(n - 1, j - 1))
                assert left == right


class TestCells:
    """Simplexes and horns as cell sets"""

    @pytest.mark.unit
    @pytest.mark.parametrize("n", range(6))
    def test_simplex_counts(self, n):
        from cwfcheck.simplexcat import simplex_cells

        counts = [len(level) for level in simplex_cells(n, n)]
        assert counts == [comb(n + 1, m + 1) for m in range(n + 1)]

    @pytest.mark.unit
    @pytest.mark.parametrize("n", range(1, 6))
    def test_horn_counts(self, n):
        from cwfcheck.simplexcat import horn_cells

        for k in range(n + 1):
            counts = [len(level) for level in horn_cells(n, k, n)]
            expected = [comb(n + 1, m + 1) for m in range(n + 1)]
            expected[n] -= 1
            expected[n - 1] -= 1
            assert counts == expected

    @pytest.mark.unit
    def test_horn_drops_the_face_opposite_k(self):
        from cwfcheck.simplexcat import horn_cells

        edges = horn_cells(2, 1)[1]
        assert edges == [(0, 1), (1, 2)]
        assert horn_cells(2, 0)[1] == [(0, 1), (0, 2)]

    @pytest.mark.unit
    def test_boundary_has_no_top_cell(self):
        from cwfcheck.simplexcat import boundary_cells

        assert [len(level) for level in boundary_cells(2)] == [3, 3]

    @pytest.mark.unit
    def test_horn_index_out_of_range(self):
        from cwfcheck.errors import SimplexError
        from cwfcheck.simplexcat import horn_cells

        with pytest.raises(SimplexError):
            horn_cells(2, 3)

    @pytest.mark.unit
    def test_simplex_name(self):
        from cwfcheck.simplexcat import simplex_name

        assert simplex_name((0, 2, 3)) == "0-2-3"


class TestFiniteSimplexes:
    """Δⁿ and Λⁿₖ as FinSSets"""

    @pytest.mark.unit
    def test_standard_simplex_is_valid(self):
        from cwfcheck.finsset import validate
        from cwfcheck.simplexcat import standard_simplex

        A = standard_simplex(3, 3)
        assert validate(A).valid
        assert A.cell_counts() == [4, 6, 4, 1]

    @pytest.mark.unit
    def test_faces_follow_vertex_omission(self, simplex2):
        top = simplex2.index(2, "0-1-2")
        names = [simplex2.name(1, simplex2.face(2, top, i)) for i in range(3)]
        assert names == ["1-2", "0-2", "0-1"]

    @pytest.mark.unit
    def test_horn_inclusion_is_a_valid_map(self):
        from cwfcheck.finsset import check_map
        from cwfcheck.simplexcat import horn_inclusion

        m = horn_inclusion(2, 1, 2)
        assert check_map(m) == []
        assert m.source.cell_counts() == [3, 2, 0]
        assert m.target.cell_counts() == [3, 3, 1]
