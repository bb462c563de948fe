import random
from itertools import product

import pytest

from graveropt.core import IntMatrix, conformal_leq, negate
from graveropt.graver import (
    GraverBasis,
    compute_graver,
    expand_duplicated_column,
    expand_negated_column,
    graver_oracle,
    project_first_n,
    verify_against_oracle,
)
from tests.conftest import random_int_matrix


class TestComputeGraver:
    def test_free_two_dims(self):
        assert compute_graver(IntMatrix.zero(0, 2)).elements == {(1, 0), (0, 1)}

    def test_difference_matrix(self):
        assert compute_graver(IntMatrix.from_rows([[1, -1]])).elements == {(1, 1)}

    def test_one_two_matrix(self):
        assert compute_graver(IntMatrix.from_rows([[1, 2]])).elements == {(2, -1)}

    def test_trivial_kernel(self):
        assert compute_graver(IntMatrix.from_rows([[1]])).elements == frozenset()

    def test_sum_of_three(self):
        got = compute_graver(IntMatrix.from_rows([[1, 1, 1]])).elements
        assert got == {(1, -1, 0), (1, 0, -1), (0, 1, -1)}

    def test_deterministic_across_runs(self):
        a = IntMatrix.from_rows([[2, -3, 1], [0, 1, -2]])
        assert compute_graver(a).elements == compute_graver(a).elements

    def test_basis_invariants_hold(self):
        rng = random.Random(17)
        for _ in range(6):
            a = random_int_matrix(rng, rng.randint(1, 2), rng.randint(2, 4))
            basis = compute_graver(a)
            elems = basis.sorted_elements()
            for v in elems:
                assert any(v)
                assert not any(a.mat_vec(v))
            for v in elems:
                for g in elems:
                    if g == v:
                        continue
                    assert not conformal_leq(g, v) and not conformal_leq(g, negate(v))


class TestMembership:
    def test_negation_blind(self):
        basis = compute_graver(IntMatrix.from_rows([[1, 2]]))
        assert (2, -1) in basis
        assert (-2, 1) in basis
        assert (1, 0) not in basis
        assert (0, 0) not in basis
        assert (2, -1, 0) not in basis
        assert len(basis) == 1


class TestOracle:
    def test_free_two_dims(self):
        assert graver_oracle(IntMatrix.zero(0, 2), 3) == {(1, 0), (0, 1)}

    def test_sum_of_three(self):
        got = graver_oracle(IntMatrix.from_rows([[1, 1, 1]]), 2)
        assert got == {(1, -1, 0), (1, 0, -1), (0, 1, -1)}

    def test_two_minus_three(self):
        assert graver_oracle(IntMatrix.from_rows([[2, -3]]), 5) == {(3, 2)}

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            graver_oracle(IntMatrix.zero(0, 2), -1)


class TestAgainstOracle:
    def test_random_matrices_verify(self):
        rng = random.Random(23)
        for _ in range(8):
            a = random_int_matrix(rng, rng.randint(0, 2), rng.randint(2, 4))
            basis = compute_graver(a)
            assert verify_against_oracle(a, basis, factor=2), a.entries

    def test_oracle_at_exact_max_norm(self):
        a = IntMatrix.from_rows([[2, -3, 1]])
        basis = compute_graver(a)
        bound = max(max(abs(x) for x in v) for v in basis.elements)
        assert graver_oracle(a, bound) == basis.elements

    def test_positive_sum_property(self):
        # every boxed kernel vector is conformally above some basis element
        rng = random.Random(29)
        for _ in range(5):
            a = random_int_matrix(rng, rng.randint(1, 2), rng.randint(2, 3))
            basis = compute_graver(a)
            signed = {v for g in basis.elements for v in (g, negate(g))}
            for v in product(range(-3, 4), repeat=a.cols):
                if not any(v) or any(a.mat_vec(v)):
                    continue
                assert any(conformal_leq(g, v) for g in signed), (a.entries, v)


class TestColumnExpansion:
    def test_negated_from_trivial_basis(self):
        base = compute_graver(IntMatrix.from_rows([[1]]))
        widened = expand_negated_column(base)
        assert widened.elements == {(1, 1)}
        assert widened.elements == compute_graver(IntMatrix.from_rows([[1, -1]])).elements

    def test_swap_vector_always_present(self):
        base = compute_graver(IntMatrix.from_rows([[1, 2]]))
        assert (0, 1, 1) in expand_negated_column(base)
        assert (0, 1, -1) in expand_duplicated_column(base)

    def test_duplicated_is_column_symmetric(self):
        base = compute_graver(IntMatrix.from_rows([[2, -3]]))
        dup = expand_duplicated_column(base)
        for v in dup.sorted_elements():
            assert v[:-2] + (v[-1], v[-2]) in dup

    def test_matches_direct_computation(self):
        rng = random.Random(31)
        for _ in range(5):
            rows = [[rng.randint(-2, 2) for _ in range(rng.randint(2, 4))]
                    for _ in range(rng.randint(1, 2))]
            rows = [r for r in rows]
            width = len(rows[0])
            rows = [r[:width] for r in rows]
            a = IntMatrix.from_rows(rows, cols=width)
            base = compute_graver(a)
            neg_direct = compute_graver(
                IntMatrix.from_rows([list(r) + [-r[-1]] for r in rows], cols=width + 1))
            dup_direct = compute_graver(
                IntMatrix.from_rows([list(r) + [r[-1]] for r in rows], cols=width + 1))
            assert expand_negated_column(base).elements == neg_direct.elements
            assert expand_duplicated_column(base).elements == dup_direct.elements

    def test_iterated_expansion_projects_back(self):
        # widening by repeated +/- copies of the last column leaves the
        # projection onto the untouched coordinates unchanged
        for rows in ([[1, 2]], [[1, 1]], [[2, -3], [0, 1]]):
            a = IntMatrix.from_rows(rows)
            base = compute_graver(a)
            chained = expand_duplicated_column(base)
            chained = expand_negated_column(chained)
            chained = expand_duplicated_column(chained)
            n = a.cols - 1
            assert (project_first_n(chained.elements, n)
                    == project_first_n(base.elements, n))


class TestProjection:
    def test_plain_projection(self):
        assert project_first_n({(1, 0, -1, 2)}, 2) == {(1, 0)}

    def test_zero_projection_removed(self):
        assert project_first_n({(0, 0, 1, -1)}, 2) == frozenset()

    def test_canonicalizes(self):
        assert project_first_n({(0, -2, 5, 1)}, 2) == {(0, 2)}

    def test_lawrence_lifting_recovers_basis(self):
        a = IntMatrix.from_rows([[1, 2]])
        lifted = IntMatrix.from_rows([[1, 2, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1]])
        basis = compute_graver(lifted)
        assert basis.elements == {(2, -1, -2, 1)}
        assert project_first_n(basis.elements, 2) == compute_graver(a).elements


class TestGraverBasisType:
    def test_frozen_and_hashable(self):
        b = GraverBasis(2, frozenset({(1, 0)}))
        with pytest.raises(AttributeError):
            b.dimension = 3
        assert hash(b) == hash(GraverBasis(2, frozenset({(1, 0)})))


class TestSymmetry:
    S3 = [(1, 0, 2), (1, 2, 0)]  # a transposition and a 3-cycle generate S3

    def test_closure_of_s3_generators(self):
        from graveropt.graver import close_permutation_group
        assert len(close_permutation_group(self.S3, 3)) == 6

    def test_closure_contains_identity(self):
        from graveropt.graver import close_permutation_group
        assert (0, 1, 2) in close_permutation_group([(1, 2, 0)], 3)

    def test_closure_rejects_non_permutation(self):
        from graveropt.graver import close_permutation_group
        with pytest.raises(ValueError):
            close_permutation_group([(0, 0, 1)], 3)

    def test_closure_cap(self):
        from graveropt.graver import close_permutation_group
        with pytest.raises(ValueError):
            close_permutation_group(self.S3, 3, cap=3)

    def test_sum_of_three_with_full_symmetry(self):
        a = IntMatrix(1, 3, ((1, 1, 1),))
        plain = compute_graver(a)
        sym = compute_graver(a, symmetry=self.S3)
        assert plain.elements == sym.elements

    def test_cyclic_symmetry_on_four_columns(self):
        a = IntMatrix(1, 4, ((1, 1, 1, 1),))
        plain = compute_graver(a)
        sym = compute_graver(a, symmetry=[(1, 2, 3, 0)])
        assert plain.elements == sym.elements

    def test_partial_symmetry(self):
        # only the outer columns are exchangeable here
        a = IntMatrix(2, 3, ((1, 1, 0), (0, 1, 1)))
        plain = compute_graver(a)
        sym = compute_graver(a, symmetry=[(2, 1, 0)])
        assert plain.elements == sym.elements

    def test_kernel_violation_rejected(self):
        a = IntMatrix(1, 3, ((1, 2, 0),))
        with pytest.raises(ValueError):
            compute_graver(a, symmetry=[(1, 0, 2)])

    def test_trivial_kernel_skips_validation(self):
        # no seeds means no completion and no group to check
        a = IntMatrix(2, 2, ((1, 0), (0, 1)))
        assert len(compute_graver(a, symmetry=[(1, 0)])) == 0

    def test_identity_only_group_matches_plain(self):
        a = IntMatrix(1, 3, ((1, 1, 1),))
        sym = compute_graver(a, symmetry=[(0, 1, 2)])
        assert sym.elements == compute_graver(a).elements

    def test_random_circulant_systems(self):
        rng = random.Random(11)
        shift = (1, 2, 3, 4, 0)
        for _ in range(10):
            row = tuple(rng.randint(-2, 2) for _ in range(5))
            a_rows = [row]
            for _ in range(4):
                row = tuple(row[j] for j in shift)
                a_rows.append(row)
            a = IntMatrix(5, 5, tuple(a_rows))
            plain = compute_graver(a)
            sym = compute_graver(a, symmetry=[shift])
            assert plain.elements == sym.elements
