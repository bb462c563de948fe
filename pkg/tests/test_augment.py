import random
from fractions import Fraction

import pytest

from graveropt.core import IntMatrix
from graveropt.graver import compute_graver
from graveropt.objective import (
    GeometricAbs,
    PiecewiseTable,
    ScaledAbs,
    ScaledEvenPower,
    SeparableObjective,
    Term,
    Zero,
    linear_objective,
)
from graveropt.augment import (
    CipInstance,
    InfeasibleStartError,
    SolveStatus,
    binary_split_minimum,
    brute_force_optimum,
    check_compatible,
    embed_slack,
    find_feasible_point,
    find_improving,
    format_instance,
    instance_test_set,
    line_search,
    max_feasible_step,
    parse_instance,
    slack_lifted,
    solve,
    solve_bounded,
)
from graveropt.testset import TestSet, compute_test_set
from tests.conftest import two_square_instance


def pair_test_set():
    return compute_test_set(IntMatrix.zero(0, 2),
                            IntMatrix.from_rows([[1, 1], [1, -1]]))


def axis_only():
    return TestSet(2, frozenset({(1, 0), (0, 1)}))


FREE2 = IntMatrix.zero(0, 2)


def linear_instance():
    return CipInstance(FREE2, (), None, linear_objective([1, 1]))


class TestMaxFeasibleStep:
    def test_lower_bound_limits(self):
        inst = linear_instance()
        assert max_feasible_step(inst, (3, 2), (1, 0)) == 3
        assert max_feasible_step(inst, (3, 2), (1, 1)) == 2

    def test_unbounded_direction(self):
        inst = linear_instance()
        assert max_feasible_step(inst, (3, 2), (-1, 0)) is None

    def test_upper_bound_limits(self):
        inst = CipInstance(FREE2, (), (5, 5), linear_objective([1, 1]))
        assert max_feasible_step(inst, (3, 2), (-1, 0)) == 2


class TestLineSearch:
    def test_linear_slides_to_bound(self):
        assert line_search(linear_instance(), (3, 2), (1, 0)) == 3

    def test_quadratic_stops_at_minimum(self, square_pair):
        assert line_search(square_pair, (2, 2), (1, 1)) == 2

    def test_infeasible_unit_step(self):
        assert line_search(linear_instance(), (0, 0), (1, 0)) is None

    def test_non_improving_step(self, square_pair):
        assert line_search(square_pair, (1, 1), (-1, -1)) is None

    def test_descending_ray_hits_cap(self):
        inst = CipInstance(FREE2, (), None, linear_objective([1, 1]))
        with pytest.raises(RuntimeError):
            line_search(inst, (10 ** 7, 0), (1, 0), cap=1000)


class TestFindImproving:
    def test_coupling_direction_found(self, square_pair):
        t = pair_test_set()
        assert find_improving(square_pair, t, (1, 1)) == ((1, 1), 1)

    def test_axis_set_stalls(self, square_pair):
        assert find_improving(square_pair, axis_only(), (1, 1)) is None

    def test_optimum_returns_none(self, square_pair):
        assert find_improving(square_pair, pair_test_set(), (0, 0)) is None

    def test_infeasible_start_raises(self, square_pair):
        with pytest.raises(InfeasibleStartError):
            find_improving(square_pair, pair_test_set(), (-1, 0))

    def test_best_improving_picks_deepest(self):
        # from (2,3): sliding along (0,1) lands at (2,0) value 6, sliding
        # along (1,1) lands at (0,1) value 1; best-improving takes the latter
        inst = CipInstance(FREE2, (), None, linear_objective([3, 1]))
        t = TestSet(2, frozenset({(0, 1), (1, 1)}))
        first = find_improving(inst, t, (2, 3))
        assert first == ((0, 1), 3)
        best = find_improving(inst, t, (2, 3), best=True)
        assert best == ((1, 1), 2)


class TestSolve:
    def test_reaches_origin(self, square_pair):
        report = solve(square_pair, pair_test_set(), (5, 3))
        assert report.status is SolveStatus.OPTIMAL
        assert report.optimum == (0, 0)
        assert report.value == 0

    def test_truncated_set_stops_short(self, square_pair):
        report = solve(square_pair, axis_only(), (1, 1))
        assert report.status is SolveStatus.OPTIMAL
        assert report.optimum == (1, 1)
        assert report.value == 4

    def test_linear_case(self):
        report = solve(linear_instance(), TestSet(2, frozenset({(1, 0), (0, 1)})),
                       (3, 2))
        assert report.optimum == (0, 0)
        assert report.value == 0

    def test_steps_strictly_decrease(self, square_pair):
        report = solve(square_pair, pair_test_set(), (5, 3))
        values = [s.value_after for s in report.steps]
        assert values == sorted(values, reverse=True)
        assert len(set(values)) == len(values)
        assert values[-1] == report.value

    def test_geometric_objective_matches_brute_force(self):
        obj = SeparableObjective(2, (
            Term(GeometricAbs(3), (1, 1), -3),
            Term(ScaledEvenPower(4, 6), (1, -1), 2),
        ), (Fraction(2), Fraction(-1)))
        inst = CipInstance(FREE2, (), None, obj)
        report = solve(inst, pair_test_set(), (5, 0))
        z, val = brute_force_optimum(inst, (10, 10))
        assert report.value == val
        assert report.optimum == z

    def test_unbounded_instance_reports_suspicion(self):
        inst = CipInstance(FREE2, (), None, linear_objective([-1, 0]))
        report = solve(inst, TestSet(2, frozenset({(1, 0)})), (0, 0), cap=50)
        assert report.status is SolveStatus.UNBOUNDED_SUSPECTED

    def test_infeasible_start(self, square_pair):
        with pytest.raises(InfeasibleStartError):
            solve(square_pair, pair_test_set(), (0, 5, 5))


class TestCompatibility:
    def test_wrong_dimension_rejected(self, square_pair):
        with pytest.raises(ValueError):
            check_compatible(square_pair, TestSet(3, frozenset({(1, 0, 0)})))

    def test_foreign_constraint_matrix_rejected(self, square_pair):
        other = compute_test_set(IntMatrix.from_rows([[1, 1]]),
                                 IntMatrix.from_rows([[1, -1]]))
        with pytest.raises(ValueError):
            check_compatible(square_pair, other)

    def test_missing_objective_row_rejected(self):
        inst = CipInstance(FREE2, (), None, SeparableObjective(2, (
            Term(ScaledEvenPower(1, 2), (2, 1), 0),), (Fraction(0),) * 2))
        t = compute_test_set(FREE2, IntMatrix.from_rows([[1, 1]]))
        with pytest.raises(ValueError):
            check_compatible(inst, t)

    def test_anonymous_sets_trusted(self, square_pair):
        check_compatible(square_pair, axis_only())


class TestBruteForce:
    def test_square_pair_box(self, square_pair):
        assert brute_force_optimum(square_pair, (5, 5)) == ((0, 0), 0)

    def test_linear_box(self):
        assert brute_force_optimum(linear_instance(), (4, 4)) == ((0, 0), 0)

    def test_infeasible_right_hand_side(self):
        inst = CipInstance(IntMatrix.from_rows([[1, 1]]), (-1,), None,
                           linear_objective([0, 0]))
        with pytest.raises(ValueError):
            brute_force_optimum(inst, (3, 3))

    def test_equality_constraint_respected(self):
        a = IntMatrix.from_rows([[1, 1]])
        inst = CipInstance(a, (3,), None, linear_objective([2, 1]))
        z, val = brute_force_optimum(inst, (5, 5))
        assert z == (0, 3) and val == 3

    def test_find_feasible_point(self):
        a = IntMatrix.from_rows([[1, 1]])
        inst = CipInstance(a, (3,), None, linear_objective([0, 0]))
        z = find_feasible_point(inst, (5, 5))
        assert z is not None and inst.feasible(z)
        bad = CipInstance(a, (-2,), None, linear_objective([0, 0]))
        assert find_feasible_point(bad, (5, 5)) is None


class TestBinarySplitMinimum:
    def test_square_displacement_two(self):
        assert binary_split_minimum(ScaledEvenPower(1, 2), 2, 2) == 4

    def test_zero_displacement(self):
        assert binary_split_minimum(GeometricAbs(3), 0, 1) == 0

    def test_abs_negative_displacement(self):
        assert binary_split_minimum(ScaledAbs(1), -2, 3) == 2

    def test_requires_enough_bits(self):
        with pytest.raises(ValueError):
            binary_split_minimum(Zero(), 3, 2)

    def test_matches_value_difference_across_catalog(self):
        rng = random.Random(77)
        incs = {}
        run = Fraction(-3)
        for j in range(-6, 7):
            run += Fraction(rng.randint(0, 2))
            incs[j] = run if j <= 0 and run <= 0 or j >= 1 and run >= 0 else Fraction(0)
        table = PiecewiseTable(incs)
        for g in (ScaledEvenPower(1, 2), ScaledAbs(2), GeometricAbs(3), table):
            for p in range(-3, 4):
                for k in (abs(p), abs(p) + 2):
                    if k == 0:
                        continue
                    got = binary_split_minimum(g, p, k)
                    assert got == g.value(p) - g.value(0), (g, p, k)


class TestSlackMode:
    def bounded_instance(self):
        obj = SeparableObjective(2, (
            Term(ScaledEvenPower(1, 2), (1, -1), -3),), (Fraction(0), Fraction(0)))
        return CipInstance(FREE2, (), (2, 2), obj)

    def test_lift_shape(self):
        inst = self.bounded_instance()
        lifted = slack_lifted(inst)
        assert lifted.a.entries == ((1, 0, 1, 0), (0, 1, 0, 1))
        assert lifted.b == (2, 2)
        assert lifted.upper is None

    def test_embed_matches_bounds(self):
        inst = self.bounded_instance()
        assert embed_slack(inst, (1, 2)) == (1, 2, 1, 0)

    def test_lift_requires_bounds(self, square_pair):
        with pytest.raises(ValueError):
            slack_lifted(square_pair)
        with pytest.raises(ValueError):
            embed_slack(square_pair, (0, 0))

    def test_mirror_equals_direct_computation(self):
        inst = self.bounded_instance()
        fast = instance_test_set(inst, slack=True)
        lifted = slack_lifted(inst)
        direct = compute_test_set(
            lifted.a, IntMatrix.from_rows([(1, -1, 0, 0)], cols=4))
        assert fast.directions == direct.directions
        assert fast.dimension == 4

    def test_bounded_solve_exact(self):
        # minimum of (x - y - 3)^2 within [0,2]^2 is 1, e.g. at (2, 0)
        inst = self.bounded_instance()
        report, lifted = solve_bounded(inst, (0, 0))
        assert report.status is SolveStatus.OPTIMAL
        assert report.value == 1
        z = report.optimum[:2]
        assert inst.feasible(z)
        assert inst.objective.value(z) == 1

    def test_unbounded_test_set_skips_slack_rows(self, square_pair):
        t = instance_test_set(square_pair)
        assert t.dimension == 2
        assert t.directions == pair_test_set().directions


class TestRandomGlobalOptimality:
    def test_random_instances_reach_brute_force_value(self):
        rng = random.Random(101)
        done = 0
        while done < 12:
            n = rng.randint(2, 3)
            m = rng.randint(0, 1)
            a = IntMatrix.from_rows(
                [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)], cols=n)
            terms = tuple(
                Term(ScaledEvenPower(rng.choice((1, 2, 3)), 2),
                     tuple(rng.randint(-2, 2) for _ in range(n)),
                     rng.randint(-2, 2))
                for _ in range(rng.randint(1, 2)))
            if not all(any(t.coeffs) for t in terms):
                continue
            obj = SeparableObjective(
                n, terms, tuple(Fraction(rng.randint(-2, 2)) for _ in range(n)))
            upper = tuple(rng.randint(1, 3) for _ in range(n))
            inst = CipInstance(a, (0,) * m, upper, obj)
            z0 = find_feasible_point(inst, upper)
            if z0 is None:
                continue
            report, lifted = solve_bounded(inst, z0)
            assert report.status is SolveStatus.OPTIMAL
            _, want = brute_force_optimum(inst, upper)
            assert report.value == want, (a.entries, terms, upper)
            done += 1


class TestInstanceSerialization:
    def test_round_trip(self, square_pair):
        text = format_instance(square_pair)
        assert parse_instance(text) == square_pair

    def test_round_trip_with_bounds(self):
        a = IntMatrix.from_rows([[1, 1]])
        inst = CipInstance(a, (3,), (2, 2), linear_objective([1, Fraction(1, 2)]))
        assert parse_instance(format_instance(inst)) == inst

    def test_malformed_sections_rejected(self):
        from graveropt.core import ParseError
        with pytest.raises(ParseError):
            parse_instance("A\n1 2\n1 1\nobjective\nlinear | 0 0\n")
