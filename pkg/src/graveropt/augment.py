"""Augmentation solver over a fixed direction set.

Instances are min f(z) s.t. Az = b, z >= 0 (optional upper bounds),
with f separable discrete-convex.  The solver walks from a feasible
point: scan the direction set for an improving signed step, slide as
far as the one-dimensional restriction keeps decreasing, repeat.  With
a sufficient direction set the walk can only stop at a global optimum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .core import (IntMatrix, ParseError, Vec, hstack, negate, parse_int_matrix,
                   parse_int_vector, vstack)
from .objective import (DiscreteConvexFn, SeparableObjective, format_objective,
                        parse_objective)
from .testset import TestSet, compute_test_set


class InfeasibleStartError(ValueError):
    """The supplied start point violates the constraints."""


class SolveStatus(enum.Enum):
    OPTIMAL = "optimal"
    NO_FEASIBLE_START = "no-feasible-start"
    UNBOUNDED_SUSPECTED = "unbounded-suspected"


@dataclass(frozen=True)
class CipInstance:
    """Equality-constrained integer program with separable convex cost."""

    a: IntMatrix
    b: Vec
    upper: Vec | None
    objective: SeparableObjective

    def __post_init__(self) -> None:
        if len(self.b) != self.a.rows:
            raise ValueError("CipInstance: right-hand side has wrong length")
        if self.objective.n != self.a.cols:
            raise ValueError("CipInstance: objective dimension != column count")
        if self.upper is not None and len(self.upper) != self.a.cols:
            raise ValueError("CipInstance: bound vector has wrong length")

    @property
    def n(self) -> int:
        return self.a.cols

    def feasible(self, z: Sequence[int]) -> bool:
        if len(z) != self.n:
            return False
        if any(x < 0 for x in z):
            return False
        if self.upper is not None and any(x > u for x, u in zip(z, self.upper)):
            return False
        return self.a.mat_vec(tuple(z)) == self.b


@dataclass(frozen=True)
class Step:
    direction: Vec
    length: int
    value_after: Fraction


@dataclass(frozen=True)
class SolveReport:
    status: SolveStatus
    optimum: Vec | None
    value: Fraction | None
    steps: tuple[Step, ...] = field(default_factory=tuple)


def max_feasible_step(inst: CipInstance, z: Vec, t: Vec) -> int | None:
    """Largest lam >= 0 keeping z - lam*t within bounds; None if unbounded."""
    lam: int | None = None
    for j, tj in enumerate(t):
        if tj > 0:
            m = z[j] // tj
        elif tj < 0 and inst.upper is not None:
            m = (inst.upper[j] - z[j]) // (-tj)
        else:
            continue
        lam = m if lam is None else min(lam, m)
    return lam


def line_search(inst: CipInstance, z: Vec, t: Vec, cap: int = 10 ** 6) -> int | None:
    """Largest improving step count along -t from z.

    Returns the smallest lam >= 1 minimizing f(z - lam*t) over the
    feasible ray (discrete convexity makes the first non-improving
    increment final), or None when the unit step is infeasible or not
    an improvement.  A ray that is still descending after ``cap`` steps
    raises RuntimeError as a suspected unbounded instance.
    """
    limit = max_feasible_step(inst, z, t)
    if limit is not None and limit < 1:
        return None
    f = inst.objective.value
    prev = f(z)
    cur = f(tuple(a - b for a, b in zip(z, t)))
    if cur >= prev:
        return None
    lam = 1
    while limit is None or lam < limit:
        if lam >= cap:
            raise RuntimeError("line_search: still descending after %d steps" % cap)
        nxt = f(tuple(a - (lam + 1) * b for a, b in zip(z, t)))
        if nxt >= cur:
            break
        cur = nxt
        lam += 1
    return lam


def find_improving(inst: CipInstance, t_set: TestSet, z: Vec,
                   best: bool = False, cap: int = 10 ** 6):
    """An improving signed direction and step length, or None at optima.

    Default scan: canonical directions in sorted order, + before -,
    first improvement wins.  With best=True every signed direction is
    line-searched and the deepest landing value wins (ties keep scan
    order).
    """
    if not inst.feasible(z):
        raise InfeasibleStartError("find_improving: start point infeasible")
    f = inst.objective.value
    base = f(z)
    champion = None
    champion_val = base
    for d in t_set.sorted_directions():
        for t in (d, tuple(-x for x in d)):
            lam = line_search(inst, z, t, cap=cap)
            if lam is None:
                continue
            if not best:
                return t, lam
            val = f(tuple(a - lam * b for a, b in zip(z, t)))
            if val < champion_val:
                champion, champion_val = (t, lam), val
    return champion


def check_compatible(inst: CipInstance, t_set: TestSet) -> None:
    """Refuse a test set whose provenance does not cover the instance."""
    if t_set.dimension != inst.n:
        raise ValueError("test set dimension %d != instance dimension %d"
                         % (t_set.dimension, inst.n))
    if t_set.provenance is None:
        return
    a, c = t_set.provenance
    if a != inst.a:
        raise ValueError("test set was computed for a different constraint matrix")
    rows = set(c.entries)
    for term in inst.objective.terms:
        if any(term.coeffs) and term.coeffs not in rows:
            raise ValueError("test set does not cover objective row %r" % (term.coeffs,))


def solve(inst: CipInstance, t_set: TestSet, z0: Vec,
          best: bool = False, cap: int = 10 ** 6) -> SolveReport:
    """Monotone augmentation from z0 until no direction improves."""
    check_compatible(inst, t_set)
    if not inst.feasible(z0):
        raise InfeasibleStartError("solve: start point infeasible")
    z = tuple(z0)
    f = inst.objective.value
    value = f(z)
    steps: list[Step] = []
    for _ in range(cap):
        try:
            found = find_improving(inst, t_set, z, best=best, cap=cap)
        except RuntimeError:
            return SolveReport(SolveStatus.UNBOUNDED_SUSPECTED, z, value, tuple(steps))
        if found is None:
            return SolveReport(SolveStatus.OPTIMAL, z, value, tuple(steps))
        t, lam = found
        z = tuple(a - lam * b for a, b in zip(z, t))
        new_value = f(z)
        assert new_value < value
        value = new_value
        steps.append(Step(t, lam, value))
    return SolveReport(SolveStatus.UNBOUNDED_SUSPECTED, z, value, tuple(steps))


def brute_force_optimum(inst: CipInstance, box: Vec) -> tuple[Vec, Fraction]:
    """Exhaustive minimum over 0 <= z <= min(box, upper), Az = b.

    Depth-first with per-row residual pruning; ties resolve to the
    lexicographically first minimizer.  Raises when nothing in the box
    is feasible.
    """
    n = inst.n
    if len(box) != n:
        raise ValueError("brute_force_optimum: box has wrong dimension")
    lim = list(box)
    if inst.upper is not None:
        lim = [min(a, b) for a, b in zip(lim, inst.upper)]
    if any(x < 0 for x in lim):
        raise ValueError("brute_force_optimum: empty box")
    rows = inst.a.entries
    d = inst.a.rows
    # per row: max and min attainable contribution of coordinates j..
    hi = [[0] * (n + 1) for _ in range(d)]
    lo = [[0] * (n + 1) for _ in range(d)]
    for i in range(d):
        for j in range(n - 1, -1, -1):
            c = rows[i][j]
            hi[i][j] = hi[i][j + 1] + (c * lim[j] if c > 0 else 0)
            lo[i][j] = lo[i][j + 1] + (c * lim[j] if c < 0 else 0)
    best: tuple[Vec, Fraction] | None = None
    point = [0] * n
    partial = [0] * d

    def descend(j: int) -> None:
        nonlocal best
        if j == n:
            val = inst.objective.value(point)
            if best is None or val < best[1]:
                best = (tuple(point), val)
            return
        for x in range(lim[j] + 1):
            ok = True
            for i in range(d):
                c = partial[i] + rows[i][j] * x
                need = inst.b[i]
                if c + lo[i][j + 1] > need or c + hi[i][j + 1] < need:
                    ok = False
                    break
            if ok:
                point[j] = x
                for i in range(d):
                    partial[i] += rows[i][j] * x
                descend(j + 1)
                for i in range(d):
                    partial[i] -= rows[i][j] * x
        point[j] = 0

    descend(0)
    if best is None:
        raise ValueError("brute_force_optimum: no feasible point in box")
    return best


def find_feasible_point(inst: CipInstance, box: Vec) -> Vec | None:
    """First feasible point in the box by the same pruned enumeration."""
    try:
        probe = CipInstance(inst.a, inst.b, inst.upper,
                            SeparableObjective(inst.n, (), (Fraction(0),) * inst.n))
        z, _ = brute_force_optimum(probe, box)
        return z
    except ValueError:
        return None


def binary_split_minimum(g: DiscreteConvexFn, p: int, k: int) -> Fraction:
    """Minimum of the 0/1 split of one piece at displacement p.

    2k binary variables: x_j steps up with cost g(j) - g(j-1), y_j
    steps down with cost g(-j) - g(-j+1); sum x - sum y must equal p.
    Exhaustive, meant as an oracle for small k.  The optimal value
    equals g(p) - g(0) whenever k >= |p|.
    """
    if k < abs(p):
        raise ValueError("binary_split_minimum: k must be at least |p|")
    best: Fraction | None = None
    for bits in product((0, 1), repeat=2 * k):
        x, y = bits[:k], bits[k:]
        if sum(x) - sum(y) != p:
            continue
        cost = Fraction(0)
        for j in range(1, k + 1):
            if x[j - 1]:
                cost += g.value(j) - g.value(j - 1)
            if y[j - 1]:
                cost += g.value(-j) - g.value(-j + 1)
        if best is None or cost < best:
            best = cost
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# bounded instances, exactly: move the bounds into the constraints

def slack_lifted(inst: CipInstance) -> CipInstance:
    """Append z + s = upper rows; the result has no explicit bounds.

    Directions computed for the lifted system respect the original
    bounds through the slack block, so augmentation on the lifted
    instance is exact for the bounded one.
    """
    if inst.upper is None:
        raise ValueError("slack_lifted: instance has no upper bounds")
    n = inst.n
    top = hstack(inst.a, IntMatrix.zero(inst.a.rows, n))
    bottom = hstack(IntMatrix.identity(n), IntMatrix.identity(n))
    a2 = vstack(top, bottom)
    b2 = inst.b + tuple(inst.upper)
    return CipInstance(a2, b2, None, inst.objective.extended(2 * n))


def embed_slack(inst: CipInstance, z: Vec) -> Vec:
    if inst.upper is None:
        raise ValueError("embed_slack: instance has no upper bounds")
    return tuple(z) + tuple(u - x for u, x in zip(inst.upper, z))


def instance_test_set(inst: CipInstance, slack: bool = False,
                      symmetry=None) -> TestSet:
    """Sufficient direction set for the instance's objective family.

    Composition rows come from the objective's terms (deduplicated,
    zero rows dropped).  With slack=True the set covers the
    slack-lifted system and is exact under upper bounds.  symmetry
    passes coordinate permutations down to the basis computation.
    """
    rows = []
    seen = set()
    for t in inst.objective.terms:
        if any(t.coeffs) and t.coeffs not in seen:
            seen.add(t.coeffs)
            rows.append(t.coeffs)
    c = IntMatrix(len(rows), inst.n, tuple(rows))
    base = compute_test_set(inst.a, c, symmetry=symmetry)
    if not slack:
        return base
    # Every kernel vector of the slack-lifted system mirrors its z block
    # into the slack block, and a mirrored coordinate repeats the
    # original's sign and magnitude constraints under the conformal
    # order, so the two lifts have the same minimal elements.  Compute
    # on the plain lift and mirror, instead of dragging n extra columns
    # through the completion.
    lifted = slack_lifted(inst)
    pad = IntMatrix(c.rows, lifted.n,
                    tuple(r + (0,) * inst.n for r in c.entries))
    dirs = frozenset(t + negate(t) for t in base.directions)
    return TestSet(lifted.n, dirs, lift_rows=c.rows, provenance=(lifted.a, pad))


def solve_bounded(inst: CipInstance, z0: Vec, best: bool = False,
                  cap: int = 10 ** 6,
                  t_set: TestSet | None = None,
                  symmetry=None) -> tuple[SolveReport, CipInstance]:
    """Slack-lift, solve, and report in the lifted coordinates."""
    lifted = slack_lifted(inst)
    if t_set is None:
        t_set = instance_test_set(inst, slack=True, symmetry=symmetry)
    report = solve(lifted, t_set, embed_slack(inst, z0), best=best, cap=cap)
    return report, lifted


# ---------------------------------------------------------------------------
# instance file format: sections A / b / upper (optional) / objective

def format_instance(inst: CipInstance) -> str:
    parts = ["A", "%d %d" % (inst.a.rows, inst.a.cols)]
    parts.extend(" ".join(str(x) for x in r) for r in inst.a.entries)
    parts.append("b")
    if inst.b:
        parts.append(" ".join(str(x) for x in inst.b))
    if inst.upper is not None:
        parts.append("upper")
        parts.append(" ".join(str(x) for x in inst.upper))
    parts.append("objective")
    parts.append(format_objective(inst.objective).rstrip("\n"))
    return "\n".join(parts) + "\n"


def parse_instance(text: str) -> CipInstance:
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    def take_section(name: str, optional: bool = False) -> bool:
        if lines and lines[0].strip() == name:
            lines.pop(0)
            return True
        if optional:
            return False
        raise ParseError("instance file: expected section %r" % name)

    take_section("A")
    if not lines:
        raise ParseError("instance file: missing matrix header")
    try:
        rows, _cols = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError("instance file: bad matrix header %r" % lines[0]) from None
    a = parse_int_matrix("\n".join(lines[:rows + 1]))
    del lines[:rows + 1]
    take_section("b")
    # Zero constraint rows mean an empty b; no value line follows the header.
    if a.rows == 0:
        b: Vec = ()
    else:
        if not lines:
            raise ParseError("instance file: missing right-hand side")
        b = parse_int_vector(lines.pop(0))
    upper = None
    if take_section("upper", optional=True):
        if not lines:
            raise ParseError("instance file: missing bound vector")
        upper = parse_int_vector(lines.pop(0))
    take_section("objective")
    obj = parse_objective("\n".join(lines))
    return CipInstance(a, b, upper, obj)
