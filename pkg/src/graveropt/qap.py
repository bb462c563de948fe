"""Quadratic assignment instances as bounded convex integer programs.

An n-facility instance assigns cost d[i][j][k][l] to locating i at j
and k at l (Koopmans-Beckmann data F, D gives d = F_ik * D_jl), plus
per-placement fixed costs.  Encoding: n^2 binary variables x_ij, row
and column sum constraints, and the quadratic cost rewritten exactly
as a separable sum of squares on 0/1 points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .augment import CipInstance, SolveReport, instance_test_set, solve_bounded
from .core import IntMatrix, ParseError, Vec
from .objective import ScaledEvenPower, SeparableObjective, Term
from .quadratic import RatMatrix, binary_rephrase, rat_matrix
from .testset import TestSet

logger = logging.getLogger(__name__)

_ORACLE_LIMIT = 8  # 8! permutations is the most the oracle will enumerate


@dataclass(frozen=True)
class QapInstance:
    n: int
    flow: RatMatrix | None = None
    distance: RatMatrix | None = None
    tensor: tuple | None = None
    fixed: RatMatrix | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("QapInstance: need n >= 1")
        kb = self.flow is not None and self.distance is not None
        if kb == (self.tensor is not None):
            raise ValueError("QapInstance: give either flow+distance or a tensor")
        for name, m in (("flow", self.flow), ("distance", self.distance),
                        ("fixed", self.fixed)):
            if m is not None and (len(m) != self.n or
                                  any(len(r) != self.n for r in m)):
                raise ValueError("QapInstance: %s matrix must be %d x %d"
                                 % (name, self.n, self.n))

    def cost(self, i: int, j: int, k: int, l: int) -> Fraction:
        """Cost of locating facility i at j while facility k sits at l."""
        if self.tensor is not None:
            return Fraction(self.tensor[i][j][k][l])
        return Fraction(self.flow[i][k]) * Fraction(self.distance[j][l])

    def fixed_cost(self, i: int, j: int) -> Fraction:
        return Fraction(self.fixed[i][j]) if self.fixed is not None else Fraction(0)


def koopmans_beckmann(flow: Sequence[Sequence], distance: Sequence[Sequence],
                      fixed: Sequence[Sequence] | None = None) -> QapInstance:
    return QapInstance(len(flow), flow=rat_matrix(flow),
                       distance=rat_matrix(distance),
                       fixed=rat_matrix(fixed) if fixed is not None else None)


def assignment_matrix(n: int) -> tuple[IntMatrix, Vec]:
    """Row-sum and column-sum constraints over the flattened x_ij grid."""
    if n < 1:
        raise ValueError("assignment_matrix: need n >= 1")
    rows = []
    for i in range(n):
        r = [0] * (n * n)
        for j in range(n):
            r[i * n + j] = 1
        rows.append(tuple(r))
    for j in range(n):
        r = [0] * (n * n)
        for i in range(n):
            r[i * n + j] = 1
        rows.append(tuple(r))
    return IntMatrix(2 * n, n * n, tuple(rows)), (1,) * (2 * n)


def permutation_value(q: QapInstance, perm: Sequence[int]) -> Fraction:
    """Objective at the assignment j = perm[i] (0-based images)."""
    n = q.n
    if sorted(perm) != list(range(n)):
        raise ValueError("permutation_value: not a permutation of 0..n-1")
    total = Fraction(0)
    for i in range(n):
        total += q.fixed_cost(i, perm[i])
        for k in range(n):
            total += q.cost(i, perm[i], k, perm[k])
    return total


def permutation_oracle(q: QapInstance) -> tuple[tuple[int, ...], Fraction]:
    """Exhaustive minimum over all permutations; lexicographic tie-break."""
    if q.n > _ORACLE_LIMIT:
        raise ValueError("permutation_oracle: n=%d exceeds the enumeration limit %d"
                         % (q.n, _ORACLE_LIMIT))
    best: tuple[tuple[int, ...], Fraction] | None = None
    for perm in permutations(range(q.n)):
        val = permutation_value(q, perm)
        if best is None or val < best[1]:
            best = (perm, val)
    assert best is not None
    return best


def to_cip(q: QapInstance) -> CipInstance:
    """0/1 encoding with the quadratic cost made separable exactly.

    The symmetrized cost matrix of a nonnegative instance has only
    nonnegative off-diagonal entries, so the pairwise rephrasing
    applies and keeps every composition row a 0/1 vector; otherwise
    the general rephrasing takes over.
    """
    n = q.n
    nn = n * n
    sym = [[Fraction(0)] * nn for _ in range(nn)]
    for i in range(n):
        for j in range(n):
            vi = i * n + j
            for k in range(n):
                for l in range(n):
                    vj = k * n + l
                    sym[vi][vj] = (q.cost(i, j, k, l) + q.cost(k, l, i, j)) / 2
    qm = rat_matrix(sym)
    cvec = tuple(q.fixed_cost(i, j) for i in range(n) for j in range(n))
    offdiag_ok = all(qm[i][j] >= 0 for i in range(nn) for j in range(nn) if i != j)
    terms, cbar = binary_rephrase(qm, cvec,
                                  strategy="pairwise" if offdiag_ok else "auto")
    obj_terms = tuple(Term(ScaledEvenPower(alpha, 2), coeffs, 0)
                      for alpha, coeffs in terms)
    a, b = assignment_matrix(n)
    objective = SeparableObjective(nn, obj_terms, cbar)
    return CipInstance(a, b, (1,) * nn, objective)


def permutation_point(perm: Sequence[int]) -> Vec:
    n = len(perm)
    z = [0] * (n * n)
    for i, j in enumerate(perm):
        z[i * n + j] = 1
    return tuple(z)


def point_permutation(z: Sequence[int], n: int) -> tuple[int, ...]:
    perm = []
    for i in range(n):
        row = [j for j in range(n) if z[i * n + j] == 1]
        if len(row) != 1:
            raise ValueError("point_permutation: not an assignment")
        perm.append(row[0])
    if sorted(perm) != list(range(n)):
        raise ValueError("point_permutation: not an assignment")
    return tuple(perm)


def relabeling_symmetries(inst: CipInstance, n: int) -> list[tuple[int, ...]] | None:
    """Facility/location relabelings fixing the objective's row set.

    Every (sigma, tau) pair permutes the assignment constraints among
    themselves, so a pair qualifies as soon as it maps each quadratic
    term's coefficient row to another one.  Qualifying pairs form a
    group; the n!^2 sweep stays cheap at desk scale.  Returns None when
    only the identity survives (no speedup to be had).
    """
    if n > 5:
        return None
    rows = {t.coeffs for t in inst.objective.terms if any(t.coeffs)}
    found = []
    for sigma in permutations(range(n)):
        for tau in permutations(range(n)):
            p = tuple(sigma[i] * n + tau[k] for i in range(n) for k in range(n))
            if all(tuple(row[j] for j in p) in rows for row in rows):
                found.append(p)
    return found if len(found) > 1 else None


def applicable_directions(t_set: TestSet, upper: Vec) -> TestSet:
    """Drop directions no feasible step can ever use.

    With every variable confined to [0, u], a step between feasible
    points moves each coordinate by at most u, so directions exceeding
    the bounds componentwise can be removed without weakening the set.
    """
    kept = frozenset(
        d for d in t_set.directions
        if all(abs(x) <= u for x, u in zip(d, upper)))
    return TestSet(t_set.dimension, kept, lift_rows=t_set.lift_rows,
                   provenance=t_set.provenance)


def solve_qap(q: QapInstance, start: Sequence[int] | None = None,
              best: bool = False) -> tuple[tuple[int, ...], Fraction, SolveReport]:
    """Augment from a starting permutation to a globally optimal one.

    Bounds are enforced exactly through the slack lift, so the
    direction set certifies optimality at the walk's endpoint.  The
    direction set is computed once with the instance's relabeling
    symmetries and pruned to the steps the 0/1 box can actually take.
    """
    inst = to_cip(q)
    syms = relabeling_symmetries(inst, q.n)
    full = instance_test_set(inst, slack=True, symmetry=syms)
    t_set = applicable_directions(full, (1,) * (2 * q.n * q.n))
    logger.info("test set: %d directions, %d applicable in the 0/1 box",
                len(full), len(t_set))
    perm0 = tuple(start) if start is not None else tuple(range(q.n))
    report, _ = solve_bounded(inst, permutation_point(perm0), best=best,
                              t_set=t_set)
    z = report.optimum[:q.n * q.n]
    perm = point_permutation(z, q.n)
    return perm, report.value, report


# ---------------------------------------------------------------------------
# reader for the common exchange layout: n, then the two n x n blocks

def read_qaplib(text: str) -> QapInstance:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            tokens.append((tok, lineno))
    if not tokens:
        raise ParseError("qap file: empty input")

    def take_int(what: str) -> int:
        if not tokens:
            raise ParseError("qap file: truncated while reading %s" % what)
        tok, lineno = tokens.pop(0)
        try:
            return int(tok)
        except ValueError:
            raise ParseError("qap file: bad integer %r for %s on line %d"
                             % (tok, what, lineno)) from None

    n = take_int("size")
    if n < 1:
        raise ParseError("qap file: size must be positive")
    flow = [[take_int("flow[%d][%d]" % (i, j)) for j in range(n)]
            for i in range(n)]
    dist = [[take_int("distance[%d][%d]" % (i, j)) for j in range(n)]
            for i in range(n)]
    if tokens:
        tok, lineno = tokens[0]
        raise ParseError("qap file: unexpected trailing token %r on line %d"
                         % (tok, lineno))
    return koopmans_beckmann(flow, dist)


def write_qaplib(q: QapInstance) -> str:
    if q.flow is None or q.distance is None:
        raise ValueError("write_qaplib: instance is not in flow/distance form")
    def block(m: RatMatrix) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in m)
    return "%d\n\n%s\n\n%s\n" % (q.n, block(q.flow), block(q.distance))
