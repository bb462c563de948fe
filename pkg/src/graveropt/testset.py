"""Universal test sets for separable discrete-convex objectives.

A family of objectives sum f_i(c_i^T z + c_i0) + c^T z over {Az = b}
is covered by one direction set: lift A with one tracking variable per
composition row c_i, take the Graver basis of the lifted matrix, and
project back to the original variables.  The projected set contains
the Graver basis of A and is in general strictly larger.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (IntMatrix, ParseError, Vec, canonical_rep, hstack,
                   parse_int_matrix, vstack)
from .graver import close_permutation_group, compute_graver, project_first_n


@dataclass(frozen=True)
class TestSet:
    """Improving-direction candidates for one (A, C) family.

    provenance keeps the pair the set was computed from, so a solver
    can refuse to apply it to an unrelated instance.  Hand-assembled
    sets may leave it None.
    """

    __test__ = False  # not a pytest class, despite the name

    dimension: int
    directions: frozenset[Vec]
    lift_rows: int = 0
    provenance: tuple[IntMatrix, IntMatrix] | None = None

    def __len__(self) -> int:
        return len(self.directions)

    def sorted_directions(self) -> list[Vec]:
        return sorted(self.directions)


def build_lifted_matrix(a: IntMatrix, c: IntMatrix) -> IntMatrix:
    """[[A, 0], [C, I]]: one fresh tracking column per row of C."""
    if a.cols != c.cols:
        raise ValueError("build_lifted_matrix: A and C must have equal column counts")
    s = c.rows
    if s == 0:
        return a
    top = hstack(a, IntMatrix.zero(a.rows, s))
    bottom = hstack(c, IntMatrix.identity(s))
    return vstack(top, bottom)


def _lift_symmetry(perms, c: IntMatrix) -> list[tuple[int, ...]]:
    """Extend coordinate permutations across the tracking block.

    A permutation qualifies when gathering every composition row by it
    lands back in the row set; each tracking variable then follows the
    row it tracks.  Rows must be distinct for the matching to be
    unambiguous.
    """
    n = c.cols
    index = {row: i for i, row in enumerate(c.entries)}
    if len(index) != c.rows:
        raise ValueError("symmetry: composition rows must be distinct")
    out = []
    for p in perms:
        # gather(C[i], p) == C[target[i]]; the tracking column of slot r
        # must read from the row that gathers onto row r
        follow = [0] * c.rows
        for i, row in enumerate(c.entries):
            g = tuple(row[j] for j in p)
            target = index.get(g)
            if target is None:
                raise ValueError("symmetry: permutation does not preserve the rows")
            follow[target] = i
        out.append(tuple(p) + tuple(n + r for r in follow))
    return out


def compute_test_set(a: IntMatrix, c: IntMatrix, symmetry=None) -> TestSet:
    """Project the lifted Graver basis onto the first n coordinates.

    symmetry: optional coordinate permutations of the first n columns
    that fix ker(A) and permute the rows of C among themselves; the
    basis computation exploits them, the result does not change.
    """
    lifted = build_lifted_matrix(a, c)
    if symmetry is None:
        basis = compute_graver(lifted)
    else:
        perms = close_permutation_group(symmetry, a.cols)
        lifted_perms = _lift_symmetry(perms, c) if c.rows else perms
        basis = compute_graver(lifted, symmetry=lifted_perms)
    dirs = project_first_n(basis.elements, a.cols)
    return TestSet(a.cols, dirs, lift_rows=c.rows, provenance=(a, c))


def build_split_matrix(a: IntMatrix, c: IntMatrix, k: int) -> IntMatrix:
    """Widened lift: row i of C gets k columns of -1 then k of +1.

    Splitting each tracking variable into k unit up-steps and k unit
    down-steps keeps the projected direction set unchanged; the matrix
    is what a 0/1-variable reformulation of each term works on.
    """
    if a.cols != c.cols:
        raise ValueError("build_split_matrix: A and C must have equal column counts")
    if k < 1:
        raise ValueError("build_split_matrix: k must be positive")
    n, s = a.cols, c.rows
    width = n + 2 * k * s
    rows = []
    for row in a.entries:
        rows.append(row + (0,) * (2 * k * s))
    for i in range(s):
        pad = [0] * (2 * k * s)
        for t in range(k):
            pad[2 * k * i + t] = -1
            pad[2 * k * i + k + t] = 1
        rows.append(c.row(i) + tuple(pad))
    return IntMatrix(a.rows + s, width, tuple(rows))


def filter_directions(t: TestSet, z: Vec, upper: Vec | None = None) -> set[Vec]:
    """Signed directions whose unit step from z respects the bounds."""
    if len(z) != t.dimension:
        raise ValueError("filter_directions: point has wrong dimension")
    if upper is not None and len(upper) != t.dimension:
        raise ValueError("filter_directions: bound vector has wrong dimension")
    out: set[Vec] = set()
    for d in t.directions:
        for cand in (d, tuple(-x for x in d)):
            nxt = tuple(a - b for a, b in zip(z, cand))
            if all(x >= 0 for x in nxt) and (
                    upper is None or all(x <= u for x, u in zip(nxt, upper))):
                out.add(cand)
    return out


# ---------------------------------------------------------------------------
# file format: standard integer matrix prefixed by a header comment

def format_test_set(t: TestSet) -> str:
    rows = t.sorted_directions()
    lines = ["# hcip n=%d s=%d" % (t.dimension, t.lift_rows)]
    lines.append("%d %d" % (len(rows), t.dimension))
    lines.extend(" ".join(str(x) for x in r) for r in rows)
    return "\n".join(lines) + "\n"


def parse_test_set(text: str) -> TestSet:
    # comment lines (the writer's header included) carry no data
    body = [ln for ln in text.splitlines() if not ln.strip().startswith("#")]
    m = parse_int_matrix("\n".join(body))
    dirs = set()
    for row in m.entries:
        if not any(row):
            raise ParseError("test set: zero direction")
        dirs.add(canonical_rep(row))
    return TestSet(m.cols, frozenset(dirs))
