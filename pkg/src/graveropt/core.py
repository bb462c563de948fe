"""Exact integer linear algebra primitives.

All arithmetic uses Python's arbitrary-precision integers (and
``fractions.Fraction`` where a division is unavoidable), so nothing
here can overflow or round.  Vectors are plain tuples of ints; matrices
are immutable row-major grids that remember their shape explicitly,
because a 0xN matrix is meaningful (its kernel is all of Z^N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[int, ...]


class ParseError(ValueError):
    """Raised when a text input does not match the expected format."""


def conformal_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Componentwise sign-compatible dominance: u_j*v_j >= 0 and |u_j| <= |v_j|."""
    if len(u) != len(v):
        raise ValueError("conformal_leq: dimension mismatch (%d vs %d)" % (len(u), len(v)))
    for a, b in zip(u, v):
        if a * b < 0 or abs(a) > abs(b):
            return False
    return True


def canonical_rep(v: Sequence[int]) -> Vec:
    """Of v and -v, the one whose first nonzero entry is positive.

    The zero vector has no canonical representative.
    """
    for a in v:
        if a > 0:
            return tuple(v)
        if a < 0:
            return tuple(-x for x in v)
    raise ValueError("canonical_rep: zero vector has no representative")


def negate(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError("dot: dimension mismatch")
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with an explicit shape.

    rows may be 0; cols must be at least 1.
    """

    rows: int
    cols: int
    entries: tuple[Vec, ...]

    def __post_init__(self) -> None:
        if self.cols < 1:
            raise ValueError("IntMatrix: need at least one column")
        if self.rows < 0 or len(self.entries) != self.rows:
            raise ValueError("IntMatrix: row count does not match entries")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("IntMatrix: ragged row")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        ent = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not ent:
                raise ValueError("IntMatrix.from_rows: empty matrix needs explicit cols")
            cols = len(ent[0])
        return cls(len(ent), cols, ent)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.entries)

    def mat_vec(self, v: Sequence[int]) -> Vec:
        if len(v) != self.cols:
            raise ValueError("mat_vec: dimension mismatch")
        return tuple(dot(r, v) for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.column(j) for j in range(self.cols)))

    def format_tag(self) -> str:
        """Compact identifying string, used as provenance for derived objects."""
        body = ";".join(" ".join(str(x) for x in r) for r in self.entries)
        return "%dx%d:%s" % (self.rows, self.cols, body)


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.rows != b.rows:
        raise ValueError("hstack: row counts differ")
    return IntMatrix(a.rows, a.cols + b.cols,
                     tuple(ra + rb for ra, rb in zip(a.entries, b.entries)))


def vstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.cols:
        raise ValueError("vstack: column counts differ")
    return IntMatrix(a.rows + b.rows, a.cols, a.entries + b.entries)


def kernel_lattice_basis(a: IntMatrix) -> list[Vec]:
    """Basis of the saturated lattice {v in Z^n : Av = 0}.

    Integer column reduction: gcd steps bring A to column echelon form
    while the same unimodular operations accumulate in a square matrix
    U; the U-columns below the zero columns of the echelon form are the
    kernel basis.  Exact throughout.
    """
    n = a.cols
    # column-major working copies
    m = [list(a.column(j)) for j in range(n)]
    u = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    r = 0
    for i in range(a.rows):
        while True:
            live = [j for j in range(r, n) if m[j][i] != 0]
            if len(live) <= 1:
                break
            j1 = min(live, key=lambda j: abs(m[j][i]))
            for j2 in live:
                if j2 == j1:
                    continue
                q = m[j2][i] // m[j1][i]
                if q:
                    m[j2] = [x - q * y for x, y in zip(m[j2], m[j1])]
                    u[j2] = [x - q * y for x, y in zip(u[j2], u[j1])]
        live = [j for j in range(r, n) if m[j][i] != 0]
        if live:
            j = live[0]
            m[r], m[j] = m[j], m[r]
            u[r], u[j] = u[j], u[r]
            r += 1
    return [tuple(u[j]) for j in range(r, n)]


def exact_rank(a: IntMatrix) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    work = [[Fraction(x) for x in row] for row in a.entries]
    rank = 0
    for j in range(a.cols):
        piv = next((i for i in range(rank, a.rows) if work[i][j]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        for i in range(a.rows):
            if i != rank and work[i][j]:
                f = work[i][j] / prow[j]
                work[i] = [x - f * y for x, y in zip(work[i], prow)]
        rank += 1
        if rank == a.rows:
            break
    return rank


# ---------------------------------------------------------------------------
# text format: first line "rows cols", then row-major integer entries

def format_int_matrix(a: IntMatrix) -> str:
    lines = ["%d %d" % (a.rows, a.cols)]
    lines.extend(" ".join(str(x) for x in r) for r in a.entries)
    return "\n".join(lines) + "\n"


def parse_int_matrix(text: str) -> IntMatrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("matrix header: expected 'rows cols'")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError("matrix header: expected two integers, got %r %r"
                         % (tokens[0], tokens[1])) from None
    if rows < 0 or cols < 1:
        raise ParseError("matrix header: invalid shape %d x %d" % (rows, cols))
    body = tokens[2:]
    if len(body) != rows * cols:
        raise ParseError("matrix body: expected %d entries, got %d"
                         % (rows * cols, len(body)))
    try:
        vals = [int(t) for t in body]
    except ValueError as e:
        raise ParseError("matrix body: non-integer entry (%s)" % e) from None
    ent = tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows))
    return IntMatrix(rows, cols, ent)


def format_int_vector(v: Sequence[int]) -> str:
    return " ".join(str(x) for x in v) + "\n"


def parse_int_vector(text: str) -> Vec:
    try:
        return tuple(int(t) for t in text.split())
    except ValueError as e:
        raise ParseError("vector: non-integer entry (%s)" % e) from None
