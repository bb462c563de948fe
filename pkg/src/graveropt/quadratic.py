"""Exact reformulation of rational quadratics as sums of squares.

Symmetric congruence Q = U^T D U over the rationals turns a positive
semidefinite Q into sum_i alpha_i (c_i^T z)^2 with primitive integer
rows c_i and positive rational alpha_i.  On 0/1 variables z_i^2 = z_i
additionally lets an indefinite Q trade diagonal mass against the
linear part, so any symmetric Q gets an exact separable form there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .core import ParseError, Vec, canonical_rep

RatMatrix = tuple[tuple[Fraction, ...], ...]


def rat_matrix(rows: Sequence[Sequence]) -> RatMatrix:
    out = tuple(tuple(Fraction(x) for x in r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("rat_matrix: ragged rows")
    return out


def rat_identity(n: int) -> RatMatrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                 for i in range(n))


def is_symmetric(q: RatMatrix) -> bool:
    n = len(q)
    return all(len(r) == n for r in q) and \
        all(q[i][j] == q[j][i] for i in range(n) for j in range(i))


def _require_symmetric(q: RatMatrix) -> int:
    if not is_symmetric(q):
        raise ValueError("expected a square symmetric matrix")
    return len(q)


def rat_mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("rat_mat_mul: dimension mismatch")
    return tuple(tuple(sum((x * b[k][j] for k, x in enumerate(row)), Fraction(0))
                       for j in range(len(b[0]))) for row in a)


def rat_transpose(a: RatMatrix) -> RatMatrix:
    if not a:
        return a
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def rat_inverse(a: RatMatrix) -> RatMatrix:
    n = len(a)
    work = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, r in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col]), None)
        if piv is None:
            raise ValueError("rat_inverse: singular matrix")
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return tuple(tuple(r[n:]) for r in work)


@dataclass(frozen=True)
class DiagonalizationResult:
    """Separable form of a PSD quadratic: Q = sum alpha_i c_i c_i^T."""

    terms: tuple[tuple[Fraction, Vec], ...]
    linear_correction: tuple[Fraction, ...]
    u: RatMatrix
    d: tuple[Fraction, ...]


def congruence_diagonalize(q: RatMatrix, pivot: str = "first") -> tuple[RatMatrix, tuple[Fraction, ...]]:
    """U, D with Q = U^T diag(D) U, U invertible, all exact.

    Symmetric Gaussian congruence.  A zero diagonal pivot is repaired
    by swapping in a later row/column with nonzero diagonal (pivot
    strategy "first" or "max" chooses which) or, failing that, by a
    congruence row/column addition that manufactures one.
    """
    n = _require_symmetric(q)
    if pivot not in ("first", "max"):
        raise ValueError("congruence_diagonalize: unknown pivot strategy %r" % pivot)
    m = [list(r) for r in q]
    e = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def swap(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]
        e[i], e[j] = e[j], e[i]

    def add_row(i: int, j: int) -> None:
        # congruence: row i += row j, then col i += col j
        m[i] = [x + y for x, y in zip(m[i], m[j])]
        for row in m:
            row[i] = row[i] + row[j]
        e[i] = [x + y for x, y in zip(e[i], e[j])]

    for k in range(n):
        if pivot == "max":
            cands = [j for j in range(k, n) if m[j][j]]
            if cands:
                j = max(cands, key=lambda i: (abs(m[i][i]), -i))
                if j != k:
                    swap(k, j)
        if m[k][k] == 0:
            j = next((i for i in range(k + 1, n) if m[i][i]), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((i for i in range(k + 1, n) if m[k][i]), None)
                if j is None:
                    continue  # row and column k vanish from k on: D_k = 0
                add_row(k, j)
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / m[k][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
                for row in m:
                    row[i] = row[i] - f * row[k]
                e[i] = [x - f * y for x, y in zip(e[i], e[k])]
    d = tuple(m[i][i] for i in range(n))
    u = rat_transpose(rat_inverse(rat_matrix(e)))
    return u, d


def inertia(q: RatMatrix, pivot: str = "first") -> tuple[int, int, int]:
    """(positive, zero, negative) counts of the congruence diagonal."""
    _, d = congruence_diagonalize(q, pivot=pivot)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x == 0),
            sum(1 for x in d if x < 0))


def is_psd(q: RatMatrix) -> bool:
    _, d = congruence_diagonalize(q)
    return all(x >= 0 for x in d)


def is_positive_definite(q: RatMatrix) -> bool:
    _, d = congruence_diagonalize(q)
    return all(x > 0 for x in d)


def _integerize(row: Sequence[Fraction]) -> tuple[Vec, Fraction]:
    """Primitive integer vector c and kappa > 0 with row = kappa * c."""
    denom = 1
    for x in row:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    c = canonical_rep(ints)
    flip = -1 if c != tuple(ints) else 1
    return c, Fraction(flip * g, denom)


def to_separable(q: RatMatrix) -> DiagonalizationResult:
    """Exact sum-of-squares form of a PSD matrix, at most rank(Q) terms."""
    n = _require_symmetric(q)
    u, d = congruence_diagonalize(q)
    if any(x < 0 for x in d):
        raise ValueError("to_separable: matrix is not positive semidefinite")
    terms = []
    for i in range(n):
        if d[i] == 0:
            continue
        c, kappa = _integerize(u[i])
        terms.append((d[i] * kappa * kappa, c))
    return DiagonalizationResult(tuple(terms), (Fraction(0),) * n, u, d)


def reconstruct(terms: Sequence[tuple[Fraction, Sequence[int]]], n: int) -> RatMatrix:
    """sum alpha_i c_i c_i^T, for verification."""
    acc = [[Fraction(0)] * n for _ in range(n)]
    for alpha, c in terms:
        for i in range(n):
            if c[i]:
                for j in range(n):
                    if c[j]:
                        acc[i][j] += alpha * c[i] * c[j]
    return rat_matrix(acc)


def gershgorin_shift(q: RatMatrix) -> Fraction:
    """Largest row deficit: how far a diagonal sits below its off-row mass."""
    n = _require_symmetric(q)
    worst = Fraction(0)
    for i in range(n):
        off = sum((abs(q[i][j]) for j in range(n) if j != i), Fraction(0))
        worst = max(worst, off - q[i][i])
    return worst


def choose_lambda_bar(q: RatMatrix) -> Fraction:
    """Smallest shift from {0, g, 2g, 4g, ...} making Q + shift*I
    positive definite, g being the Gershgorin deficit (or 1)."""
    n = _require_symmetric(q)
    g = gershgorin_shift(q)
    if g <= 0:
        g = Fraction(1)
    cand = Fraction(0)
    while True:
        shifted = tuple(tuple(q[i][j] + (cand if i == j else 0) for j in range(n))
                        for i in range(n))
        if is_positive_definite(shifted):
            return cand
        cand = g if cand == 0 else 2 * cand


def _diag_absorbed(q: RatMatrix, delta: Sequence[Fraction]) -> RatMatrix:
    n = len(q)
    return tuple(tuple(q[i][j] + (delta[i] if i == j else 0) for j in range(n))
                 for i in range(n))


def binary_rephrase(q: RatMatrix, c: Sequence | None = None,
                    strategy: str = "auto") -> tuple[tuple[tuple[Fraction, Vec], ...],
                                                     tuple[Fraction, ...]]:
    """Terms and adjusted linear part with
    z^T Q z + c^T z = sum alpha_i (c_i^T z)^2 + cbar^T z on {0,1}^n.

    auto: PSD matrices convert directly; a matrix whose negative
    entries are confined to the diagonal gets its diagonal raised to
    row dominance (the raise moves to the linear part via z_i^2 = z_i);
    anything else is shifted by choose_lambda_bar.  Both keep the term
    count at most n.

    pairwise: requires nonnegative off-diagonal entries; every positive
    entry Q_ij (i<j) becomes the term Q_ij (z_i + z_j)^2 and the whole
    diagonal is absorbed linearly.  More terms, but the composition
    rows stay 0/1, which keeps downstream direction sets small.
    """
    n = _require_symmetric(q)
    cvec = tuple(Fraction(x) for x in (c if c is not None else [0] * n))
    if len(cvec) != n:
        raise ValueError("binary_rephrase: linear part has wrong length")
    offdiag_ok = all(q[i][j] >= 0 for i in range(n) for j in range(n) if i != j)
    if strategy == "pairwise":
        if not offdiag_ok:
            raise ValueError("binary_rephrase: pairwise needs nonnegative off-diagonal")
        terms = []
        for i in range(n):
            for j in range(i + 1, n):
                if q[i][j] > 0:
                    e = tuple(1 if t in (i, j) else 0 for t in range(n))
                    terms.append((q[i][j], e))
        cbar = tuple(cvec[i] + q[i][i] - sum((q[i][j] for j in range(n) if j != i),
                                             Fraction(0))
                     for i in range(n))
        return tuple(terms), cbar
    if strategy != "auto":
        raise ValueError("binary_rephrase: unknown strategy %r" % strategy)
    if is_psd(q):
        return to_separable(q).terms, cvec
    if offdiag_ok:
        delta = []
        for i in range(n):
            off = sum((q[i][j] for j in range(n) if j != i), Fraction(0))
            delta.append(max(Fraction(0), off - q[i][i]))
        res = to_separable(_diag_absorbed(q, delta))
        return res.terms, tuple(x - dlt for x, dlt in zip(cvec, delta))
    lam = choose_lambda_bar(q)
    res = to_separable(_diag_absorbed(q, [lam] * n))
    return res.terms, tuple(x - lam for x in cvec)


def binary_identity_holds(q: RatMatrix, c: Sequence,
                          terms: Sequence[tuple[Fraction, Sequence[int]]],
                          cbar: Sequence) -> bool:
    """Algebraic check of the {0,1}^n identity, valid for every n.

    The two sides agree on all binary points iff their off-diagonal
    quadratic parts match and the diagonals, folded into the linear
    parts, match too.
    """
    n = len(q)
    s = reconstruct(terms, n)
    for i in range(n):
        for j in range(n):
            if i != j and s[i][j] != q[i][j]:
                return False
    cvec = tuple(Fraction(x) for x in c)
    cb = tuple(Fraction(x) for x in cbar)
    for i in range(n):
        if cvec[i] + q[i][i] != cb[i] + s[i][i]:
            return False
    return True


# ---------------------------------------------------------------------------
# text format: like the integer matrix format, entries may be p/q

def format_rat_matrix(q: RatMatrix) -> str:
    rows = len(q)
    cols = len(q[0]) if rows else 0
    lines = ["%d %d" % (rows, cols)]
    lines.extend(" ".join(str(x) for x in r) for r in q)
    return "\n".join(lines) + "\n"


def parse_rat_matrix(text: str) -> RatMatrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("matrix header: expected 'rows cols'")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError("matrix header: expected two integers") from None
    body = tokens[2:]
    if len(body) != rows * cols:
        raise ParseError("matrix body: expected %d entries, got %d"
                         % (rows * cols, len(body)))
    try:
        vals = [Fraction(t) for t in body]
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("matrix body: bad rational entry (%s)" % e) from None
    return tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows))


def parse_rat_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(t) for t in text.split())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("vector: bad rational entry (%s)" % e) from None
