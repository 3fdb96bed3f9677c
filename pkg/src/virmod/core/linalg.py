"""Exact linear algebra over Q.

Vectors are sparse ``{index: Q}`` dicts over any hashable index set;
dense matrices are lists of lists of rationals.  Elimination is plain
Gauss-Jordan, which is fast enough at the sizes used here.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple
from .rational import Q

SparseVector = Mapping[Hashable, Q]


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`solve_square`; ``kernel`` is a nonzero null vector."""

    def __init__(self, kernel: List[Q]):
        super().__init__(f"singular matrix, kernel vector {[str(x) for x in kernel]}")
        self.kernel = kernel


class SparseEchelon:
    """Incrementally maintained reduced basis of a span of sparse vectors.

    ``add`` returns True when the vector enlarged the span.  ``reduce``
    returns the residual of a vector against the current span, which is empty
    exactly for members of the span.
    """

    def __init__(self) -> None:
        self.rows: Dict[Hashable, Dict[Hashable, Q]] = {}  # pivot -> row with pivot coeff 1

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: SparseVector) -> Dict[Hashable, Q]:
        v = {k: Q(c) for k, c in vector.items() if c}
        # rows are fully reduced, so one subtraction per pivot present in v suffices
        for key in [k for k in v if k in self.rows]:
            c = v.pop(key)
            for k, rc in self.rows[key].items():
                if k == key:
                    continue
                nv = v.get(k, 0) - c * rc
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vector: SparseVector) -> bool:
        v = self.reduce(vector)
        if not v:
            return False
        pivot = next(iter(v))
        inv = 1 / v[pivot]
        v = {k: c * inv for k, c in v.items()}
        # keep rows fully reduced so that reduce() needs a single pass per pivot
        for row in self.rows.values():
            c = row.get(pivot)
            if c:
                for k, vc in v.items():
                    nv = row.get(k, 0) - c * vc
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[pivot] = v
        return True

    def contains(self, vector: SparseVector) -> bool:
        return not self.reduce(vector)


def exact_rank(vectors: Iterable[SparseVector]) -> int:
    """Rank over Q of a family of sparse vectors sharing one index set."""
    echelon = SparseEchelon()
    for v in vectors:
        echelon.add(v)
    return len(echelon)


def row_reduce(matrix: Sequence[Sequence[Q]]) -> Tuple[List[List[Q]], List[int]]:
    """Reduced row echelon form of a dense matrix and its pivot columns."""
    m = [[Q(x) for x in row] for row in matrix]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def nullspace(matrix: Sequence[Sequence[Q]]) -> List[List[Q]]:
    """Basis of the right kernel ``{x : A x = 0}``."""
    if not matrix:
        return []
    rref, pivots = row_reduce(matrix)
    n_cols = len(matrix[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Q(0)] * n_cols
        x[f] = Q(1)
        for row, pc in zip(rref, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def solve_square(matrix: Sequence[Sequence[Q]], rhs: Sequence[Sequence[Q]]) -> List[List[Q]]:
    """Solve ``A x = b`` for every column vector ``b`` in ``rhs``.

    Raises :class:`SingularMatrixError` carrying a kernel witness when ``A``
    is singular.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    for b in rhs:
        if len(b) != n:
            raise ValueError("right-hand side has the wrong length")
    aug = [list(map(Q, matrix[i])) + [Q(b[i]) for b in rhs] for i in range(n)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError(nullspace(matrix)[0])
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [[aug[i][n + j] for i in range(n)] for j in range(len(rhs))]


def determinant(matrix: Sequence[Sequence[Q]]) -> Q:
    """Determinant by fraction Gaussian elimination."""
    m = [list(map(Q, row)) for row in matrix]
    n = len(m)
    det = Q(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return Q(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
