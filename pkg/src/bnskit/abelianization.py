"""Exact Smith normal form over the integers and first Betti numbers.

The transforms are tracked so the triple identity U * M * V = D can be
checked exactly; the diagonal carries the divisibility chain, from which
torsion invariants and the free rank of the abelianization fall out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import GroupPresentation, exponent_matrix

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_product(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in range(rows)]
    cols_b = len(b[0])
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols_b)]
        for i in range(len(a))
    ]


@dataclass(frozen=True)
class AbelianizationData:
    """Smith triple U*M*V = D plus the derived abelian invariants."""

    betti_number: int
    torsion_invariants: tuple[int, ...]
    left_transform: tuple[tuple[int, ...], ...]
    diagonal_matrix: tuple[tuple[int, ...], ...]
    right_transform: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for i in range(min(len(self.diagonal_matrix),
                                        len(self.diagonal_matrix[0]) if self.diagonal_matrix else 0))
                   if self.diagonal_matrix[i][i] != 0)

    def diagonal_entries(self) -> list[int]:
        if not self.diagonal_matrix:
            return []
        n = min(len(self.diagonal_matrix), len(self.diagonal_matrix[0]))
        return [self.diagonal_matrix[i][i] for i in range(n)]


def _swap_rows(m: Matrix, i: int, j: int):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: Matrix, i: int, j: int):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: Matrix, src: int, dst: int, factor: int):
    m[dst] = [d + factor * s for d, s in zip(m[dst], m[src])]


def _add_col(m: Matrix, src: int, dst: int, factor: int):
    for row in m:
        row[dst] += factor * row[src]


def _negate_row(m: Matrix, i: int):
    m[i] = [-x for x in m[i]]


def smith_normal_form(matrix: Matrix) -> AbelianizationData:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Deterministic for a fixed input: pivots are chosen as the smallest
    absolute value in the remaining block, ties broken by position.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if matrix else 0
    a = [list(row) for row in matrix]
    for row in a:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def pick_pivot(s: int) -> tuple[int, int] | None:
        best = None
        best_val = None
        for i in range(s, rows):
            for j in range(s, cols):
                x = abs(a[i][j])
                if x != 0 and (best_val is None or x < best_val):
                    best, best_val = (i, j), x
        return best

    s = 0
    while s < min(rows, cols):
        pos = pick_pivot(s)
        if pos is None:
            break
        i, j = pos
        if i != s:
            _swap_rows(a, s, i)
            _swap_rows(u, s, i)
        if j != s:
            _swap_cols(a, s, j)
            _swap_cols(v, s, j)
        while True:
            # clear column s; a nonzero remainder is strictly smaller than
            # the pivot, so promoting it and restarting terminates
            restart = False
            for i in range(s + 1, rows):
                if a[i][s] == 0:
                    continue
                q = a[i][s] // a[s][s]
                _add_row(a, s, i, -q)
                _add_row(u, s, i, -q)
                if a[i][s] != 0:
                    _swap_rows(a, s, i)
                    _swap_rows(u, s, i)
                    restart = True
                    break
            if restart:
                continue
            # clear row s
            for j in range(s + 1, cols):
                if a[s][j] == 0:
                    continue
                q = a[s][j] // a[s][s]
                _add_col(a, s, j, -q)
                _add_col(v, s, j, -q)
                if a[s][j] != 0:
                    _swap_cols(a, s, j)
                    _swap_cols(v, s, j)
                    restart = True
                    break
            if restart:
                continue
            # pivot must divide the remaining block for the chain to hold
            witness = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if a[i][j] % a[s][s] != 0:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            _add_row(a, witness, s, 1)
            _add_row(u, witness, s, 1)
        if a[s][s] < 0:
            _negate_row(a, s)
            _negate_row(u, s)
        s += 1

    diag = [a[i][i] for i in range(min(rows, cols))]
    torsion = tuple(d for d in diag if d >= 2)
    betti = cols - sum(1 for d in diag if d != 0)
    return AbelianizationData(
        betti_number=betti,
        torsion_invariants=torsion,
        left_transform=tuple(tuple(r) for r in u),
        diagonal_matrix=tuple(tuple(r) for r in a),
        right_transform=tuple(tuple(r) for r in v),
    )


def abelianization(presentation: GroupPresentation) -> AbelianizationData:
    return smith_normal_form(exponent_matrix(presentation))


def betti_number(presentation: GroupPresentation) -> int:
    """Free rank of the abelianization: generator count minus relator rank."""
    return abelianization(presentation).betti_number
