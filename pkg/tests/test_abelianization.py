import random

from helpers import fraction_determinant, fraction_rank

from bnskit.abelianization import (
    abelianization,
    betti_number,
    matrix_product,
    smith_normal_form,
)
from bnskit.presentation import presentation_from_texts


def check_triple(matrix):
    """Exact Smith-triple checks: identity, chain, unimodularity."""
    data = smith_normal_form(matrix)
    u = [list(r) for r in data.left_transform]
    v = [list(r) for r in data.right_transform]
    d = [list(r) for r in data.diagonal_matrix]
    assert matrix_product(matrix_product(u, [list(r) for r in matrix]), v) == d
    diag = data.diagonal_entries()
    for i in range(len(diag) - 1):
        if diag[i + 1] != 0:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        # zeros only at the tail
        if diag[i] == 0:
            assert diag[i + 1] == 0
    assert all(x >= 0 for x in diag)
    # off-diagonal entries vanish
    for i, row in enumerate(d):
        for j, entry in enumerate(row):
            if i != j:
                assert entry == 0
    assert abs(fraction_determinant(u)) == 1
    assert abs(fraction_determinant(v)) == 1
    return data


def test_identity_matrix():
    data = check_triple([[1, 0], [0, 1]])
    assert data.diagonal_entries() == [1, 1]
    assert data.betti_number == 0
    assert data.torsion_invariants == ()


def test_zero_row():
    data = check_triple([[0, 0]])
    assert data.rank == 0
    assert data.betti_number == 2


def test_empty_matrix():
    data = smith_normal_form([])
    assert data.diagonal_entries() == []
    assert data.betti_number == 0


def test_torsion_detected():
    presentation = presentation_from_texts(["a"], ["a^2"])
    data = abelianization(presentation)
    assert data.betti_number == 0
    assert data.torsion_invariants == (2,)


def test_divisibility_chain_nontrivial():
    data = check_triple([[2, 0], [0, 3]])
    assert data.diagonal_entries() == [1, 6]
    assert data.torsion_invariants == (6,)


def test_random_matrices_agree_with_rational_rank_oracle():
    rng = random.Random(2024)
    for _ in range(60):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        matrix = [[rng.randint(-3, 3) for _ in range(cols)]
                  for _ in range(rows)]
        data = check_triple(matrix)
        assert data.rank == fraction_rank(matrix)


def test_determinism():
    matrix = [[2, -3, 1], [0, 4, -2], [5, 1, 1]]
    assert smith_normal_form(matrix) == smith_normal_form(matrix)


def test_betti_examples(bs12, z2, f2):
    assert betti_number(z2) == 2
    assert betti_number(bs12) == 1
    assert betti_number(f2) == 2
