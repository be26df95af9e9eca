"""Independent oracles used to pin expected values.

These deliberately avoid the library's own code paths: rank and
determinants come from fraction-based Gaussian elimination, connectivity
from a plain flood fill, and the n-adic valuation oracle multiplies out
prime divisibility against hardcoded factorizations.
"""

from fractions import Fraction


def fraction_rank(matrix) -> int:
    """Row-echelon rank over the rationals."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    for col in range(cols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        factor = rows[rank][col]
        rows[rank] = [x / factor for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                scale = rows[i][col]
                rows[i] = [a - scale * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def fraction_determinant(matrix) -> Fraction:
    """Gaussian-elimination determinant over the rationals."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                scale = rows[i][col] * inv
                rows[i] = [a - scale * b for a, b in zip(rows[i], rows[col])]
    return det


def brute_component_count(ball, character, margin) -> int:
    """Flood-fill component count among inner retained vertices, written
    against the ball data only (no union-find, no library subgraph code)."""
    values = {v: character.evaluate(v) for v in ball.vertices}
    kept = [v for v in ball.vertices if values[v] >= 0]
    kept_set = set(kept)
    adjacency = {v: set() for v in kept}
    for source, _, target in ball.edges:
        if source in kept_set and target in kept_set:
            adjacency[source].add(target)
            adjacency[target].add(source)
    component_of = {}
    label = 0
    for v in kept:
        if v in component_of:
            continue
        label += 1
        stack = [v]
        component_of[v] = label
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if y not in component_of:
                    component_of[y] = label
                    stack.append(y)
    inner = [v for v in kept if ball.depths[v] <= ball.radius - margin]
    return len({component_of[v] for v in inner})


# Hardcoded factorizations: the oracle must not share the library's
# trial-division code.
PRIME_POWERS = {2: {2: 1}, 3: {3: 1}, 4: {2: 2}, 6: {2: 1, 3: 1}}


def brute_nadic(b: Fraction, n: int):
    """min over p | n of v_p(b)/v_p(n), with v_p computed by multiplying
    out divisibility on numerator and denominator separately."""
    b = Fraction(b)
    if b == 0:
        return None  # infinity
    best = None
    for p, mult in PRIME_POWERS[n].items():
        num, den = b.numerator, b.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        normalized = Fraction(v, mult)
        if best is None or normalized < best:
            best = normalized
    return best
