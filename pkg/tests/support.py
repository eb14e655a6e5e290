"""Shared test helpers: independent brute-force oracles and random data.

Everything here is deliberately independent of the package's elimination
code: determinants come from cofactor expansion, inertia from principal
minors (leading-minor sign chains over permutations, with the
characteristic-polynomial sign-variation method as the general fallback),
and connectivity from a fresh union-find.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from surfsat import Configuration, SymmetricMatrix


# -- determinants and principal minors (cofactor expansion) ------------


def det_cofactor(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    sign = 1
    for j in range(n):
        if rows[0][j] != 0:
            minor = [
                [rows[i][k] for k in range(n) if k != j] for i in range(1, n)
            ]
            total += sign * Fraction(rows[0][j]) * det_cofactor(minor)
        sign = -sign
    return total


def det_bareiss_int(rows) -> int:
    """Fraction-free integer determinant (independent of the package's
    symmetric elimination)."""
    m = [[int(x) for x in row] for row in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_gauss(rows) -> Fraction:
    """Plain row-elimination determinant over Q."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def _det_auto(rows):
    if all(Fraction(x).denominator == 1 for row in rows for x in row):
        return Fraction(det_bareiss_int(rows))
    return det_gauss(rows)


def principal_minor(matrix: SymmetricMatrix, subset):
    rows = [[matrix.entry(i, j) for j in subset] for i in subset]
    return det_cofactor(rows)


def principal_minor_fast(matrix: SymmetricMatrix, subset):
    rows = [[matrix.entry(i, j) for j in subset] for i in subset]
    return _det_auto(rows)


def oracle_inertia_minors_fast(matrix: SymmetricMatrix):
    """Same principal-minor/Descartes oracle as oracle_inertia_charpoly,
    with elimination-based determinants for speed on bigger panels."""
    n = matrix.n
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        ek = Fraction(0)
        for subset in itertools.combinations(range(n), k):
            ek += principal_minor_fast(matrix, subset)
        coeffs.append((-1) ** k * ek)
    zeros = 0
    while zeros < n and coeffs[n - zeros] == 0:
        zeros += 1
    nonzero = [c for c in coeffs[: n - zeros + 1] if c != 0]
    plus = sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))
    return (plus, n - zeros - plus, zeros)


def oracle_negative_definite_fast(matrix: SymmetricMatrix) -> bool:
    """Sylvester: all leading principal minors of -M positive."""
    for k in range(1, matrix.n + 1):
        rows = [[-matrix.entry(i, j) for j in range(k)] for i in range(k)]
        if _det_auto(rows) <= 0:
            return False
    return True


def oracle_negative_semidefinite(matrix: SymmetricMatrix) -> bool:
    """M is negative semidefinite iff every principal minor of -M is >= 0."""
    n = matrix.n
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            rows = [[-matrix.entry(i, j) for j in subset] for i in subset]
            if det_cofactor(rows) < 0:
                return False
    return True


def oracle_negative_definite(matrix: SymmetricMatrix) -> bool:
    """Leading principal minors of -M all positive (Sylvester)."""
    for k in range(1, matrix.n + 1):
        rows = [[-matrix.entry(i, j) for j in range(k)] for i in range(k)]
        if det_cofactor(rows) <= 0:
            return False
    return True


# -- inertia oracles ----------------------------------------------------


def charpoly_signs(matrix: SymmetricMatrix):
    """Coefficients of det(tI - M) via sums of principal minors."""
    n = matrix.n
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        ek = Fraction(0)
        for subset in itertools.combinations(range(n), k):
            ek += principal_minor(matrix, subset)
        coeffs.append((-1) ** k * ek)
    return coeffs


def oracle_inertia_charpoly(matrix: SymmetricMatrix):
    """Inertia from Descartes' rule on the characteristic polynomial.

    All roots are real for a symmetric matrix, so the number of sign
    variations counts the positive eigenvalues exactly; trailing zero
    coefficients count the zero eigenvalues.
    """
    coeffs = charpoly_signs(matrix)
    n = matrix.n
    zeros = 0
    while zeros < n and coeffs[n - zeros] == 0:
        zeros += 1
    nonzero = [c for c in coeffs[: n - zeros + 1] if c != 0]
    plus = sum(
        1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0)
    )
    return (plus, n - zeros - plus, zeros)


def oracle_inertia_leading_minors(matrix: SymmetricMatrix):
    """Sign changes of leading principal minors, after a symmetric
    permutation making all pivots nonzero.

    Returns None when no ordering of the rows/columns gives nonzero leading
    minors through the rank (e.g. [[0,1],[1,0]]), in which case the
    characteristic-polynomial oracle still applies.
    """
    n = matrix.n
    rank = n - oracle_inertia_charpoly(matrix)[2]
    if rank == 0:
        return (0, 0, n)
    for perm in itertools.permutations(range(n)):
        minors = [Fraction(1)]
        ok = True
        for k in range(1, rank + 1):
            d = principal_minor(matrix, perm[:k])
            if d == 0:
                ok = False
                break
            minors.append(d)
        if not ok:
            continue
        changes = sum(
            1
            for a, b in zip(minors, minors[1:])
            if (a > 0) != (b > 0)
        )
        return (rank - changes, changes, n - rank)
    return None


# -- graph oracle --------------------------------------------------------


def oracle_components(config: Configuration, subset):
    """Connected components via union-find, independent of the BFS in the
    package."""
    nodes = sorted(subset)
    parent = {i: i for i in nodes}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in nodes:
        for b in nodes:
            if a < b and config.gram.entry(a, b) > 0:
                parent[find(a)] = find(b)
    groups = {}
    for i in nodes:
        groups.setdefault(find(i), set()).add(i)
    return sorted((frozenset(g) for g in groups.values()), key=min)


# -- random data ---------------------------------------------------------


def random_symmetric_int(rng, n, lo=-2, hi=2) -> SymmetricMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return SymmetricMatrix(rows)


def random_symmetric_rational(rng, n, max_num=4, max_den=3) -> SymmetricMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
            rows[i][j] = rows[j][i] = value
    return SymmetricMatrix(rows)


def random_configuration(rng, n, diag_lo=-4, diag_hi=4, edge_hi=2) -> Configuration:
    """Random dual graph: integer self-intersections, off-diagonals >= 0."""
    curves = [(f"C{i}", rng.randint(diag_lo, diag_hi)) for i in range(n)]
    inters = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                value = rng.randint(1, edge_hi)
                inters.append((i, j, value))
    return Configuration.build(curves, inters)


def random_negative_definite_configuration(rng, k, edge_hi=2) -> Configuration:
    """Strictly diagonally dominant with negative diagonal, off-diag >= 0,
    hence negative definite by Gershgorin."""
    edges = {}
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.5:
                edges[(i, j)] = rng.randint(1, edge_hi)
    curves = []
    for i in range(k):
        row_sum = sum(v for (a, b), v in edges.items() if i in (a, b))
        curves.append((f"E{i}", -(row_sum + rng.randint(1, 3))))
    return Configuration.build(curves, [(i, j, v) for (i, j), v in edges.items()])
