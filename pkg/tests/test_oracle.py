"""Discriminant-group counts by brute force, independent of Smith forms.

Q*/Q is enumerated as the closure of the columns of G^-1 modulo Z^n, using a
small Gauss-Jordan inverse written here rather than the package's linalg.
"""

from fractions import Fraction

import pytest

from orbifold_fusion import build_example, build_orbifold
from orbifold_fusion.fusion import global_dimension, twisted_qdim_square

from conftest import EXAMPLES


def _inverse(G):
    n = len(G)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(G)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c])
        M[c], M[p] = M[p], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for r in range(n):
            if r != c:
                M[r] = [a - M[r][c] * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def _frac(v):
    return tuple(x - (x.numerator // x.denominator) for x in v)


def discriminant_oracle(G, S):
    """Return (|Q*/Q|, number of σ-fixed classes)."""
    n = len(G)
    inv = _inverse(G)
    gens = [_frac([inv[i][j] for i in range(n)]) for j in range(n)]
    classes = {tuple(Fraction(0) for _ in range(n))}
    frontier = list(classes)
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = _frac([a + b for a, b in zip(v, g)])
            if w not in classes:
                classes.add(w)
                frontier.append(w)
    fixed = sum(1 for v in classes if _frac([sum(S[i][j] * v[j] for j in range(n)) for i in range(n)]) == v)
    return len(classes), fixed


EXTRA = [
    ([[4, 1], [1, 4]], [[0, 1], [1, 0]]),
    ([[2, 1, 0], [1, 2, 0], [0, 0, 4]], [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]),
    ([[2, 0, 0], [0, 4, 2], [0, 2, 4]], [[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    ([[6]], [[-1]]),
    ([[4, 2], [2, 4]], [[-1, 0], [0, -1]]),
]


def _cases():
    for spec in EXAMPLES + ["an-dynkin:6", "an-dynkin:7", "rank1-double:2", "perm-double:[[2,1],[1,4]]"]:
        doc = build_example(spec)
        yield spec, doc.gram, doc.sigma
    for i, (g, s) in enumerate(EXTRA):
        yield f"extra{i}", g, s


CASES = list(_cases())


@pytest.mark.parametrize("name,gram,sigma", CASES, ids=[c[0] for c in CASES])
def test_canonical_counts_match_discriminant_oracle(name, gram, sigma):
    orb = build_orbifold(gram, sigma, name)
    s = orb.setting
    N, F = discriminant_oracle(s.gram, s.sigma)
    classes = orb.canonical_classes
    counts = [sum(1 for c in classes if c.kind == k) for k in ("type1", "type2", "twisted")]
    assert counts == [(N - F) // 2, 2 * F, 2 * F]
    assert global_dimension(orb, classes) == 4 * N
    assert twisted_qdim_square(orb) * F == N
    assert not orb.notes
