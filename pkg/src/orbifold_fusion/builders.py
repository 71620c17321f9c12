"""Named lattice/involution pairs used throughout the docs and tests.

Spec strings look like ``an-dynkin:5`` or ``perm-double:[[2,-1],[-1,2]]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

Matrix = list[list[int]]


class UnknownBuilder(ValueError):
    pass


class BadParameter(ValueError):
    pass


@dataclass(frozen=True)
class InputDocument:
    gram: tuple[tuple[int, ...], ...]
    sigma: tuple[tuple[int, ...], ...]
    name: str | None = None

    def to_dict(self) -> dict:
        d = {"gram": [list(r) for r in self.gram], "sigma": [list(r) for r in self.sigma]}
        if self.name is not None:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "InputDocument":
        if not isinstance(d, dict) or "gram" not in d or "sigma" not in d:
            raise BadParameter("input needs 'gram' and 'sigma'")
        return cls(_int_matrix(d["gram"], "gram"), _int_matrix(d["sigma"], "sigma"), d.get("name"))


def _int_matrix(m, what: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise BadParameter(f"{what} must be a non-empty array of arrays")
    n = len(m)
    if any(len(r) != n for r in m):
        raise BadParameter(f"{what} must be square")
    if any(isinstance(x, bool) or not isinstance(x, int) for r in m for x in r):
        raise BadParameter(f"{what} entries must be integers")
    return tuple(tuple(r) for r in m)


def parse_input(text: str) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParameter(f"input is not valid JSON: {exc.msg}") from None
    return InputDocument.from_dict(data)


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def permutation_double(K: Matrix) -> tuple[Matrix, Matrix]:
    """K ⊕ K with the swap of the two copies."""
    r = len(K)
    gram = [[K[i % r][j % r] if (i < r) == (j < r) else 0 for j in range(2 * r)] for i in range(2 * r)]
    swap = [[int(j == (i + r) % (2 * r)) for j in range(2 * r)] for i in range(2 * r)]
    return gram, swap


def an_dynkin(n: int) -> tuple[Matrix, Matrix]:
    """A_n Cartan matrix with the diagram flip α_i ↔ α_{n-i+1}."""
    gram = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    flip = [[int(j == n - 1 - i) for j in range(n)] for i in range(n)]
    return gram, flip


def neg_identity(K: Matrix) -> tuple[Matrix, Matrix]:
    return [list(r) for r in K], [[-x for x in r] for r in _identity(len(K))]


def _parse_matrix(arg: str) -> Matrix:
    try:
        m = json.loads(arg)
    except json.JSONDecodeError:
        raise BadParameter(f"cannot parse matrix {arg!r}") from None
    return [list(r) for r in _int_matrix(m, "matrix")]


def _parse_positive(arg: str, lo: int = 1) -> int:
    try:
        k = int(arg)
    except ValueError:
        raise BadParameter(f"expected an integer, got {arg!r}") from None
    if k < lo:
        raise BadParameter(f"parameter must be at least {lo}, got {k}")
    return k


A2 = [[2, -1], [-1, 2]]


def build_example(spec: str) -> InputDocument:
    head, _, arg = spec.strip().partition(":")
    if head == "a2-double":
        if arg:
            raise BadParameter("a2-double takes no parameter")
        g, s = permutation_double(A2)
    elif head == "perm-double":
        g, s = permutation_double(_parse_matrix(arg))
    elif head == "rank1-double":
        g, s = permutation_double([[2 * _parse_positive(arg)]])
    elif head == "an-dynkin":
        g, s = an_dynkin(_parse_positive(arg, 2))
    elif head == "neg-identity":
        g, s = neg_identity(_parse_matrix(arg))
    else:
        raise UnknownBuilder(f"unknown builder {head!r}")
    return InputDocument(tuple(map(tuple, g)), tuple(map(tuple, s)), spec.strip())


BUILDERS = ("a2-double", "perm-double:<gram>", "rank1-double:<k>", "an-dynkin:<n>", "neg-identity:<gram>")
