"""Sign data for the lattice vertex algebra: the 2-cocycle, η and π.

Signs are returned as the integers ``+1`` / ``-1``; the underlying exponents
live in GF(2) and are computed from integer bit matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .lattice import OrbifoldSetting, Sublattice


class OddNorm(ValueError):
    pass


class Inconsistent(ArithmeticError):
    pass


class NonIntegralExponent(ValueError):
    pass


def _sign(bit: int) -> int:
    return -1 if bit % 2 else 1


@dataclass(frozen=True)
class Cocycle:
    """ε(x, y) = (-1)^(x^T B y) on the integer coordinates of ``lattice``."""

    lattice: Sublattice
    B: tuple[tuple[int, ...], ...]

    def exponent(self, x: Sequence[int], y: Sequence[int]) -> int:
        return la.bilinear(self.B, x, y) % 2

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> int:
        return _sign(self.exponent(x, y))

    def on_vectors(self, u: Sequence, v: Sequence) -> int:
        """Evaluate on ambient vectors, which must lie in the lattice."""
        return self(_int_coords(self.lattice, u), _int_coords(self.lattice, v))


def _int_coords(lat: Sublattice, v: Sequence) -> tuple[int, ...]:
    c = lat.coefficients(v)
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"vector is not in {lat.name}")
    return tuple(int(x) for x in c)


def build_cocycle(lattice: Sublattice) -> Cocycle:
    """Strictly-lower-triangular Gram entries plus half the diagonal, mod 2."""
    g = lattice.gram
    if not lattice.is_integral:
        raise ValueError(f"{lattice.name} is not integral")
    n = len(g)
    for i in range(n):
        if g[i][i] % 2:
            raise OddNorm(f"basis vector {i} of {lattice.name} has odd norm {g[i][i]}")
    B = tuple(
        tuple((g[i][j] % 2) if i > j else ((g[i][i] // 2) % 2 if i == j else 0) for j in range(n))
        for i in range(n)
    )
    return Cocycle(lattice, B)


@dataclass(frozen=True)
class EtaForm:
    """η(x) = (-1)^q(x), q(x) = Σ q_i x_i + Σ_{i<j} b_ij x_i x_j (mod 2).

    ``b`` is the polarization of the defect f(x, y) = ε(x, y) ε(σx, σy); it is
    symmetric with zero diagonal mod 2, so ``q`` is a quadratic refinement.
    """

    linear: tuple[int, ...]
    b: tuple[tuple[int, ...], ...]

    def exponent(self, x: Sequence[int]) -> int:
        n = len(self.linear)
        q = sum(l * a for l, a in zip(self.linear, x))
        q += sum(self.b[i][j] * x[i] * x[j] for i in range(n) for j in range(i + 1, n))
        return q % 2

    def __call__(self, x: Sequence[int]) -> int:
        return _sign(self.exponent(x))

    def defect(self, x: Sequence[int], y: Sequence[int]) -> int:
        """f(x, y) as a sign."""
        return _sign(la.bilinear(self.b, x, y))


def defect_matrix(s: OrbifoldSetting, c: Cocycle) -> tuple[tuple[int, ...], ...]:
    S = s.sigma
    StBS = la.matmul(la.matmul(la.transpose(S), c.B), S)
    n = s.n
    return tuple(tuple((c.B[i][j] + StBS[i][j]) % 2 for j in range(n)) for i in range(n))


def build_eta(s: OrbifoldSetting, c: Cocycle) -> EtaForm:
    b = defect_matrix(s, c)
    n = s.n
    rows, rhs = [], []
    for g in s.L_plus.basis:
        g = [int(x) for x in g]
        rows.append([x % 2 for x in g])
        rhs.append(sum(b[i][j] * g[i] * g[j] for i in range(n) for j in range(i + 1, n)) % 2)
    if not rows:
        return EtaForm((0,) * n, b)
    sol = la.solve_f2(rows, rhs)
    if sol is None:
        raise Inconsistent("no quadratic refinement is trivial on the fixed lattice")
    return EtaForm(tuple(sol), b)


def pi_sign(norm_lambda, norm_mu) -> int:
    """π = (-1)^(|λ|²|μ|²) from the two norms."""
    e = Fraction(norm_lambda) * Fraction(norm_mu)
    if e.denominator != 1:
        raise NonIntegralExponent(f"|λ|²|μ|² = {e} is not an integer")
    return _sign(int(e))
