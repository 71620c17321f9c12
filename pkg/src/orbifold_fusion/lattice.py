"""Lattice side of an order-two orbifold setting.

Coordinates: after validation every vector lives in the coordinates of the
even core ``Qbar`` (the working lattice), so ``Qbar`` itself is ``Z^n`` with
Gram matrix ``setting.gram`` and the isometry acts by ``setting.sigma``.
Sublattices and duals are carried as rational column bases in those
coordinates, which keeps every pairing computable with the ambient Gram.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor, prod
from typing import Iterator, Sequence

from . import linalg as la


class SettingError(ValueError):
    """Input pair (Gram, isometry) is not an admissible orbifold setting."""


class NotSymmetric(SettingError):
    pass


class NotEven(SettingError):
    pass


class NotPositiveDefinite(SettingError):
    pass


class NotIsometry(SettingError):
    pass


class NotInvolution(SettingError):
    pass


class ModulusMismatch(ValueError):
    pass


class NotInSpan(ValueError):
    pass


def _frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


@dataclass(frozen=True, eq=False)
class Sublattice:
    """Lattice spanned by the columns ``basis`` inside the ambient space."""

    name: str
    basis: tuple[tuple, ...]  # column vectors, ambient coordinates
    ambient_gram: la.Matrix = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.ambient_gram)

    @cached_property
    def gram(self) -> la.Matrix:
        G = self.ambient_gram
        return la.normalize(tuple(tuple(la.bilinear(G, u, v) for v in self.basis) for u in self.basis))

    @cached_property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self.gram for x in row)

    @cached_property
    def _projector(self) -> la.Matrix:
        # coefficient map v -> gram^{-1} B^T G v (exact on the span)
        if not self.basis:
            return ()
        ginv = la.rational_inverse(self.gram)
        BtG = la.matmul(tuple(self.basis), self.ambient_gram)
        return la.matmul(ginv, BtG)

    def combine(self, coeffs: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for c, b in zip(coeffs, self.basis):
            if c:
                out = [o + c * x for o, x in zip(out, b)]
        return tuple(la._normalize(Fraction(x)) for x in out)

    def coefficients(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in this basis; raises NotInSpan off the span."""
        c = tuple(Fraction(x) for x in la.matvec(self._projector, v)) if self.basis else ()
        if tuple(Fraction(x) for x in self.combine(c)) != tuple(Fraction(x) for x in v):
            raise NotInSpan(f"vector not in the span of {self.name}")
        return c

    def in_span(self, v: Sequence) -> bool:
        try:
            self.coefficients(v)
        except NotInSpan:
            return False
        return True

    def contains(self, v: Sequence) -> bool:
        try:
            return all(c.denominator == 1 for c in self.coefficients(v))
        except NotInSpan:
            return False

    def dual_contains(self, v: Sequence) -> bool:
        if not self.in_span(v):
            return False
        G = self.ambient_gram
        return all(Fraction(la.bilinear(G, b, v)).denominator == 1 for b in self.basis)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return Fraction(la.bilinear(self.ambient_gram, u, v))

    def norm(self, v: Sequence) -> Fraction:
        return self.pair(v, v)

    @cached_property
    def dual(self) -> "Sublattice":
        if not self.basis:
            return Sublattice(self.name + "*", (), self.ambient_gram)
        ginv = la.rational_inverse(self.gram)
        cols = [self.combine(col) for col in la.columns(ginv)]
        return Sublattice(self.name + "*", tuple(cols), self.ambient_gram)

    def scaled(self, factor, name: str) -> "Sublattice":
        f = Fraction(factor)
        return Sublattice(name, tuple(tuple(la._normalize(f * x) for x in b) for b in self.basis), self.ambient_gram)

    def coset(self, v: Sequence) -> "CosetVector":
        return CosetVector.reduce(self, v)

    def __repr__(self) -> str:
        return f"Sublattice({self.name!r}, rank={self.rank})"


def lattice_from_generators(name: str, gens: Sequence[Sequence], G: la.Matrix) -> Sublattice:
    """Hermite-canonical basis of the Z-span of (rational) generators."""
    return Sublattice(name, tuple(la.hermite_rows(gens)), G)


def intersect(A: Sublattice, B: Sublattice, name: str) -> Sublattice:
    """``A ∩ B`` for two full lattices in the same rational span."""
    r = A.rank
    if r == 0:
        return Sublattice(name, (), A.ambient_gram)
    Bc = [A.coefficients(b) for b in B.basis]  # columns of B in A-coordinates
    N, d = la.integral_scaling(la.transpose(tuple(Bc)))
    # (b, a) with N b = d a  <=>  a = Bc b is integral and lies in both
    M = [list(N[i]) + [-d if j == i else 0 for j in range(r)] for i in range(r)]
    K = la.integer_kernel(M)
    a_parts = [col[r:] for col in la.columns(K)]
    return lattice_from_generators(name, [A.combine(a) for a in a_parts], A.ambient_gram)


@dataclass(frozen=True)
class CosetVector:
    """Element ``v + modulus`` stored by its reduced modulus-coordinates."""

    modulus: Sublattice = field(compare=False, hash=False)
    coeffs: tuple  # Fractions in [0, 1)
    modulus_name: str = field(default="")

    @classmethod
    def reduce(cls, modulus: Sublattice, v: Sequence) -> "CosetVector":
        c = modulus.coefficients(v)
        return cls(modulus, tuple(_frac_part(x) for x in c), modulus.name)

    @property
    def vector(self) -> tuple:
        return self.modulus.combine(self.coeffs)

    def _check(self, other: "CosetVector"):
        if self.modulus_name != other.modulus_name:
            raise ModulusMismatch(f"{self.modulus_name} vs {other.modulus_name}")

    def __add__(self, other: "CosetVector") -> "CosetVector":
        self._check(other)
        return CosetVector(self.modulus, tuple(_frac_part(a + b) for a, b in zip(self.coeffs, other.coeffs)), self.modulus_name)

    def __sub__(self, other: "CosetVector") -> "CosetVector":
        return self + (-other)

    def __neg__(self) -> "CosetVector":
        return CosetVector(self.modulus, tuple(_frac_part(-a) for a in self.coeffs), self.modulus_name)

    def scale(self, k: int) -> "CosetVector":
        return CosetVector(self.modulus, tuple(_frac_part(k * a) for a in self.coeffs), self.modulus_name)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def twice_in_modulus(self) -> bool:
        """``2v`` lies in the modulus lattice."""
        return all((2 * c).denominator == 1 for c in self.coeffs)

    def sort_key(self) -> tuple:
        return tuple((c.numerator, c.denominator) if c else (0, 1) for c in self.coeffs)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class QuotientGroup:
    """Finite quotient ``top / bottom`` with invariant factors d1 | d2 | ..."""

    top: Sublattice
    bottom: Sublattice
    invariants: tuple[int, ...]
    generators: tuple[CosetVector, ...]

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def elements(self) -> list[CosetVector]:
        zero = self.bottom.coset((0,) * self.bottom.dim)
        out = []
        for ks in itertools.product(*(range(d) for d in self.invariants)):
            x = zero
            for k, g in zip(ks, self.generators):
                x = x + g.scale(k)
            out.append(x)
        return sorted(out, key=CosetVector.sort_key)

    def from_coords(self, ks: Sequence[int]) -> CosetVector:
        if len(ks) != len(self.generators):
            raise ValueError(f"expected {len(self.generators)} coordinates, got {len(ks)}")
        x = self.bottom.coset((0,) * self.bottom.dim)
        for k, g in zip(ks, self.generators):
            x = x + g.scale(k)
        return x

    @cached_property
    def _coords(self) -> dict:
        table = {}
        for ks in itertools.product(*(range(d) for d in self.invariants)):
            table[self.from_coords(ks)] = ks
        return table

    def coords(self, x: CosetVector) -> tuple[int, ...]:
        """Exponents of ``x`` over the generators, each in ``[0, d_i)``."""
        try:
            return self._coords[x]
        except KeyError:
            raise ValueError(f"{x} is not in {self.top.name}/{self.bottom.name}") from None


def quotient(top: Sublattice, bottom: Sublattice) -> QuotientGroup:
    """``top / bottom`` for a finite-index sublattice ``bottom``."""
    r = top.rank
    if r == 0:
        return QuotientGroup(top, bottom, (), ())
    Bc = la.transpose(tuple(top.coefficients(b) for b in bottom.basis))
    if any(Fraction(x).denominator != 1 for row in Bc for x in row):
        raise ValueError(f"{bottom.name} is not contained in {top.name}")
    dec = la.smith_normal_form(Bc)
    Uinv = la.rational_inverse(dec.U)
    invs, gens = [], []
    for i, d in enumerate(dec.diagonal):
        if d == 0:
            raise ValueError("infinite quotient")
        if d == 1:
            continue
        col = tuple(Uinv[k][i] for k in range(r))
        invs.append(d)
        gens.append(bottom.coset(top.combine(col)))
    return QuotientGroup(top, bottom, tuple(invs), tuple(gens))


# ---------------------------------------------------------------------------


def _is_positive_definite(G) -> bool:
    return all(la.determinant([row[:k] for row in G[:k]]) > 0 for k in range(1, len(G) + 1))


def even_core_basis(G: la.Matrix, S: la.Matrix) -> tuple[tuple[int, ...], ...]:
    """Columns spanning ``{a : (a|σa) even}``.

    ``a -> (a|σa) mod 2`` is additive (the cross term is ``2(a|σb)``), so the
    core is the kernel of a GF(2) functional; it has index 1 or 2.
    """
    n = len(G)
    GS = la.matmul(G, S)
    c = [GS[i][i] % 2 for i in range(n)]
    if not any(c):
        return la.identity(n)
    i0 = c.index(1)
    gens = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        if j == i0:
            e[j] = 2
        elif c[j]:
            e[i0] = 1
        gens.append(tuple(e))
    return tuple(la.hermite_rows(gens))


class OrbifoldSetting:
    """A validated pair (even positive-definite lattice, order-2 isometry).

    ``gram`` and ``sigma`` are expressed in the even-core basis; the input pair
    is kept as ``input_gram`` / ``input_sigma`` and ``core_basis`` holds the
    core generators in input coordinates.
    """

    def __init__(self, gram, sigma, name: str | None = None):
        G = la.as_matrix(gram)
        S = la.as_matrix(sigma)
        n = len(G)
        if any(len(r) != n for r in G) or len(S) != n or any(len(r) != n for r in S):
            raise SettingError("gram and sigma must be square matrices of equal size")
        if G != la.transpose(G):
            raise NotSymmetric("Gram matrix is not symmetric")
        if any(G[i][i] % 2 for i in range(n)):
            raise NotEven("lattice is not even")
        if not _is_positive_definite(G):
            raise NotPositiveDefinite("Gram matrix is not positive definite")
        if la.matmul(la.matmul(la.transpose(S), G), S) != G:
            raise NotIsometry("sigma does not preserve the form")
        if la.matmul(S, S) != la.identity(n):
            raise NotInvolution("sigma is not an involution")
        self.name = name
        self.input_gram = G
        self.input_sigma = S
        self.core_basis = even_core_basis(G, S)  # rows = generators
        B = la.transpose(self.core_basis)
        self.core_index = abs(la.determinant(B))
        self.gram = la.normalize(la.matmul(la.matmul(self.core_basis, G), B))
        self.sigma = la.normalize(la.matmul(la.matmul(la.rational_inverse(B), S), B))
        assert all(isinstance(x, int) for r in self.sigma for x in r)
        self.n = n

    # -- sublattices -------------------------------------------------------

    def apply_sigma(self, v: Sequence) -> tuple:
        return la.matvec(self.sigma, v)

    def plus_part(self, v: Sequence) -> tuple:
        sv = self.apply_sigma(v)
        return tuple(la._normalize(Fraction(a + b, 2)) for a, b in zip(v, sv))

    def minus_part(self, v: Sequence) -> tuple:
        sv = self.apply_sigma(v)
        return tuple(la._normalize(Fraction(a - b, 2)) for a, b in zip(v, sv))

    def pair(self, u, v) -> Fraction:
        return Fraction(la.bilinear(self.gram, u, v))

    @cached_property
    def Q(self) -> Sublattice:
        return Sublattice("Q", tuple(la.columns(la.identity(self.n))), self.gram)

    def eigenlattice(self, sign: int) -> Sublattice:
        return self.L_plus if sign > 0 else self.L_minus

    def _eigen(self, sign: int, name: str) -> Sublattice:
        n = self.n
        A = tuple(tuple(self.sigma[i][j] - sign * (i == j) for j in range(n)) for i in range(n))
        K = la.integer_kernel(A)
        return Sublattice(name, tuple(la.columns(K)), self.gram)

    @cached_property
    def L_plus(self) -> Sublattice:
        return self._eigen(1, "L+")

    @cached_property
    def L_minus(self) -> Sublattice:
        return self._eigen(-1, "L-")

    @cached_property
    def L(self) -> Sublattice:
        return Sublattice("L", self.L_plus.basis + self.L_minus.basis, self.gram)

    @cached_property
    def projected(self) -> Sublattice:
        """``π₊Qbar``, generated by the plus-parts of the core basis."""
        gens = [self.plus_part(e) for e in la.columns(la.identity(self.n))]
        return lattice_from_generators("pi+Q", gens, self.gram)

    @cached_property
    def twisted_weights(self) -> Sublattice:
        """``(π₊Q)*``: plus-space vectors pairing integrally with every α₊."""
        P = self.projected
        if not P.basis:
            return P
        return P.dual

    @cached_property
    def twisted_weight_modulus(self) -> Sublattice:
        """``(π₊Q)* ∩ π₊Q``, the lattice twisted weights are read modulo."""
        if not self.projected.basis:
            return self.projected
        return intersect(self.twisted_weights, self.projected, "P")

    # -- finite groups -----------------------------------------------------

    def dual_quotient(self, sub: Sublattice) -> QuotientGroup:
        return dual_quotient(sub)

    @cached_property
    def M_lattice(self) -> Sublattice:
        Lm = self.L_minus
        return intersect(Lm.dual, Lm.scaled(Fraction(1, 2), "L-/2"), "M")

    @cached_property
    def M(self) -> QuotientGroup:
        return quotient(self.M_lattice, self.L_minus)

    @cached_property
    def transversal(self) -> tuple[tuple[int, ...], ...]:
        """Representatives of ``Qbar / L``, each reduced against the L basis."""
        L = self.L
        Lb = la.transpose(L.basis)
        dec = la.smith_normal_form(Lb)
        Uinv = la.rational_inverse(dec.U)
        reps = []
        for ys in itertools.product(*(range(d) for d in dec.diagonal)):
            x = la.matvec(Uinv, ys)
            c = L.coefficients(x)
            r = L.combine(tuple(_frac_part(a) for a in c))
            reps.append(tuple(int(a) for a in r))
        return tuple(sorted(set(reps), key=lambda v: (sum(map(abs, v)), v)))

    def qbar_index(self) -> int:
        return self.core_index

    def summary(self) -> dict:
        return {
            "rank": self.n,
            "core_index": self.core_index,
            "rank_L+": self.L_plus.rank,
            "rank_L-": self.L_minus.rank,
            "Qbar/L": len(self.transversal),
        }


def validate_setting(gram, sigma, name: str | None = None) -> OrbifoldSetting:
    return OrbifoldSetting(gram, sigma, name)


def eigenlattice(s: OrbifoldSetting, sign: int) -> Sublattice:
    return s.eigenlattice(sign)


def projected_lattice(s: OrbifoldSetting) -> Sublattice:
    return s.projected


def dual_quotient(sub: Sublattice) -> QuotientGroup:
    """``sub* / sub`` for an integral sublattice; trivial for rank 0."""
    if not sub.is_integral:
        raise ValueError(f"{sub.name} is not integral")
    return quotient(sub.dual, sub)


def compute_M(s: OrbifoldSetting) -> QuotientGroup:
    return s.M


def fixed_discriminant_count(s: OrbifoldSetting) -> int:
    """``|(Qbar*/Qbar)^σ|`` by direct enumeration."""
    D = dual_quotient(s.Q)
    return sum(1 for x in D.elements() if s.Q.coset(s.apply_sigma(x.vector)) == x)
