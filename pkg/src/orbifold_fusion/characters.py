"""Central characters of the finite group attached to the -1 eigenlattice.

The twisted sector is labelled by characters of the center of ``L̂₋/K``.  We
model that group as pairs ``(s, v)`` with ``s = ±1`` and ``v ∈ {0,1}^r`` in
``L₋`` coordinates; the product of basis lifts picks up the cocycle ε and the
relation ``e^{2γ} ≡ η(γ)`` that ``K`` imposes.

Character values are fourth roots of unity, stored as exponents ``k`` of
``i^k``.  They are ``±1`` whenever the forced square ``ε(z,z)η(z)`` of a
generator is ``+1``; otherwise the generator takes the values ``±i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .lattice import CosetVector, OrbifoldSetting, Sublattice, dual_quotient
from .signs import Cocycle, EtaForm


class NotCentral(ValueError):
    pass


class NotHalfLattice(ValueError):
    pass


class NoCharacter(ArithmeticError):
    pass


_DIGIT = {0: "0", 2: "1", 1: "2", 3: "3"}  # exponent -> name digit
_FROM_DIGIT = {v: k for k, v in _DIGIT.items()}


@dataclass(frozen=True, eq=False)
class CentralData:
    lattice: Sublattice  # L₋
    cocycle: Cocycle  # on the working lattice, ambient coordinates
    eta: EtaForm
    generators: tuple[tuple[int, ...], ...]  # F2 basis of the center, L₋ coords
    forced: tuple[int, ...]  # ε(z,z)η(z) per generator, as ±1

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def ambient(self, v: Sequence[int]) -> tuple:
        return self.lattice.combine(v)

    def eps(self, v: Sequence[int], w: Sequence[int]) -> int:
        return self.cocycle(self.ambient(v), self.ambient(w))

    def eta_of(self, v: Sequence[int]) -> int:
        return self.eta(tuple(int(x) for x in self.ambient(v)))

    def multiply(self, a: tuple[int, tuple], b: tuple[int, tuple]) -> tuple[int, tuple]:
        """Product in the group model; elements are ``(sign, bits)``."""
        (s, v), (t, w) = a, b
        u = tuple((x + y) % 2 for x, y in zip(v, w))
        carry = tuple((x + y) // 2 for x, y in zip(v, w))
        return s * t * self.eps(v, w) * self.eta_of(carry), u

    @cached_property
    def _reduce(self):
        """Row-reduced generators with pivots, for expressing center elements."""
        rows = [list(g) for g in self.generators]
        combos = [[int(i == j) for j in range(len(rows))] for i in range(len(rows))]
        pivots = []
        for k in range(len(rows)):
            piv = next(c for c in range(self.rank) if rows[k][c] and c not in pivots)
            pivots.append(piv)
            for m in range(len(rows)):
                if m != k and rows[m][piv]:
                    rows[m] = [(a + b) % 2 for a, b in zip(rows[m], rows[k])]
                    combos[m] = [(a + b) % 2 for a, b in zip(combos[m], combos[k])]
        return pivots, rows, combos

    def decompose(self, u: Sequence[int]) -> tuple[int, ...] | None:
        """F2 coefficients of ``u`` over the generators, or None if not central."""
        pivots, rows, combos = self._reduce
        u = [x % 2 for x in u]
        coeff = [0] * len(self.generators)
        for p, row, combo in zip(pivots, rows, combos):
            if u[p]:
                u = [(a + b) % 2 for a, b in zip(u, row)]
                coeff = [(a + b) % 2 for a, b in zip(coeff, combo)]
        return tuple(coeff) if not any(u) else None

    def is_central(self, v: Sequence[int]) -> bool:
        return self.decompose(v) is not None


def central_data(s: OrbifoldSetting, cocycle: Cocycle, eta: EtaForm) -> CentralData:
    Lm = s.L_minus
    r = Lm.rank
    if r == 0:
        return CentralData(Lm, cocycle, eta, (), ())
    g2 = [[x % 2 for x in row] for row in Lm.gram]
    gens = tuple(la.f2_kernel(g2, r))
    cd = CentralData(Lm, cocycle, eta, gens, ())
    forced = tuple(cd.eps(z, z) * cd.eta_of(z) for z in gens)
    return CentralData(Lm, cocycle, eta, gens, forced)


@dataclass(frozen=True)
class CentralCharacter:
    cd: CentralData = field(compare=False, hash=False, repr=False)
    exps: tuple[int, ...]  # i^k on each generator

    @property
    def name(self) -> str:
        return "chi" + "".join(_DIGIT[k] for k in reversed(self.exps))

    def values(self) -> tuple[complex, ...]:
        return tuple(1j**k for k in self.exps)

    def is_real(self) -> bool:
        return all(k % 2 == 0 for k in self.exps)

    def __str__(self) -> str:
        return self.name


def character_from_name(cd: CentralData, name: str) -> CentralCharacter:
    digits = name[3:] if name.startswith("chi") else name
    if len(digits) != len(cd.generators) or any(d not in _FROM_DIGIT for d in digits):
        raise ValueError(f"bad character name {name!r}")
    chi = CentralCharacter(cd, tuple(_FROM_DIGIT[d] for d in reversed(digits)))
    if chi not in enumerate_characters(cd):
        raise ValueError(f"{name} violates the forced squares")
    return chi


def enumerate_characters(cd: CentralData) -> list[CentralCharacter]:
    choices = []
    for f in cd.forced:
        if f not in (1, -1):
            raise NoCharacter("forced square is not a sign")
        choices.append((0, 2) if f == 1 else (1, 3))
    return [CentralCharacter(cd, e) for e in itertools.product(*choices)]


def _exp_eval(chi: CentralCharacter, beta: Sequence[int]) -> int:
    cd = chi.cd
    beta = [int(x) for x in beta]
    u = tuple(x % 2 for x in beta)
    t = tuple((x - y) // 2 for x, y in zip(beta, u))
    coeff = cd.decompose(u)
    if coeff is None:
        raise NotCentral("element is not in the center")
    elem = (1, (0,) * cd.rank)
    k = 0
    for c, z, e in zip(coeff, cd.generators, chi.exps):
        if c:
            elem = cd.multiply(elem, (1, z))
            k += e
    assert elem[1] == u
    sign = elem[0] * cd.eta_of(t)
    return (k + (0 if sign == 1 else 2)) % 4


def char_eval_exponent(chi: CentralCharacter, beta_coords: Sequence[int]) -> int:
    """χ(e^β) as an exponent of ``i``; β given in ``L₋`` coordinates."""
    return _exp_eval(chi, beta_coords)


def char_eval(chi: CentralCharacter, beta_coords: Sequence[int]) -> complex | int:
    k = _exp_eval(chi, beta_coords)
    return (1, 1j, -1, -1j)[k]


def _pairing_bit(cd: CentralData, lam: Sequence, z: Sequence[int]) -> int:
    p = Fraction(la.bilinear(cd.lattice.ambient_gram, lam, cd.ambient(z)))
    if p.denominator != 1:
        raise ValueError("twist vector is not in the dual lattice")
    return int(p) % 2


def twist(chi: CentralCharacter, lam: CosetVector | Sequence) -> CentralCharacter:
    """χ^{(λ)}: multiply each generator value by (-1)^{(λ|z)}."""
    v = lam.vector if isinstance(lam, CosetVector) else lam
    cd = chi.cd
    return CentralCharacter(cd, tuple((k + 2 * _pairing_bit(cd, v, z)) % 4 for k, z in zip(chi.exps, cd.generators)))


def prime(chi: CentralCharacter) -> CentralCharacter:
    cd = chi.cd
    out = []
    for k, z in zip(chi.exps, cd.generators):
        half = Fraction(cd.lattice.norm(cd.ambient(z)), 2)
        out.append((k + 2 * (int(half) % 2)) % 4)
    return CentralCharacter(cd, tuple(out))


def c_chi(chi: CentralCharacter, lam: CosetVector | Sequence) -> int:
    """c_χ(λ) for 2λ ∈ L₋, normalised to a sign.

    ``(-1)^{(λ|2λ)} χ(e^{2λ})``; when χ(e^{2λ}) = ±i the phase is divided by
    ``i`` so the result is again ``±1``.
    """
    v = lam.vector if isinstance(lam, CosetVector) else tuple(lam)
    cd = chi.cd
    two = tuple(2 * Fraction(x) for x in v)
    try:
        c = cd.lattice.coefficients(two)
    except Exception as exc:
        raise NotHalfLattice("2λ is not in L₋") from exc
    if any(x.denominator != 1 for x in c):
        raise NotHalfLattice("2λ is not in L₋")
    k = _exp_eval(chi, [int(x) for x in c])
    if k % 2:
        k -= 1
    sign = 1 if k % 4 == 0 else -1
    e = 2 * cd.lattice.norm(v)
    return sign * (-1 if int(e) % 2 else 1)


def solve_char_equation(chi: CentralCharacter, psi: CentralCharacter) -> list[CosetVector]:
    """All μ + L₋ in L₋*/L₋ with χ^{(μ)} = ψ."""
    Lm = chi.cd.lattice
    if Lm.rank == 0:
        return [Lm.coset((0,) * Lm.dim)] if chi == psi else []
    return [mu for mu in dual_quotient(Lm).elements() if twist(chi, mu) == psi]


def verify_group_model(cd: CentralData, max_rank: int = 8) -> None:
    """Brute-force check of associativity, center and forced squares.

    Skipped (returns silently) above ``max_rank`` since the group has
    ``2^{r+1}`` elements.
    """
    r = cd.rank
    if r == 0 or r > max_rank:
        return
    elems = [(s, v) for s in (1, -1) for v in itertools.product((0, 1), repeat=r)]
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    for a, b, c in itertools.product([(1, v) for v in basis] + [(1, (0,) * r)], repeat=3):
        assert cd.multiply(cd.multiply(a, b), c) == cd.multiply(a, cd.multiply(b, c)), "not associative"
    center = {v for s, v in elems if all(cd.multiply((1, v), (1, w)) == cd.multiply((1, w), (1, v)) for w in basis)}
    span = {tuple(sum(c * z[i] for c, z in zip(cs, cd.generators)) % 2 for i in range(r))
            for cs in itertools.product((0, 1), repeat=len(cd.generators))}
    assert center == span, "center mismatch"
    for z, f in zip(cd.generators, cd.forced):
        assert cd.multiply((1, z), (1, z)) == (f, (0,) * r), "forced square mismatch"
