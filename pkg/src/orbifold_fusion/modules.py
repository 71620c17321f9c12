"""Labels of irreducible orbifold modules and their equivalence classes.

Three families:

* ``Type1(lam, mu)``        lam in L+*/L+, mu in L-*/L- with 2mu not in L-
* ``Type2(lam, mu, sign)``  as above with 2mu in L-
* ``Twisted(lam, chi, sign)`` lam in (pi+Q)* read modulo L+, chi a central character

Untwisted labels also require ``lam + mu`` to lie in the dual of the working
lattice.  Type-1 labels always store the representative of ``{mu, -mu}`` with
the smaller sort key.

Two enumeration policies are offered.  ``"paper"`` lists parameter labels;
``"canonical"`` merges labels whose defining direct sums coincide after a
base-point shift by a coset representative of Qbar/L.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

from . import linalg as la
from .characters import (
    char_eval_exponent,
    CentralCharacter,
    c_chi,
    central_data,
    enumerate_characters,
    prime,
    twist,
    verify_group_model,
)
from .lattice import CosetVector, OrbifoldSetting, QuotientGroup, dual_quotient, quotient
from .signs import build_cocycle, build_eta

MODES = ("paper", "canonical")


def _sign_key(s: int) -> int:
    return 0 if s == 1 else 1


def sign_str(s: int) -> str:
    return "+" if s == 1 else "-"


def fold(mu: CosetVector) -> CosetVector:
    neg = -mu
    return min(mu, neg, key=CosetVector.sort_key)


@dataclass(frozen=True)
class Type1:
    lam: CosetVector
    mu: CosetVector
    kind = "type1"

    def sort_key(self):
        return (0, self.lam.sort_key(), self.mu.sort_key())


@dataclass(frozen=True)
class Type2:
    lam: CosetVector
    mu: CosetVector
    sign: int
    kind = "type2"

    def sort_key(self):
        return (1, self.lam.sort_key(), self.mu.sort_key(), _sign_key(self.sign))


@dataclass(frozen=True)
class Twisted:
    lam: CosetVector
    chi: CentralCharacter
    sign: int
    kind = "twisted"

    def sort_key(self):
        return (2, self.lam.sort_key(), self.chi.exps, _sign_key(self.sign))


ModuleLabel = Union[Type1, Type2, Twisted]


def label_key(x: ModuleLabel):
    return x.sort_key()


@dataclass(frozen=True)
class EquivalenceClass:
    representative: ModuleLabel
    members: tuple[ModuleLabel, ...] = field(repr=False)

    @property
    def kind(self) -> str:
        return self.representative.kind


class Orbifold:
    """Everything derived from one setting: signs, characters, label sets."""

    def __init__(self, setting: OrbifoldSetting):
        self.setting = s = setting
        self.cocycle = build_cocycle(s.Q)
        self.eta = build_eta(s, self.cocycle)
        self.central = central_data(s, self.cocycle, self.eta)
        verify_group_model(self.central)
        self.characters = enumerate_characters(self.central)
        self.L_plus = s.L_plus
        self.L_minus = s.L_minus
        self.D_plus: QuotientGroup = dual_quotient(s.L_plus)
        self.D_minus: QuotientGroup = dual_quotient(s.L_minus)
        self.D_Q: QuotientGroup = dual_quotient(s.Q)
        self.notes: list[str] = []

    # -- small helpers -----------------------------------------------------

    def zero(self, which: str) -> CosetVector:
        lat = self.L_plus if which == "+" else self.L_minus
        return lat.coset((0,) * self.setting.n)

    def eta_of(self, gamma) -> int:
        return self.eta(tuple(int(x) for x in gamma))

    def untwisted_ok(self, lam: CosetVector, mu: CosetVector) -> bool:
        v = tuple(Fraction(a) + Fraction(b) for a, b in zip(lam.vector, mu.vector))
        return self.setting.Q.dual_contains(v)

    def twisted_ok(self, lam: CosetVector) -> bool:
        """Membership in the dual of the projected lattice, as used by parameter labels."""
        return self.setting.twisted_weights.contains(lam.vector)

    @cached_property
    def _compat_tests(self) -> list[tuple[tuple, tuple[int, ...], int]]:
        # (α₊, 2α₋ in L₋ coordinates, exponent of η(α)ε(σα,α) i^{(α|σα)})
        s = self.setting
        vecs = [g for g in s.transversal if any(g)] + list(la.columns(la.identity(s.n)))
        out = []
        for a in vecs:
            sa = s.apply_sigma(a)
            two_minus = tuple(x - y for x, y in zip(a, sa))
            coords = tuple(int(c) for c in self.L_minus.coefficients(two_minus)) if self.L_minus.rank else ()
            sign = self.eta_of(a) * self.cocycle(sa, a)
            out.append((s.plus_part(a), coords, ((0 if sign == 1 else 2) + la.bilinear(s.gram, a, sa)) % 4))
        return out

    def compatible(self, lam: CosetVector, chi: CentralCharacter) -> bool:
        """Whether (λ, χ) can occur together in a twisted module.

        Twisted vertex operators force, for every α in the working lattice,
        χ(e^{2α₋}) = η(α) ε(σα, α) (-1)^{(α|σα)/2} exp(-2πi (λ|α₊)).
        """
        for plus, coords, t in self._compat_tests:
            p = 4 * self.L_plus.pair(lam.vector, plus)
            if p.denominator != 1:
                return False
            if (char_eval_exponent(chi, coords) + int(p) - t) % 4:
                return False
        return True

    @cached_property
    def shifts(self) -> list[tuple[tuple, CosetVector, CosetVector]]:
        """Nonzero Qbar/L representatives with their ± parts as cosets."""
        s = self.setting
        out = []
        for g in s.transversal:
            if any(g):
                out.append((g, self.L_plus.coset(s.plus_part(g)), self.L_minus.coset(s.minus_part(g))))
        return out

    def make_untwisted(self, lam: CosetVector, mu: CosetVector, sign: int | None = None) -> ModuleLabel:
        if mu.twice_in_modulus():
            return Type2(lam, mu, 1 if sign is None else sign)
        return Type1(lam, fold(mu))

    # -- enumeration -------------------------------------------------------

    @cached_property
    def twisted_lambdas_paper(self) -> list[CosetVector]:
        s = self.setting
        if not s.projected.basis:
            return [self.zero("+")]
        Q = quotient(s.twisted_weights, s.twisted_weight_modulus)
        return [self.L_plus.coset(x.vector) for x in Q.elements()]

    @cached_property
    def twisted_pairs(self) -> list[tuple[CosetVector, CentralCharacter]]:
        return [(l, c) for l in self.D_plus.elements() for c in self.characters if self.compatible(l, c)]

    @cached_property
    def twisted_lambdas(self) -> list[CosetVector]:
        out = []
        for l, _ in self.twisted_pairs:
            if l not in out:
                out.append(l)
        return out

    @cached_property
    def untwisted_labels(self) -> tuple[list[Type1], list[Type2]]:
        t1, t2 = [], []
        mus = self.D_minus.elements()
        for lam in self.D_plus.elements():
            for mu in mus:
                if not self.untwisted_ok(lam, mu):
                    continue
                if mu.twice_in_modulus():
                    t2 += [Type2(lam, mu, 1), Type2(lam, mu, -1)]
                elif fold(mu) == mu:
                    t1.append(Type1(lam, mu))
        return t1, t2

    @property
    def paper_sign_folded(self) -> bool:
        """Paper labels list one twisted sign per (λ, χ) once shifts exist.

        With Qbar ≠ L the summand V_{λ+L₊} ⊗ T_χ occurs in twisted modules of
        both signs, so the sign does not separate (λ, χ) labels.
        """
        return len(self.setting.transversal) > 1

    def enumerate_labels(self, mode: str = "paper") -> dict[str, list[ModuleLabel]]:
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        t1, t2 = self.untwisted_labels
        if mode == "paper":
            signs = (1,) if self.paper_sign_folded else (1, -1)
            tw = [Twisted(l, c, e) for l in self.twisted_lambdas_paper for c in self.characters for e in signs]
        else:
            tw = [Twisted(l, c, e) for l, c in self.twisted_pairs for e in (1, -1)]
        return {"type1": t1, "type2": t2, "twisted": sorted(tw, key=label_key)}

    # -- canonical moves ---------------------------------------------------

    def pi(self, a: CosetVector, b: CosetVector) -> int:
        """Sign of V_a^ε ⊠ V_b^ε' = V_{a+b}^{εε'π} for 2a, 2b in L₋.

        The ± convention is the one fixed by the action on twisted modules, so
        π = c_χ(b) c_{χ^(b)}(a) c_χ(a+b), whatever the reference χ.
        """
        if not self.characters:
            return 1
        chi = self.characters[0]
        return c_chi(twist(chi, b.vector), a.vector) * c_chi(chi, b.vector) * c_chi(chi, (a + b).vector)

    @cached_property
    def current_signs(self) -> dict[tuple, int]:
        """Sign s_g of the summand V_{g₊+L₊} ⊗ V_{g₋+L₋}^{s_g} of the orbifold.

        Every such summand has integral weight, so fusing it with a twisted
        summand may not change the weight mod 1.  The top of T_χ^- sits 1/2
        above that of T_χ^+, which pins s_g; the value must not depend on the
        twisted pair used.
        """
        s = self.setting
        pairs = self.twisted_pairs
        out = {}
        for g in s.transversal:
            gp, gm = s.plus_part(g), self.L_minus.coset(s.minus_part(g))
            vals = set()
            for lam, chi in pairs:
                w = 2 * self.L_plus.pair(lam.vector, gp) + self.L_plus.norm(gp)
                if w.denominator != 1:
                    raise ArithmeticError(f"weight shift {w / 2} of {g} is not a half-integer")
                vals.add((-1 if int(w) % 2 else 1) * c_chi(chi, gm.vector))
            if len(vals) != 1:
                raise ArithmeticError(f"summand sign of {g} depends on the twisted pair")
            out[g] = vals.pop()
        return out

    def current(self, g) -> Type2:
        s = self.setting
        return Type2(self.L_plus.coset(s.plus_part(g)), self.L_minus.coset(s.minus_part(g)), self.current_signs[g])

    def moves(self, x: ModuleLabel) -> Iterable[ModuleLabel]:
        """Products of ``x`` with the nonzero summands of the orbifold itself."""
        for g, gp, gm in self.shifts:
            sg = self.current_signs[g]
            if isinstance(x, Type1):
                yield Type1(x.lam + gp, fold(x.mu + gm))
            elif isinstance(x, Type2):
                yield Type2(x.lam + gp, x.mu + gm, x.sign * sg * self.pi(gm, x.mu))
            else:
                yield Twisted(x.lam + gp, twist(x.chi, gm.vector), x.sign * sg * c_chi(x.chi, gm.vector))

    @cached_property
    def canonical_classes(self) -> list[EquivalenceClass]:
        """Orbits of the admissible labels under the summands of the orbifold.

        The summands form a group under fusion, so orbits are well defined.
        Each class is represented by its least member.
        """
        labels = sorted((x for fam in self.enumerate_labels("canonical").values() for x in fam), key=label_key)
        seen: set = set()
        out = []
        for x in labels:
            if x in seen:
                continue
            orbit = {x, *self.moves(x)}
            if any(hasattr(y, "sign") and replace(y, sign=-y.sign) in orbit for y in orbit):
                self.notes.append(f"orbit of {x} contains both signs of a label")
            seen |= orbit
            out.append(EquivalenceClass(x, tuple(sorted(orbit, key=label_key))))
        return out

    @cached_property
    def class_of(self) -> dict[ModuleLabel, ModuleLabel]:
        return {m: c.representative for c in self.canonical_classes for m in c.members}

    def equivalence_classes(self, mode: str = "paper") -> list[EquivalenceClass]:
        if mode == "canonical":
            return self.canonical_classes
        labels = [x for fam in self.enumerate_labels("paper").values() for x in fam]
        return [EquivalenceClass(x, (x,)) for x in labels]

    def normalize(self, x: ModuleLabel) -> ModuleLabel:
        """Class representative of a label produced by a fusion rule."""
        try:
            return self.class_of[x]
        except KeyError:
            raise ValueError(f"{x} is not an admissible label of this orbifold") from None

    # -- special labels ----------------------------------------------------

    def vacuum(self) -> Type2:
        return Type2(self.zero("+"), self.zero("-"), 1)

    def contragredient(self, x: ModuleLabel) -> ModuleLabel:
        if isinstance(x, Type1):
            return Type1(-x.lam, fold(-x.mu))
        if isinstance(x, Type2):
            e = 2 * self.L_minus.norm(x.mu.vector)
            return Type2(-x.lam, -x.mu, x.sign * (-1 if int(e) % 2 else 1))
        return Twisted(-x.lam, prime(x.chi), x.sign)


def build_orbifold(gram, sigma, name: str | None = None) -> Orbifold:
    return Orbifold(OrbifoldSetting(gram, sigma, name))


def enumerate_paper_labels(orb: Orbifold) -> dict[str, list[ModuleLabel]]:
    return orb.enumerate_labels("paper")


def equivalence_classes(orb: Orbifold, mode: str = "paper") -> list[EquivalenceClass]:
    return orb.equivalence_classes(mode)


def vacuum(orb: Orbifold) -> Type2:
    return orb.vacuum()


def contragredient(orb: Orbifold, x: ModuleLabel) -> ModuleLabel:
    return orb.contragredient(x)
