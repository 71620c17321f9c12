"""Quantum dimensions, fusion products and fusion-ring verification."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

from .characters import CentralCharacter, c_chi, prime, solve_char_equation, twist
from .lattice import CosetVector
from .modules import (
    EquivalenceClass,
    ModuleLabel,
    Orbifold,
    Twisted,
    Type1,
    Type2,
    fold,
    label_key,
)


class VerificationFailure(AssertionError):
    def __init__(self, report: "RingReport"):
        self.report = report
        super().__init__(report.first_failure())


class SettingMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact square roots


def surd(n: int) -> tuple[int, int]:
    """``n = k*k*s`` with ``s`` squarefree; returns ``(k, s)``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    k, s, p = 1, n, 2
    while p * p <= s:
        while s % (p * p) == 0:
            s //= p * p
            k *= p
        p += 1
    return k, s


def surd_sum(terms: Iterable[tuple[int, int]]) -> dict[int, int]:
    """Σ mult·√square as ``{squarefree part: integer coefficient}``."""
    out: Counter = Counter()
    for mult, square in terms:
        k, s = surd(square)
        if k:
            out[s] += mult * k
    return {s: c for s, c in sorted(out.items()) if c}


@dataclass(frozen=True)
class QDim:
    square: int

    def __str__(self) -> str:
        r = isqrt(self.square)
        return str(r) if r * r == self.square else f"sqrt({self.square})"

    def as_surd(self) -> dict[int, int]:
        return surd_sum([(1, self.square)])


@dataclass(frozen=True)
class RSigma:
    orbits: tuple[tuple[CosetVector, ...], ...]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def m_count(self) -> int:
        return sum(1 for o in self.orbits if o[0].twice_in_modulus())


def compute_R_sigma(orb: Orbifold) -> RSigma:
    chi = orb.characters[0]
    sols = solve_char_equation(chi, chi)
    seen, orbits = set(), []
    for mu in sols:
        if mu in seen:
            continue
        o = tuple(sorted({mu, -mu}, key=CosetVector.sort_key))
        seen.update(o)
        orbits.append(o)
    return RSigma(tuple(orbits))


def twisted_qdim_square(orb: Orbifold) -> int:
    if "_tw_sq" not in orb.__dict__:
        r = compute_R_sigma(orb)
        orb.__dict__["_tw_sq"] = 2 * r.orbit_count - r.m_count
    return orb.__dict__["_tw_sq"]


def qdim(orb: Orbifold, x: ModuleLabel) -> QDim:
    if isinstance(x, Type1):
        return QDim(4)
    if isinstance(x, Type2):
        return QDim(1)
    return QDim(twisted_qdim_square(orb))


def global_dimension(orb: Orbifold, classes: Iterable[EquivalenceClass]) -> int:
    return sum(qdim(orb, c.representative).square for c in classes)


# ---------------------------------------------------------------------------
# fusion products


@dataclass(frozen=True)
class FusionSum:
    terms: tuple[tuple[ModuleLabel, int], ...]
    rule: str = field(default="", compare=False)

    @classmethod
    def of(cls, labels: Iterable[ModuleLabel], rule: str = "") -> "FusionSum":
        c = Counter(labels)
        return cls(tuple(sorted(c.items(), key=lambda t: label_key(t[0]))), rule)

    def labels(self) -> list[ModuleLabel]:
        return [x for x, m in self.terms for _ in range(m)]

    def multiplicity(self, x: ModuleLabel) -> int:
        return dict(self.terms).get(x, 0)

    def total_qdim(self, orb: Orbifold) -> dict[int, int]:
        return surd_sum((m, qdim(orb, x).square) for x, m in self.terms)

    def __len__(self) -> int:
        return sum(m for _, m in self.terms)


def _pi(orb: Orbifold, a: CosetVector, b: CosetVector) -> int:
    return orb.pi(a, b)


def _half_norm_sign(orb: Orbifold, mu: CosetVector) -> int:
    e = 2 * orb.L_minus.norm(mu.vector)
    return -1 if int(e) % 2 else 1


def _pair_terms(orb: Orbifold, lam: CosetVector, s: CosetVector, d: CosetVector) -> list[ModuleLabel]:
    out = []
    for v in (s, d):
        if v.twice_in_modulus():
            out += [Type2(lam, v, 1), Type2(lam, v, -1)]
        else:
            out.append(Type1(lam, fold(v)))
    return out


def _fr6(orb: Orbifold, a: Twisted, b: Twisted) -> list[ModuleLabel]:
    lam = orb.L_plus.coset(tuple(Fraction(x) + Fraction(y) for x, y in zip(a.lam.vector, b.lam.vector)))
    out, seen = [], set()
    for mu in solve_char_equation(a.chi, prime(b.chi)):
        if mu in seen:
            continue
        seen.update({mu, -mu})
        if mu.twice_in_modulus():
            e = a.sign * b.sign * c_chi(a.chi, mu) * _half_norm_sign(orb, mu)
            out.append(Type2(lam, mu, e))
        else:
            out.append(Type1(lam, fold(mu)))
    return out


def _tw_lam(orb: Orbifold, lam: CosetVector, tw: CosetVector) -> CosetVector:
    return orb.L_plus.coset(tuple(Fraction(x) + Fraction(y) for x, y in zip(lam.vector, tw.vector)))


def fuse_raw(orb: Orbifold, a: ModuleLabel, b: ModuleLabel) -> FusionSum:
    """The product read off the fusion rules, with no class normalisation."""
    order = {"type1": 0, "type2": 1, "twisted": 2}
    if order[a.kind] > order[b.kind]:
        a, b = b, a
    if isinstance(a, Type1) and isinstance(b, Twisted):
        chi = twist(b.chi, a.mu)
        lam = _tw_lam(orb, a.lam, b.lam)
        return FusionSum.of([Twisted(lam, chi, 1), Twisted(lam, chi, -1)], "fr1")
    if isinstance(a, Type2) and isinstance(b, Twisted):
        e = a.sign * b.sign * c_chi(b.chi, a.mu)
        return FusionSum.of([Twisted(_tw_lam(orb, a.lam, b.lam), twist(b.chi, a.mu), e)], "fr4")
    if isinstance(a, Type1) and isinstance(b, Type2):
        return FusionSum.of([Type1(a.lam + b.lam, fold(a.mu + b.mu))], "fr2")
    if isinstance(a, Type2) and isinstance(b, Type2):
        e = a.sign * b.sign * _pi(orb, a.mu, b.mu)
        return FusionSum.of([Type2(a.lam + b.lam, a.mu + b.mu, e)], "fr3")
    if isinstance(a, Type1) and isinstance(b, Type1):
        return FusionSum.of(_pair_terms(orb, a.lam + b.lam, a.mu + b.mu, a.mu - b.mu), "fr5")
    return FusionSum.of(_fr6(orb, a, b), "fr6")


def fuse(orb: Orbifold, a: ModuleLabel, b: ModuleLabel, normalize: bool = False) -> FusionSum:
    raw = fuse_raw(orb, a, b)
    if not normalize:
        return raw
    return FusionSum.of((orb.normalize(x) for x in raw.labels()), raw.rule)


# ---------------------------------------------------------------------------
# base-level products over the -1 eigenlattice alone


@dataclass(frozen=True)
class BasePaired:
    mu: CosetVector


@dataclass(frozen=True)
class BaseSigned:
    mu: CosetVector
    sign: int


@dataclass(frozen=True)
class BaseTwisted:
    chi: CentralCharacter
    sign: int


BaseLabel = Union[BasePaired, BaseSigned, BaseTwisted]


def restrict(x: ModuleLabel) -> BaseLabel:
    """The ``-1`` eigenlattice factor of the summand at the base point."""
    if isinstance(x, Type1):
        return BasePaired(fold(x.mu))
    if isinstance(x, Type2):
        return BaseSigned(x.mu, x.sign)
    return BaseTwisted(x.chi, x.sign)


def base_fuse(orb: Orbifold, x: BaseLabel, y: BaseLabel) -> Counter:
    rank = {BasePaired: 0, BaseSigned: 1, BaseTwisted: 2}
    if rank[type(x)] > rank[type(y)]:
        x, y = y, x
    zero = orb.zero("+")
    if isinstance(x, BaseTwisted):
        terms = _fr6(orb, Twisted(zero, x.chi, x.sign), Twisted(zero, y.chi, y.sign))
        out = [restrict(t) for t in terms]
    elif isinstance(y, BaseTwisted):
        chi = twist(y.chi, x.mu)
        if isinstance(x, BasePaired):
            out = [BaseTwisted(chi, 1), BaseTwisted(chi, -1)]
        else:
            out = [BaseTwisted(chi, c_chi(y.chi, x.mu) * x.sign * y.sign)]
    elif isinstance(x, BaseSigned):
        out = [BaseSigned(x.mu + y.mu, x.sign * y.sign * _pi(orb, x.mu, y.mu))]
    elif isinstance(y, BaseSigned):
        out = [BasePaired(fold(x.mu + y.mu))]
    else:
        out = [restrict(t) for t in _pair_terms(orb, zero, x.mu + y.mu, x.mu - y.mu)]
    return Counter(out)


# ---------------------------------------------------------------------------
# tables and ring checks


@dataclass
class FusionTable:
    orb: Orbifold
    mode: str
    objects: list[ModuleLabel]
    products: dict[tuple[int, int], FusionSum]

    def product(self, a: ModuleLabel, b: ModuleLabel) -> FusionSum:
        idx = self.index
        return self.products[idx[a], idx[b]]

    @property
    def index(self) -> dict[ModuleLabel, int]:
        if not hasattr(self, "_index"):
            self._index = {x: i for i, x in enumerate(self.objects)}
        return self._index


def fusion_table(orb: Orbifold, mode: str = "paper") -> FusionTable:
    objects = [c.representative for c in orb.equivalence_classes(mode)]
    norm = mode == "canonical"
    products = {}
    for i, a in enumerate(objects):
        for j, b in enumerate(objects):
            products[i, j] = fuse(orb, a, b, normalize=norm)
    return FusionTable(orb, mode, objects, products)


@dataclass
class RingReport:
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(p for p, _ in self.checks.values())

    def first_failure(self) -> str:
        for name, (p, detail) in self.checks.items():
            if not p:
                return f"{name}: {detail}"
        return ""


def verify_ring(table: FusionTable, samples: int = 100, seed: int = 0, raise_on_failure: bool = False,
                associativity_limit: int = 40) -> RingReport:
    orb, objs = table.orb, table.objects
    rep = RingReport()
    n = len(objs)

    bad = next(((a, b) for (i, j), s in table.products.items() if i < j
                for a, b in [(objs[i], objs[j])] if s != table.products[j, i]), None)
    rep.checks["commutativity"] = (bad is None, "" if bad is None else f"{bad[0]} x {bad[1]}")

    vac = orb.vacuum()
    if table.mode == "canonical":
        vac = orb.class_of[vac]
    bad = next((x for x in objs if table.product(vac, x) != FusionSum.of([x])), None)
    rep.checks["unit"] = (bad is None, "" if bad is None else str(bad))

    bad = None
    for (i, j), s in table.products.items():
        want = surd_sum([(1, qdim(orb, objs[i]).square * qdim(orb, objs[j]).square)])
        if s.total_qdim(orb) != want:
            bad = (objs[i], objs[j])
            break
    rep.checks["qdim multiplicativity"] = (bad is None, "" if bad is None else f"{bad[0]} x {bad[1]}")

    if table.mode != "canonical":
        if raise_on_failure and not rep.ok:
            raise VerificationFailure(rep)
        return rep

    dual = {x: orb.normalize(orb.contragredient(x)) for x in objs}
    rng = random.Random(seed)
    triples = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(samples)]
    bad = None
    for i, j, k in triples:
        a, b, c = objs[i], objs[j], objs[k]
        if table.product(a, b).multiplicity(c) != table.product(a, dual[c]).multiplicity(dual[b]):
            bad = (a, b, c)
            break
    rep.checks["contragredient symmetry"] = (bad is None, "" if bad is None else " ; ".join(map(str, bad)))
    bad = next((x for x in objs if dual[dual[x]] != x), None)
    rep.checks["contragredient involution"] = (bad is None, "" if bad is None else str(bad))

    sub = objs if n <= associativity_limit else [objs[i] for i in sorted(rng.sample(range(n), associativity_limit))]
    bad = None
    for a, b, c in itertools.product(sub, repeat=3):
        left = Counter()
        for d, m in table.product(a, b).terms:
            for e, m2 in table.product(d, c).terms:
                left[e] += m * m2
        right = Counter()
        for d, m in table.product(b, c).terms:
            for e, m2 in table.product(a, d).terms:
                right[e] += m * m2
        if left != right:
            bad = (a, b, c)
            break
    rep.checks["associativity"] = (bad is None, "" if bad is None else " ; ".join(map(str, bad)))
    if raise_on_failure and not rep.ok:
        raise VerificationFailure(rep)
    return rep
