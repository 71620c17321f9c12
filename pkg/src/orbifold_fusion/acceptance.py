"""Acceptance fixtures shared by ``selftest`` and the test suite.

Each check returns a :class:`Result`; ``details`` lists one line per
sub-check so failures say exactly which value disagreed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .builders import build_example
from .characters import c_chi, char_eval, character_from_name, prime, solve_char_equation, twist
from .fusion import compute_R_sigma, fuse_raw, fusion_table, global_dimension, qdim, twisted_qdim_square, verify_ring
from .lattice import fixed_discriminant_count
from .modules import Orbifold, Twisted, Type1, Type2, fold
from .report import load_orbifold


@dataclass
class Result:
    number: int
    title: str
    details: list[tuple[bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.details) and all(p for p, _ in self.details)

    def check(self, cond: bool, what: str) -> None:
        self.details.append((bool(cond), what))

    def line(self) -> str:
        bad = [w for p, w in self.details if not p]
        tail = "" if not bad else " | failed: " + "; ".join(bad)
        return f"criterion {self.number} {'PASS' if self.ok else 'FAIL'}: {self.title}{tail}"


_cache: dict[str, Orbifold] = {}


def example(spec: str) -> Orbifold:
    if spec not in _cache:
        _cache[spec] = load_orbifold(build_example(spec))
    return _cache[spec]


def _eq(res: Result, got, want, what: str) -> None:
    res.check(got == want, f"{what} = {got}, expected {want}")


# -- 1-4: the A2 + A2 permutation orbifold ---------------------------------


def criterion_1() -> Result:
    res = Result(1, "A2+A2 twisted quantum dimension")
    orb = example("a2-double")
    r = compute_R_sigma(orb)
    _eq(res, twisted_qdim_square(orb), 3, "qdim^2")
    _eq(res, r.orbit_count, 2, "|R|")
    _eq(res, r.m_count, 1, "|R cap M|")
    rho1 = orb.L_minus.coset(orb.L_minus.combine((Fraction(1, 6), Fraction(1, 3))))
    reps = {o[0] for o in r.orbits}
    _eq(res, reps, {orb.zero("-"), rho1.scale(2)}, "R orbit representatives")
    return res


def criterion_2() -> Result:
    res = Result(2, "A2+A2 paper label inventory")
    counts = {k: len(v) for k, v in example("a2-double").enumerate_labels("paper").items()}
    _eq(res, counts, {"type1": 12, "type2": 24, "twisted": 12}, "counts")
    return res


def criterion_3() -> Result:
    res = Result(3, "A2+A2 character table and laws")
    orb = example("a2-double")
    names = sorted(c.name for c in orb.characters)
    _eq(res, names, ["chi00", "chi01", "chi10", "chi11"], "characters")
    Lm = orb.L_minus
    for i in (0, 1):
        for j in (0, 1):
            chi = character_from_name(orb.central, f"chi{i}{j}")
            for c1, c2 in ((1, 0), (0, 1), (1, 1)):
                want = (-1) ** (c1 * j + c2 * i)
                _eq(res, char_eval(chi, (c1, c2)), want, f"chi{i}{j}(e^({c1}b1+{c2}b2))")
            for b1 in (0, 1):
                for b2 in (0, 1):
                    mu = Lm.combine((Fraction(b1, 2), Fraction(b2, 2)))
                    tw = twist(chi, mu).name
                    _eq(res, tw, f"chi{(i + b1) % 2}{(j + b2) % 2}", f"chi{i}{j} twisted by ({b1},{b2})/2")
                    want = (char_eval(chi, (b1, 0))) * (char_eval(chi, (0, b2)))
                    _eq(res, c_chi(chi, mu), want, f"c_chi{i}{j}(({b1},{b2})/2)")
            _eq(res, prime(chi), chi, f"chi{i}{j}'")
    return res


def criterion_4() -> Result:
    res = Result(4, "A2+A2 twisted fusion goldens")
    orb = example("a2-double")
    Lm = orb.L_minus
    rho1 = Lm.coset(Lm.combine((Fraction(1, 6), Fraction(1, 3))))
    rho2 = Lm.coset(Lm.combine((Fraction(1, 3), Fraction(1, 6))))
    lam = orb.zero("+")
    chi00 = character_from_name(orb.central, "chi00")
    goldens = {"chi10": (rho1, rho1.scale(3)), "chi01": (rho2, rho2.scale(3)), "chi11": (rho1 + rho2.scale(5), rho1 + rho2)}
    for name, (paired, signed) in goldens.items():
        other = character_from_name(orb.central, name)
        for e0 in (1, -1):
            for e1 in (1, -1):
                got = fuse_raw(orb, Twisted(lam, chi00, e0), Twisted(lam, other, e1))
                want = {Type1(lam, fold(paired)): 1, Type2(lam, signed, e0 * e1): 1}
                _eq(res, dict(got.terms), want, f"T(chi00,{e0:+d}) x T({name},{e1:+d})")
                _eq(res, got.total_qdim(orb), {1: 3}, f"qdim of T(chi00) x T({name})")
    return res


# -- 5, 8: permutation doubles ----------------------------------------------


def criterion_5() -> Result:
    res = Result(5, "rank-1 permutation doubles against |K*/K|")
    for k in range(1, 7):
        orb = example(f"rank1-double:{k}")
        _eq(res, twisted_qdim_square(orb), 2 * k, f"k={k} qdim^2")
        _eq(res, twisted_qdim_square(orb), abs(la.determinant([[2 * k]])), f"k={k} |K*/K|")
    _eq(res, twisted_qdim_square(example("perm-double:[[2,-1],[-1,2]]")), abs(la.determinant([[2, -1], [-1, 2]])),
        "A2 double qdim^2 vs |K*/K|")
    return res


def criterion_8() -> Result:
    res = Result(8, "|R cap M| = 1 exactly when every Gram row has an odd entry")
    _eq(res, compute_R_sigma(example("perm-double:[[2,-1],[-1,2]]")).m_count, 1, "K=A2 |R cap M|")
    m = compute_R_sigma(example("perm-double:[[2,0],[0,2]]")).m_count
    res.check(m != 1, f"K=diag(2,2) |R cap M| = {m}, expected != 1")
    return res


# -- 6, 7: A_n with the diagram flip -----------------------------------------


def _untwisted_classes(orb: Orbifold) -> int:
    return sum(1 for c in orb.canonical_classes if c.kind != "twisted")


def criterion_6() -> Result:
    res = Result(6, "A_n, n odd")
    for n in (3, 5, 7, 9):
        l = (n - 1) // 2
        orb = example(f"an-dynkin:{n}")
        r = compute_R_sigma(orb)
        _eq(res, twisted_qdim_square(orb), l + 2 if l % 2 == 0 else l + 1, f"n={n} qdim^2")
        _eq(res, r.orbit_count, l // 2 + 2, f"n={n} |R|")
        _eq(res, r.m_count, 2, f"n={n} |R cap M|")
        _eq(res, _untwisted_classes(orb), l + 4, f"n={n} untwisted modules")
    return res


def criterion_7() -> Result:
    res = Result(7, "A_n, n even")
    for n in (2, 4, 6, 8):
        l = n // 2
        orb = example(f"an-dynkin:{n}")
        _eq(res, orb.setting.core_index, 2, f"n={n} index of Qbar")
        _eq(res, len(orb.setting.transversal), 2 ** (l - 1), f"n={n} |Qbar/L|")
        _eq(res, twisted_qdim_square(orb), 2 * l if l % 2 == 0 else 2 * l - 1, f"n={n} qdim^2")
    return res


# -- 9: property suites -----------------------------------------------------


def criterion_9(seed: int = 0) -> Result:
    res = Result(9, "property suites")
    rng = random.Random(seed)
    specs = ("a2-double", "an-dynkin:3", "rank1-double:3", "neg-identity:[[2]]", "an-dynkin:4")
    for spec in specs:
        orb = example(spec)
        s, eps = orb.setting, orb.cocycle
        bad = 0
        for _ in range(200):
            a = tuple(rng.randint(-4, 4) for _ in range(s.n))
            b = tuple(rng.randint(-4, 4) for _ in range(s.n))
            if eps(a, a) != (-1) ** (la.bilinear(s.gram, a, a) // 2 % 2):
                bad += 1
            if eps(a, b) * eps(b, a) != (-1) ** (la.bilinear(s.gram, a, b) % 2):
                bad += 1
            sa, sb = tuple(int(x) for x in s.apply_sigma(a)), tuple(int(x) for x in s.apply_sigma(b))
            ab = tuple(x + y for x, y in zip(a, b))
            if orb.eta_of(ab) != orb.eta_of(a) * orb.eta_of(b) * eps(a, b) * eps(sa, sb):
                bad += 1
        _eq(res, bad, 0, f"{spec} cocycle/eta violations")
        lp = [tuple(int(x) for x in s.Q.coefficients(v)) for v in s.L_plus.basis]
        _eq(res, [orb.eta_of(v) for v in lp], [1] * len(lp), f"{spec} eta on L+")
        for chi in orb.characters:
            _eq(res, prime(prime(chi)), chi, f"{spec} {chi.name}''")
            base = set(solve_char_equation(chi, chi))
            res.check(orb.zero("-") in base, f"{spec} 0 solves chi^(mu) = chi for {chi.name}")
            for psi in orb.characters:
                sols = solve_char_equation(chi, psi)
                if not sols:
                    continue
                coset = {sols[0] + m for m in base}
                res.check(coset == set(sols), f"{spec} solutions for ({chi.name},{psi.name}) form a coset")
                _eq(res, len(sols), len(base), f"{spec} |R^({chi.name},{psi.name})|")
    for _ in range(20):
        A = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
        d = la.smith_normal_form(A)
        _eq(res, la.matmul(la.matmul(d.U, A), d.V), d.S, "U A V = S")
        K = la.integer_kernel(A)
        if K and K[0]:
            res.check(all(x == 0 for row in la.matmul(A, K) for x in row), f"A K = 0 for {A}")
        _eq(res, len(K[0]) if K else 0, 3 - la.rank(A), f"kernel rank of {A}")
        if la.determinant(A) != 0:
            _eq(res, la.matmul(A, la.rational_inverse(A)), la.identity(3), f"A A^-1 for {A}")
    for spec in ("a2-double", "an-dynkin:5", "neg-identity:[[2]]"):
        orb = example(spec)
        els = list(orb.D_minus.elements())
        for chi in orb.characters:
            for a in els:
                res.check(twist(twist(chi, a), -a) == chi, f"{spec} twist by {a} then back")
                _eq(res, prime(twist(chi, a)), twist(prime(chi), -a), f"{spec} ({chi.name}^(mu))'")
    for spec in ("a2-double", "neg-identity:[[2]]", "an-dynkin:3"):
        table = fusion_table(example(spec), "canonical")
        rep = verify_ring(table, samples=100)
        for name, (ok, detail) in rep.checks.items():
            res.check(ok, f"{spec} {name} {detail}")
    return res


# -- 10: global dimension ----------------------------------------------------


def criterion_10() -> Result:
    res = Result(10, "global dimension in canonical mode")
    for spec in ("a2-double", "neg-identity:[[2]]", "an-dynkin:3"):
        orb = example(spec)
        N = abs(la.determinant(orb.setting.gram))
        F = fixed_discriminant_count(orb.setting)
        classes = orb.canonical_classes
        _eq(res, global_dimension(orb, classes), 4 * N, f"{spec} sum of qdim^2")
        counts = tuple(sum(1 for c in classes if c.kind == k) for k in ("type1", "type2", "twisted"))
        _eq(res, counts, ((N - F) // 2, 2 * F, 2 * F), f"{spec} class counts")
    _eq(res, tuple(sum(1 for c in example("a2-double").canonical_classes if c.kind == k)
                   for k in ("type1", "type2", "twisted")), (3, 6, 6), "A2+A2 class counts")
    return res


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all() -> list[Result]:
    return [c() for c in CRITERIA]
