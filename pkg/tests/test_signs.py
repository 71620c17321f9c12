import random

import pytest

from orbifold_fusion import linalg as la
from orbifold_fusion.signs import NonIntegralExponent, build_cocycle, pi_sign

from conftest import EXAMPLES


def _pairs(n, count=200, seed=1):
    rng = random.Random(seed)
    for _ in range(count):
        yield (tuple(rng.randint(-5, 5) for _ in range(n)), tuple(rng.randint(-5, 5) for _ in range(n)),
               tuple(rng.randint(-5, 5) for _ in range(n)))


@pytest.mark.parametrize("spec", EXAMPLES)
def test_cocycle_laws(orb_of, spec):
    o = orb_of(spec)
    G, eps = o.setting.gram, o.cocycle
    for a, b, c in _pairs(o.setting.n):
        assert eps(a, a) == (-1) ** (la.bilinear(G, a, a) // 2)
        assert eps(a, b) * eps(b, a) == (-1) ** la.bilinear(G, a, b)
        ab = tuple(x + y for x, y in zip(a, b))
        bc = tuple(x + y for x, y in zip(b, c))
        # bimultiplicative, hence a 2-cocycle
        assert eps(ab, c) == eps(a, c) * eps(b, c)
        assert eps(a, b) * eps(ab, c) == eps(b, c) * eps(a, bc)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_eta_relation(orb_of, spec):
    o = orb_of(spec)
    s, eps = o.setting, o.cocycle
    for a, b, _ in _pairs(s.n, seed=2):
        sa = tuple(int(x) for x in s.apply_sigma(a))
        sb = tuple(int(x) for x in s.apply_sigma(b))
        ab = tuple(x + y for x, y in zip(a, b))
        assert o.eta_of(ab) == o.eta_of(a) * o.eta_of(b) * eps(a, b) * eps(sa, sb)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_eta_trivial_on_fixed_lattice(orb_of, spec):
    o = orb_of(spec)
    s = o.setting
    rng = random.Random(3)
    basis = [tuple(int(x) for x in s.Q.coefficients(v)) for v in s.L_plus.basis]
    for v in basis:
        assert o.eta_of(v) == 1
    for _ in range(50):
        ks = [rng.randint(-3, 3) for _ in basis]
        v = tuple(sum(k * b[i] for k, b in zip(ks, basis)) for i in range(s.n))
        assert o.eta_of(v) == 1


def test_cocycle_is_deterministic(orb_of):
    s = orb_of("a2-double").setting
    assert build_cocycle(s.Q).B == build_cocycle(s.Q).B


def test_pi_sign():
    assert pi_sign(1, 1) == -1
    assert pi_sign(2, 3) == 1
    with pytest.raises(NonIntegralExponent):
        pi_sign("1/2", 1)
