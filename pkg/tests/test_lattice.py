from fractions import Fraction

import pytest

from orbifold_fusion import linalg as la
from orbifold_fusion.builders import an_dynkin, permutation_double
from orbifold_fusion.lattice import (
    NotEven,
    NotInvolution,
    NotIsometry,
    NotPositiveDefinite,
    NotSymmetric,
    OrbifoldSetting,
    dual_quotient,
    fixed_discriminant_count,
)

from conftest import EXAMPLES


@pytest.mark.parametrize(
    "gram,sigma,exc",
    [
        ([[2, 1], [0, 2]], [[1, 0], [0, 1]], NotSymmetric),
        ([[3]], [[1]], NotEven),
        ([[2, 3], [3, 2]], [[1, 0], [0, 1]], NotPositiveDefinite),
        ([[2, 0], [0, 4]], [[0, 1], [1, 0]], NotIsometry),
        ([[2, 0], [0, 2]], [[0, 1], [-1, 0]], NotInvolution),
    ],
)
def test_invalid_settings_are_rejected(gram, sigma, exc):
    with pytest.raises(exc):
        OrbifoldSetting(gram, sigma)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_eigenlattices(orb_of, spec):
    s = orb_of(spec).setting
    for v in s.L_plus.basis:
        assert s.apply_sigma(v) == tuple(v)
    for v in s.L_minus.basis:
        assert s.apply_sigma(v) == tuple(-x for x in v)
    assert s.L_plus.rank + s.L_minus.rank == s.n
    # L = L+ ⊕ L- has finite index in Qbar, a power of two
    idx = len(s.transversal)
    assert idx & (idx - 1) == 0
    assert abs(la.determinant(la.transpose(s.L.basis))) == idx


@pytest.mark.parametrize("spec", EXAMPLES)
def test_even_core(orb_of, spec):
    s = orb_of(spec).setting
    for i in range(s.n):
        e = tuple(int(i == j) for j in range(s.n))
        assert la.bilinear(s.gram, e, s.apply_sigma(e)) % 2 == 0
    assert s.core_index & (s.core_index - 1) == 0


def test_an_even_core_index_two():
    for n in (2, 4, 6, 8):
        s = OrbifoldSetting(*an_dynkin(n))
        assert s.core_index == 2
        assert len(s.transversal) == 2 ** (n // 2 - 1)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_discriminant_order_is_determinant(orb_of, spec):
    s = orb_of(spec).setting
    for lat in (s.Q, s.L_plus, s.L_minus):
        if lat.rank:
            D = dual_quotient(lat)
            assert D.order == abs(la.determinant(lat.gram))
            assert len(D.elements()) == D.order


@pytest.mark.parametrize("spec", EXAMPLES)
def test_quotient_coordinates_roundtrip(orb_of, spec):
    o = orb_of(spec)
    for D in (o.D_plus, o.D_minus, o.D_Q):
        for x in D.elements():
            assert D.from_coords(D.coords(x)) == x


def test_M_is_elementary_two_group():
    s = OrbifoldSetting(*permutation_double([[2, -1], [-1, 2]]))
    assert all(d == 2 for d in s.M.invariants)
    for x in s.M.elements():
        assert x.scale(2).is_zero()


def test_coset_arithmetic():
    s = OrbifoldSetting(*permutation_double([[2, -1], [-1, 2]]))
    Lm = s.L_minus
    rho = Lm.coset(Lm.combine((Fraction(1, 6), Fraction(1, 3))))
    assert rho.scale(6).is_zero() and not rho.scale(3).is_zero()
    assert rho + (-rho) == rho.scale(0)
    assert rho.scale(3).twice_in_modulus()


def test_fixed_discriminant_perm_double():
    for k in range(1, 5):
        s = OrbifoldSetting(*permutation_double([[2 * k]]))
        assert fixed_discriminant_count(s) == 2 * k
