import pytest

from orbifold_fusion.characters import (
    c_chi,
    char_eval_exponent,
    character_from_name,
    prime,
    solve_char_equation,
    twist,
    verify_group_model,
)

from conftest import EXAMPLES


@pytest.mark.parametrize("spec", EXAMPLES)
def test_group_model(orb_of, spec):
    verify_group_model(orb_of(spec).central)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_character_count_and_forced_squares(orb_of, spec):
    o = orb_of(spec)
    cd = o.central
    assert len(o.characters) == 2 ** len(cd.generators)
    assert len({c.name for c in o.characters}) == len(o.characters)
    for chi in o.characters:
        assert character_from_name(cd, chi.name) == chi
        for k, f in zip(chi.exps, cd.forced):
            assert (1j**k) ** 2 == f


@pytest.mark.parametrize("spec", EXAMPLES)
def test_twist_and_prime_laws(orb_of, spec):
    o = orb_of(spec)
    els = o.D_minus.elements()
    zero = o.zero("-")
    for chi in o.characters:
        assert twist(chi, zero) == chi
        assert prime(prime(chi)) == chi
        assert c_chi(chi, zero) == 1
        for a in els:
            if a.twice_in_modulus():
                assert c_chi(chi, a) in (1, -1)
            assert prime(twist(chi, a)) == twist(prime(chi), -a)
            for b in els[:6]:
                assert twist(twist(chi, a), b) == twist(chi, a + b)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_twist_only_depends_on_coset(orb_of, spec):
    o = orb_of(spec)
    Lm = o.L_minus
    for chi in o.characters:
        for a in o.D_minus.elements():
            for g in Lm.basis:
                shifted = tuple(x + y for x, y in zip(a.vector, g))
                assert twist(chi, shifted) == twist(chi, a)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_solution_sets_are_cosets(orb_of, spec):
    o = orb_of(spec)
    for chi in o.characters:
        base = set(solve_char_equation(chi, chi))
        assert o.zero("-") in base
        assert all(a + b in base for a in base for b in base)
        for psi in o.characters:
            sols = solve_char_equation(chi, psi)
            assert all(twist(chi, m) == psi for m in sols)
            if sols:
                assert {sols[0] + m for m in base} == set(sols)
                assert len(sols) == len(base)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_fixed_twists_match_doubled_dual(orb_of, spec):
    o = orb_of(spec)
    Lm = o.L_minus
    if any(Lm.gram[i][i] % 2 for i in range(Lm.rank)):
        pytest.skip("criterion stated for even L-")
    doubled = {x.scale(2) for x in o.D_minus.elements()}
    for chi in o.characters:
        assert set(solve_char_equation(chi, chi)) == doubled


def test_a2_double_table(orb_of):
    o = orb_of("a2-double")
    for i in (0, 1):
        for j in (0, 1):
            chi = character_from_name(o.central, f"chi{i}{j}")
            assert chi.is_real()
            assert char_eval_exponent(chi, (1, 0)) == 2 * j
            assert char_eval_exponent(chi, (0, 1)) == 2 * i


def test_c_chi_rejects_non_half_lattice(orb_of):
    from orbifold_fusion.characters import NotHalfLattice

    o = orb_of("a2-double")
    x = next(a for a in o.D_minus.elements() if not a.twice_in_modulus())
    with pytest.raises(NotHalfLattice):
        c_chi(o.characters[0], x)


def test_bad_names(orb_of):
    cd = orb_of("a2-double").central
    for bad in ("chi0", "chi0x", "chi000"):
        with pytest.raises(ValueError):
            character_from_name(cd, bad)
    # the A1 case has imaginary forced squares, so real names are rejected
    with pytest.raises(ValueError):
        character_from_name(orb_of("neg-identity:[[2]]").central, "chi0")
