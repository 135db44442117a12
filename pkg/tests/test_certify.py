import random

import pytest

from unitcert import test_vector as hilbert_vector
from unitcert import (
    OcticField,
    certify_affine,
    delta,
    fundamental_pell,
    separate_candidates,
    theta,
)
from unitcert.errors import Inseparable, NonUnitResidue, RankDeficient, SearchExhausted


@pytest.fixture(scope="module")
def ex1():
    O = OcticField(7, 19, 3)
    th = theta(7, 19, 3)
    place = delta(7, 19, 3, with_fsu=False).place
    units = {d: O.from_quad_unit(fundamental_pell(d)) for d in (2, 133, 21, 57)}
    return O, th, place, units


def test_test_vector_values(ex1):
    O, th, place, units = ex1
    assert hilbert_vector(th, place) == (0, 0)  # locally a square: all trivial
    assert hilbert_vector(units[133], place) == (1, 0)
    assert hilbert_vector(O.one(), place) == (0, 0)


def test_test_vector_square_unit_residue_is_trivial(ex1):
    O, th, place, units = ex1
    # 5 = 13^2 mod 41 is a residue, so every symbol in the vector is trivial
    assert hilbert_vector(O.from_rational(5), place) == (0, 0)


def test_test_vector_rejects_non_unit_residue(ex1):
    O, th, place, units = ex1
    with pytest.raises(NonUnitResidue):
        hilbert_vector(O.from_rational(41), place)


def test_functional_additivity(ex1):
    O, th, place, units = ex1
    rng = random.Random(23)
    pool = list(units.values()) + [th]
    from unitcert.certify import TestFunctional
    from unitcert import local_basis

    t, u = local_basis(place.t)
    lam = TestFunctional(place, "t", t)
    for _ in range(40):
        x = rng.choice(pool) * rng.choice(pool)
        y = rng.choice(pool)
        assert lam.evaluate(x * y) == (lam.evaluate(x) + lam.evaluate(y)) % 2


def test_certify_affine_empty_generators(ex1):
    O, th, place, units = ex1
    cert = certify_affine(th, [])
    assert cert.functionals == [] and cert.base_bits == []


def test_certify_affine_single_bit(ex1):
    O, th, place, units = ex1
    cert = certify_affine(th, [units[133]])
    assert len(cert.functionals) == 1
    f = cert.functionals[0]
    assert f.place.t == 41 and f.basis == "t"
    assert cert.matrix == [[1]]
    assert cert.base_bits == [0]  # theta is a square at the place


def test_certify_affine_rank_two_decodes_coset(ex1):
    O, th, place, units = ex1
    gens = [units[2], units[133]]
    cert = certify_affine(th, gens)
    assert len(cert.functionals) == 2
    for a in (0, 1):
        for b in (0, 1):
            u = th
            if a:
                u = u * gens[0]
            if b:
                u = u * gens[1]
            bits = tuple(f.evaluate(u) for f in cert.functionals)
            assert cert.decode(bits) == (a, b)
            assert cert.encode((a, b)) == bits


def test_certify_affine_rank_deficient(ex1):
    O, th, place, units = ex1
    with pytest.raises(RankDeficient):
        certify_affine(th, [O.one()], max_primes=4)


def test_certify_affine_exhaustion_on_dependent_pair(ex1):
    O, th, place, units = ex1
    same_class = units[133] * O.from_rational(4)
    with pytest.raises(SearchExhausted):
        certify_affine(th, [units[133], same_class], max_primes=4)


def test_separate_singleton(ex1):
    O, th, place, units = ex1
    cert = separate_candidates([th])
    assert cert.functionals == [] and cert.table == [()]


def test_separate_pair(ex1):
    O, th, place, units = ex1
    cert = separate_candidates([th, units[133] * th])
    assert len(cert.functionals) == 1
    assert cert.table == [(0,), (1,)]


def test_separate_four_distinct_rows(ex1):
    O, th, place, units = ex1
    family = [O.one(), units[2], units[133], units[2] * units[133]]
    cert = separate_candidates(family)
    assert len(set(cert.table)) == 4
    # exhaustive verification: recompute the whole table
    for row, cand in zip(cert.table, family):
        assert row == tuple(f.evaluate(cand) for f in cert.functionals)


def test_separate_detects_duplicate_class(ex1):
    O, th, place, units = ex1
    with pytest.raises(Inseparable) as info:
        separate_candidates([units[133], units[133] * O.from_rational(9)], max_primes=4)
    assert info.value.witness == (0, 1)


def test_separate_random_unit_families(ex1):
    # the seven-generator unit system spans independent squareclasses, so
    # distinct exponent masks give distinct candidates
    from unitcert import fsu

    gens = [g.element for g in fsu(7, 19, 3)]
    rng = random.Random(31)
    for _ in range(3):
        masks = rng.sample(range(1 << len(gens)), rng.randrange(2, 6))
        family = []
        for mask in masks:
            elem = gens[0].tower.one()
            for j, g in enumerate(gens):
                if mask >> j & 1:
                    elem = elem * g
            family.append(elem)
        cert = separate_candidates(family)
        assert len(set(cert.table)) == len(family)


def test_separate_requires_candidates():
    with pytest.raises(ValueError):
        separate_candidates([])
