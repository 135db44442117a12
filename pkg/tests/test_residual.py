from fractions import Fraction

import pytest

from unitcert import (
    OcticField,
    SplitPlace,
    classical_datum,
    decide_mu_hilbert,
    delta,
    enumerate_places,
    find_split_primes,
    fsu,
    fundamental_pell,
    hypothesis_branch,
    jacobi,
    noncollapse_check,
    residue_at,
    survey_places,
    theta,
    theta_factors,
)
from unitcert.errors import (
    DenominatorNotInvertible,
    HypothesisViolation,
    InvalidPlace,
    OracleDisagreement,
    SearchExhausted,
)


def test_classical_datum_values():
    assert classical_datum(7, 19, 3).as_tuple() == (7, 3, 3, -1, -1, 1)
    assert classical_datum(7, 3, 59).as_tuple() == (7, 3, 3, -1, -1, 1)
    assert classical_datum(7, 11, 43).as_tuple() == (7, 3, 3, 1, 1, 1)


def test_classical_datum_rejects_bad_triples():
    with pytest.raises(ValueError):
        classical_datum(7, 9, 3)
    with pytest.raises(ValueError):
        classical_datum(7, 7, 3)
    with pytest.raises(ValueError):
        classical_datum(2, 3, 5)


def test_hypothesis_branch():
    assert hypothesis_branch(7, 19, 3) == (-1, -1, 1)
    assert hypothesis_branch(7, 11, 43) == (1, 1, 1)
    with pytest.raises(HypothesisViolation):
        hypothesis_branch(5, 7, 11)  # wrong residues mod 8
    with pytest.raises(HypothesisViolation):
        hypothesis_branch(7, 3, 11)  # pattern (-1, 1, 1) is outside both branches


def test_find_split_primes():
    assert find_split_primes(7, 19, 3, 2, 1000) == [41, 89]
    assert find_split_primes(7, 11, 43, 2, 1000) == [23, 73]
    assert find_split_primes(7, 3, 59, 3, 1000) == [47, 79, 89]
    with pytest.raises(SearchExhausted):
        find_split_primes(7, 19, 3, 50, 100)


def test_enumerate_places_order_and_closure():
    places = enumerate_places(41, 7, 19, 3)
    assert len(places) == 8
    first = places[0]
    assert (first.r2, first.rpq, first.rps) == (17, 16, 12)
    assert first.signs == (1, 1, 1)
    # negating one root yields another listed place
    keys = {(p.r2, p.rpq, p.rps) for p in places}
    assert (41 - 17, 16, 12) in keys
    assert enumerate_places(79, 7, 3, 59)[0].signs == (1, 1, 1)
    assert (enumerate_places(79, 7, 3, 59)[0].r2,
            enumerate_places(79, 7, 3, 59)[0].rpq,
            enumerate_places(79, 7, 3, 59)[0].rps) == (9, 10, 27)
    assert (enumerate_places(23, 7, 11, 43)[0].r2,
            enumerate_places(23, 7, 11, 43)[0].rpq,
            enumerate_places(23, 7, 11, 43)[0].rps) == (5, 10, 5)


def test_enumerate_places_rejects_nonsplit_prime():
    with pytest.raises(ValueError):
        enumerate_places(43, 7, 19, 3)  # 2 is a nonresidue mod 43
    with pytest.raises(ValueError):
        enumerate_places(7, 7, 19, 3)  # divides pqs


def test_split_place_validates_roots():
    with pytest.raises(ValueError):
        SplitPlace(41, 7, 19, 3, 18, 16, 12)


def test_residue_at_worked_values():
    place = enumerate_places(41, 7, 19, 3)[0]
    assert residue_at(fundamental_pell(133), place) == 29
    f_pq, f_ps = theta_factors(7, 19, 3)
    assert residue_at(f_pq, place) == 18
    assert residue_at(f_ps, place) == 37
    th = theta(7, 19, 3)
    assert residue_at(th, place) == 18 * 37 % 41
    assert residue_at(th, place) == 10


def test_residue_at_is_multiplicative():
    place = enumerate_places(41, 7, 19, 3)[0]
    O = OcticField(7, 19, 3)
    a = O.element([1, 2, Fraction(1, 2), 0, 3, 0, 1, 0])
    b = O.element([0, 1, 1, 4, 0, Fraction(5, 2), 0, 2])
    assert residue_at(a * b, place) == residue_at(a, place) * residue_at(b, place) % 41


def test_residue_at_denominator_collision():
    place = enumerate_places(41, 7, 19, 3)[0]
    O = OcticField(7, 19, 3)
    bad = O.element([Fraction(1, 41), 0, 0, 0, 0, 0, 0, 0])
    with pytest.raises(DenominatorNotInvertible):
        residue_at(bad, place)


def test_delta_first_triple():
    cert = delta(7, 19, 3, with_fsu=False)
    assert cert.delta == 0 and cert.mu == "1"
    assert cert.place.t == 41 and cert.place.signs == (1, 1, 1)
    assert cert.theta_residue == 10 and cert.legendre_theta == 1
    assert cert.eps_pq_residue == 29 and cert.legendre_eps == -1
    assert cert.hypotheses_verified and not cert.oracle_checked


def test_delta_second_triple():
    cert = delta(7, 11, 43, with_fsu=False)
    assert cert.delta == 0 and cert.mu == "1"
    assert cert.place.t == 23
    assert cert.theta_residue == 1 and cert.eps_pq_residue == 15


def test_delta_third_triple_skips_invalid_split_prime():
    # 47 splits but eps_21 is a square at every place above it
    cert = delta(7, 3, 59, with_fsu=False)
    assert cert.place.t == 79
    assert cert.delta == 1 and cert.mu == "eps_pq"
    assert cert.theta_residue == 17 and cert.eps_pq_residue == 17
    assert cert.eps_pq_residue * cert.theta_residue % 79 == 52
    assert jacobi(52, 79) == 1


def test_delta_rejects_off_pattern_triple():
    with pytest.raises(HypothesisViolation):
        delta(5, 7, 11)


def test_delta_forced_off_pattern_engages_oracle():
    # outside the hypotheses the two-candidate dichotomy can fail outright;
    # the forced run must detect that through the exact oracle
    with pytest.raises(OracleDisagreement):
        delta(7, 3, 11, force=True)


def test_delta_search_exhaustion():
    with pytest.raises(SearchExhausted):
        delta(7, 19, 3, prime_bound=30, with_fsu=False)


def test_delta_oracle_cross_check_passes():
    cert = delta(7, 19, 3, oracle=True, with_fsu=False)
    assert cert.oracle_checked


def test_place_invariance_and_local_dichotomy():
    for triple, expected in [((7, 19, 3), 0), ((7, 11, 43), 0), ((7, 3, 59), 1)]:
        decisions = survey_places(*triple, prime_count=4)
        valid = [d for d in decisions if d.valid]
        assert len(valid) >= 3
        assert len({d.place.t for d in valid}) >= 2
        assert {d.delta for d in valid} == {expected}
        for d in valid:
            # exactly one of theta, eps_pq * theta is a residue at the place
            both = {d.legendre_theta, jacobi(d.eps_residue * d.theta_residue, d.place.t)}
            assert both == {1, -1}


def test_decide_mu_hilbert_agrees_with_delta():
    for triple in [(7, 19, 3), (7, 11, 43), (7, 3, 59)]:
        cert = delta(*triple, with_fsu=False)
        mu, vector, b = decide_mu_hilbert(*triple, cert.place)
        assert mu == cert.mu
        assert vector == ((0, 0) if cert.delta == 0 else (1, 0))
        assert b == cert.place.t  # the uniformizer detects eps_pq


def test_decide_mu_hilbert_rejects_invalid_place():
    # at t = 47 every place has eps_21 a local square for (7, 3, 59)
    place = enumerate_places(47, 7, 3, 59)[0]
    with pytest.raises(InvalidPlace):
        decide_mu_hilbert(7, 3, 59, place)


def test_fsu_structure_and_exact_squares():
    gens = fsu(7, 19, 3)
    names = [g.name for g in gens]
    assert names == [
        "eps_2", "eps_pq", "sqrt(eps_pq*eps_ps)", "sqrt(eps_pq*eps_qs)",
        "sqrt(eps_2qs)", "sqrt(eps_pq*eps_2pq)", "xi",
    ]
    assert all(g.exact for g in gens)
    by_name = {g.name: g for g in gens}
    O = gens[0].element.tower
    e = {d: O.from_quad_unit(fundamental_pell(d)) for d in (2, 133, 266, 21, 57, 114)}
    assert by_name["eps_2"].element == e[2]
    assert by_name["eps_pq"].element == e[133]
    sq = by_name["sqrt(eps_pq*eps_ps)"].element
    assert sq * sq == e[133] * e[21]
    sq = by_name["sqrt(eps_pq*eps_qs)"].element
    assert sq * sq == e[133] * e[57]
    sq = by_name["sqrt(eps_2qs)"].element
    assert sq * sq == e[114]
    sq = by_name["sqrt(eps_pq*eps_2pq)"].element
    assert sq * sq == e[133] * e[266]
    # same element as the first normalized factor of theta, lifted
    assert sq == O.lift(theta_factors(7, 19, 3)[0])
    xi = by_name["xi"]
    assert xi.mu == "1"
    assert xi.element * xi.element == theta(7, 19, 3)


def test_fsu_second_triple_all_exact():
    gens = fsu(7, 11, 43)
    assert all(g.exact for g in gens)
    by_name = {g.name: g for g in gens}
    O = gens[0].element.tower
    g = by_name["sqrt(eps_pq*eps_qs)"].element
    assert g * g == (O.from_quad_unit(fundamental_pell(77))
                     * O.from_quad_unit(fundamental_pell(473)))
    xi = by_name["xi"]
    assert xi.mu == "1"
    assert xi.element * xi.element == theta(7, 11, 43)


def test_fsu_third_triple_xi_squares_to_eps_theta():
    gens = fsu(7, 3, 59)
    xi = next(g for g in gens if g.name == "xi")
    assert xi.mu == "eps_pq"
    O = xi.element.tower
    e21 = O.from_quad_unit(fundamental_pell(21))
    assert xi.element * xi.element == e21 * theta(7, 3, 59)


def test_noncollapse_pairs():
    ok, report = noncollapse_check((7, 19, 3), (7, 3, 59))
    assert ok
    assert report["datum_equal"] and report["delta_differs"]
    assert not noncollapse_check((7, 19, 3), (7, 19, 3))[0]
    assert not noncollapse_check((7, 19, 3), (7, 11, 43))[0]


def test_certificate_json_shape():
    cert = delta(7, 19, 3)
    doc = cert.to_json_dict()
    assert list(doc) == [
        "triple", "datum", "eps_convention", "hypotheses_verified", "place",
        "theta_residue", "eps_pq_residue", "legendre_theta", "legendre_eps",
        "delta", "mu", "fsu", "oracle_checked",
    ]
    assert doc["triple"] == {"p": "7", "q": "19", "s": "3"}
    assert doc["place"]["t"] == "41"
    assert doc["place"]["r2pq"] == str(17 * 16 % 41)
    assert doc["delta"] == 0 and doc["mu"] == "1"
    assert len(doc["fsu"]) == 7
    assert doc["fsu"][6]["name"] == "xi" and doc["fsu"][6]["mu"] == "1"
