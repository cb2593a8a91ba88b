"""
Tests for maximal left denominator sets, block projections and the structural checkers.
"""

import pytest

import maxden
from maxden import bound_check, block_projections, commutative_maxden, denominator_family, enumerate_submonoids, \
    exact_sequence_check, factorization_closure_check, ideal_candidates, ideal_quotient_bound_check, \
    largest_block_denominator, localization_radical, max_den, max_den_bruteforce, max_den_via_ideals, \
    maximal_saturation_check, nil_ideal_bijection_check, quotient_denominator_check, regular_maxden_check, \
    saturated_denominator_sets, theorem_4_2_check
from ring_errors import PreconditionError, RingResourceError

GL2 = [6, 7, 9, 11, 13, 14]


def test_z6_max_den(z6):
    result = max_den_bruteforce(z6)
    assert [S.ids() for S in result.sets] == [[1, 3, 5], [1, 2, 4, 5]]
    assert [loc.localized.order for loc in result.localizations] == [2, 3]
    assert [S.ids() for S in max_den_via_ideals(z6).sets] == [[1, 3, 5], [1, 2, 4, 5]]


def test_triangular_max_den(t2):
    result = max_den(t2, method="brute")
    assert [S.ids() for S in result.sets] == [[1, 3, 5, 7]]
    assert result.localizations[0].kernel.ids() == [0, 2, 4, 6]
    assert result.localizations[0].localized.order == 2
    assert [S.ids() for S in max_den(t2, method="ideals").sets] == [[1, 3, 5, 7]]
    assert localization_radical(t2, result).ids() == [0, 2, 4, 6]


def test_ideal_candidates_of_triangular(t2):
    candidates = [(a.ids(), S.ids()) for a, S in ideal_candidates(t2)]
    assert candidates == [([0], [5, 7]), ([0, 2, 4, 6], [1, 3, 5, 7])]


def test_matrix_ring_max_den(m2):
    assert [S.ids() for S in max_den(m2).sets] == [GL2]


def test_enumerate_submonoids_from_units(z6):
    found = [S.ids() for S in enumerate_submonoids(z6, [1, 5])]
    assert found == [[1, 5], [1, 3, 5], [1, 2, 4, 5]]


def test_monoid_limit(z6):
    with pytest.raises(RingResourceError):
        enumerate_submonoids(z6, [1], monoid_limit=2)


def test_brute_force_cap(z6):
    with pytest.raises(RingResourceError):
        max_den(z6, method="brute", brute_cap=4)
    assert max_den(z6, brute_cap=4).method == "ideals"


def test_unknown_method(z6):
    with pytest.raises(PreconditionError):
        max_den(z6, method="guess")


def test_commutative_maxden(v, z6, t2):
    assert [S.ids() for S in commutative_maxden(v).sets] == [[1, 3], [2, 3]]
    assert commutative_maxden(z6).method == "minimal-primes"
    shortcut = commutative_maxden(z6).to_dict()
    assert shortcut["method"] == "minimal-primes"
    assert [entry["set"] for entry in shortcut["sets"]] == [S.ids() for S in max_den_bruteforce(z6).sets]
    with pytest.raises(PreconditionError):
        commutative_maxden(t2)


def test_max_den_to_dict(z6):
    report = max_den(z6).to_dict()
    assert report["count"] == 2
    assert report["sets"][1] == {"set": [1, 2, 4, 5], "ass": [0, 3],
                                 "localization": {"order": 3, "characteristic": 3, "units": 2}}


def test_block_projections(t2):
    projections = block_projections(t2)
    assert len(projections) == 2
    assert projections[0].unit_preimage.ids() == [1, 3, 5, 7]
    assert projections[1].unit_preimage.ids() == [4, 5, 6, 7]
    assert largest_block_denominator(t2, 0, projections).ids() == [1, 3, 5, 7]
    assert largest_block_denominator(t2, 1, projections).ids() == [5, 7]
    with pytest.raises(PreconditionError):
        largest_block_denominator(t2, 2, projections)


def test_bound_is_strict_for_triangular(t2):
    report = bound_check(t2)
    assert report.holds
    assert (report.count, report.s) == (1, 2)
    assert report.block_sets == [[1, 3, 5, 7], [5, 7]]


def test_bound_is_equality_for_commutative(z6, v):
    for ring in (z6, v):
        report = bound_check(ring)
        assert report.holds
        assert report.count == report.s == 2


def test_pair_criterion_on_z6(z6):
    report = theorem_4_2_check(z6)
    assert report.criterion and report.equality and report.ok
    assert report.pairs[(0, 1)] == ([1, 3], [1, 4], [3, 4])
    assert report.block_sets_match


def test_pair_criterion_on_triangular(t2):
    report = theorem_4_2_check(t2)
    assert report.pairs[(0, 1)] is None
    assert not report.criterion and not report.equality
    assert report.agrees


@pytest.mark.parametrize("fixture", ["z4", "z6", "z8", "t2", "m2", "v"])
def test_structural_checkers(fixture, request):
    ring = request.getfixturevalue(fixture)
    result = max_den(ring)
    assert regular_maxden_check(ring, result).ok
    assert maximal_saturation_check(ring, result).ok
    assert exact_sequence_check(ring, result).ok
    assert quotient_denominator_check(ring).ok
    assert factorization_closure_check(ring).ok


def test_quotient_denominator_check_covers_unsaturated_sets(z6, monkeypatch):
    visited = []

    def recording_family(R, raw=False, monoid_limit=None):
        family = denominator_family(R, raw, monoid_limit)
        visited.extend(S.ids() for S in family)
        return family

    monkeypatch.setattr(maxden, "denominator_family", recording_family)
    assert quotient_denominator_check(z6, raw_cap=10).ok
    assert [1] in visited and [1, 4] in visited
    assert [1, 2, 4, 5] in visited


def test_quotient_denominator_check_above_raw_cap(t2):
    assert quotient_denominator_check(t2, raw_cap=4).ok
    assert quotient_denominator_check(t2, raw_cap=8).ok


def test_nil_ideal_bijection(z8, z4):
    assert nil_ideal_bijection_check(z8).ok
    assert nil_ideal_bijection_check(z4).ok


def test_saturated_denominator_sets(z6):
    family = denominator_family(z6)
    assert {frozenset(S.ids()) for S in family} == {frozenset({1, 5}), frozenset({1, 3, 5}),
                                                    frozenset({1, 2, 4, 5})}
    assert {frozenset(S.ids()) for S in saturated_denominator_sets(z6, family)} == \
        {frozenset({1, 5}), frozenset({1, 3, 5}), frozenset({1, 2, 4, 5})}


def test_ideal_quotient_bound(z6, t2):
    assert ideal_quotient_bound_check(z6).ok
    assert ideal_quotient_bound_check(t2).ok
