"""Exactness, normal forms, and additivity of the measure layer."""

import random
from fractions import Fraction as F

import pytest

from limitgap.errors import NegativeMassError, TotalExceedsOneError
from limitgap.measure_core import (
    NEG_INF,
    POS_INF,
    DiscreteMeasure,
    Interval,
    MeasurableSet,
    check_additivity,
    dirac,
    finite,
    from_mass_pairs,
    measure_from_dict,
    measure_to_dict,
    parse_ext_real,
    rat_str,
    set_from_dict,
    set_to_dict,
)


def test_order_puts_infinities_around_every_finite():
    points = [POS_INF, finite(-1000000), finite("1/3"), NEG_INF, finite(0)]
    assert sorted(points) == [
        NEG_INF,
        finite(-1000000),
        finite(0),
        finite("1/3"),
        POS_INF,
    ]
    assert NEG_INF < finite(-(10**50)) and finite(10**50) < POS_INF


def test_equality_is_exact_rational_equality():
    assert finite(F(2, 4)) == finite("1/2")
    assert finite(1) != finite("1000000000000000001/1000000000000000000")
    assert POS_INF == POS_INF and POS_INF != NEG_INF


@pytest.mark.parametrize("text", ["-inf", "+inf", "0/1", "-7/3", "22/7"])
def test_ext_real_serialization_round_trips(text):
    assert str(parse_ext_real(text)) == text


def test_rat_str_always_carries_denominator():
    assert rat_str(F(0)) == "0/1"
    assert rat_str(F(3)) == "3/1"
    assert rat_str(F(-1, 2)) == "-1/2"


def test_coin_marginal_from_pairs():
    lam = from_mass_pairs([(0, "1/2"), (1, "1/2")])
    assert lam.mass_at(finite(0)) == F(1, 2)
    assert lam.is_probability and not lam.is_subprobability


def test_empty_pairs_give_zero_measure():
    zero = from_mass_pairs([])
    assert zero.total == 0 and zero.atoms == ()


def test_three_flip_argmax_masses():
    # Frozen from listing all 8 three-flip outcomes by hand: the last index
    # of the maximum is 1 only for 100, 2 for 010/110, and 3 otherwise.
    m = from_mass_pairs([(1, "1/8"), (2, "1/4"), (3, "5/8")])
    assert m.total == 1
    assert m.mass_at(finite(2)) == F(1, 4)


def test_duplicates_merge_and_zero_mass_drops():
    m = from_mass_pairs([(0, "1/4"), (0, "1/4"), (1, 0)])
    assert m.atoms == ((finite(0), F(1, 2)),)


def test_negative_mass_rejected():
    with pytest.raises(NegativeMassError, match="negative mass -1/4"):
        from_mass_pairs([(0, "-1/4")])


def test_total_above_one_reports_exact_sum():
    with pytest.raises(TotalExceedsOneError, match="9/8"):
        from_mass_pairs([(0, "1/2"), (1, "5/8")])


def test_dirac_is_a_unit_atom():
    d = dirac(POS_INF)
    assert d.total == 1 and d.mass_at(POS_INF) == 1
    assert d.restrict_to_reals().total == 0


def test_dirac_cdf_steps_at_the_atom():
    d = dirac(finite(5))
    assert d.cdf(finite(4)) == 0
    assert d.cdf(finite(5)) == 1 and d.cdf(POS_INF) == 1


def test_lower_ray_mass():
    m = from_mass_pairs([(1, "1/8"), (2, "1/4"), (3, "5/8")])
    assert m.mass_of_set(MeasurableSet.lower_ray(finite(2))) == F(3, 8)


def test_empty_set_has_zero_mass():
    m = from_mass_pairs([(0, "1/2"), (1, "1/2")])
    assert m.mass_of_set(MeasurableSet.empty()) == 0


def test_lower_ray_excludes_minus_infinity():
    m = from_mass_pairs([(NEG_INF, "1/3"), (0, "2/3")])
    assert m.mass_of_set(MeasurableSet.lower_ray(finite(0))) == F(2, 3)
    assert m.cdf(finite(0)) == 1  # the cdf, by contrast, starts at -inf


def test_cdf_known_values():
    lam = from_mass_pairs([(0, "1/2"), (1, "1/2")])
    assert lam.cdf(finite(0)) == F(1, 2)
    assert lam.cdf(finite(1)) == 1
    assert from_mass_pairs([]).cdf(finite(100)) == 0


def test_four_flip_cdf_at_three():
    m = from_mass_pairs([(1, "1/16"), (2, "1/8"), (3, "1/4"), (4, "9/16")])
    assert m.cdf(finite(3)) == F(7, 16)


def _random_measure(rng: random.Random) -> DiscreteMeasure:
    count = rng.randint(1, 5)
    points = rng.sample(range(-8, 9), count)
    pairs = [(finite(p), F(rng.randint(0, 6), 32)) for p in points]
    if rng.random() < 0.3:
        pairs.append((POS_INF, F(rng.randint(0, 4), 32)))
    if rng.random() < 0.2:
        pairs.append((NEG_INF, F(rng.randint(0, 4), 32)))
    total = sum(m for _, m in pairs)
    while total > 1:
        pairs = [(p, m / 2) for p, m in pairs]
        total /= 2
    return DiscreteMeasure(tuple(pairs))


def test_cdf_is_monotone_and_tops_out_at_total():
    rng = random.Random(1702)
    for _ in range(60):
        m = _random_measure(rng)
        grid = sorted(F(rng.randint(-40, 40), rng.randint(1, 4)) for _ in range(8))
        probes = [NEG_INF] + [finite(q) for q in grid] + [POS_INF]
        values = [m.cdf(x) for x in probes]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert values[-1] == m.total


def test_restriction_conserves_mass_exactly():
    rng = random.Random(88)
    for _ in range(60):
        m = _random_measure(rng)
        restricted = m.restrict_to_reals()
        assert restricted.total + m.mass_at(POS_INF) + m.mass_at(NEG_INF) == m.total
        assert restricted.mass_at(POS_INF) == 0


def test_restriction_drops_only_the_infinite_atoms():
    m = from_mass_pairs([(POS_INF, "1/3"), (0, "2/3")])
    r = m.restrict_to_reals()
    assert r.atoms == ((finite(0), F(2, 3)),)
    assert r.total == F(2, 3) and r.is_subprobability


def test_pushforward_identity_and_collisions():
    m = from_mass_pairs([(1, "1/4"), (2, "3/4")])
    assert m.pushforward(lambda x: x) == m
    squashed = m.pushforward(lambda x: finite(0))
    assert squashed.atoms == ((finite(0), F(1)),)


def test_pushforward_preserves_total_for_random_maps():
    rng = random.Random(404)
    for _ in range(40):
        m = _random_measure(rng)
        shift = rng.randint(-3, 3)

        def f(x):
            return finite(x.value + shift) if x.is_finite else x

        assert m.pushforward(f).total == m.total


# --- sets and normal form ---


def test_adjacent_pieces_merge_through_a_point():
    s = MeasurableSet.from_pieces(
        [Interval(finite(0), True, finite(1), False),
         Interval(finite(1), False, finite(2), True)],
        [finite(1)],
    )
    assert s == MeasurableSet.interval(finite(0), finite(2))
    assert len(s.intervals) == 1 and s.points == ()


def test_open_gap_stays_split():
    s = MeasurableSet.from_pieces(
        [Interval(finite(0), True, finite(1), False),
         Interval(finite(1), False, finite(2), True)]
    )
    assert len(s.intervals) == 2 and not s.contains(finite(1))


def test_degenerate_interval_becomes_a_point():
    s = MeasurableSet.from_pieces([Interval(finite(3), True, finite(3), True)])
    assert s.intervals == () and s.points == (finite(3),)


def test_points_inside_intervals_are_absorbed():
    s = MeasurableSet.from_pieces(
        [Interval(finite(0), True, finite(2), True)], [finite(1), finite(3)]
    )
    assert s.points == (finite(3),)


def test_point_extends_an_open_endpoint():
    s = MeasurableSet.from_pieces(
        [Interval(finite(0), False, finite(1), False)], [finite(0)]
    )
    assert s.intervals == (Interval(finite(0), True, finite(1), False),)


def test_complement_ambient_matters_at_infinity():
    ray = MeasurableSet.lower_ray(finite(0))
    in_reals = ray.complement("R")
    in_extended = ray.complement("Rbar")
    escape = dirac(POS_INF)
    assert escape.mass_of_set(in_reals) == 0
    assert escape.mass_of_set(in_extended) == 1


def test_complement_digs_out_isolated_points():
    two_rays = MeasurableSet.from_pieces(
        [Interval(NEG_INF, False, finite(0), False),
         Interval(finite(0), False, POS_INF, False)]
    )
    assert two_rays.complement("R") == MeasurableSet.singleton(finite(0))


def test_complement_round_trip():
    s = MeasurableSet.from_pieces(
        [Interval(finite(-2), True, finite(1), False)], [finite(5)]
    )
    assert s.complement("Rbar").complement("Rbar") == s


def test_intersection_of_overlapping_intervals():
    a = MeasurableSet.interval(finite(0), finite(2))
    b = MeasurableSet.interval(finite(1), finite(3))
    assert a.intersection(b) == MeasurableSet.interval(finite(1), finite(2))
    assert a.union(b) == MeasurableSet.interval(finite(0), finite(3))


def test_mass_is_finitely_additive_over_disjoint_sets():
    rng = random.Random(7)
    for _ in range(60):
        m = _random_measure(rng)
        a0, a1, b0, b1 = sorted(rng.sample(range(-12, 13), 4))
        a = MeasurableSet.interval(finite(a0), finite(a1), hi_closed=False)
        b = MeasurableSet.interval(finite(b0), finite(b1))
        assert a.intersection(b).is_empty
        assert m.mass_of_set(a.union(b)) == m.mass_of_set(a) + m.mass_of_set(b)


# --- additivity reports ---


def _four_point_space() -> DiscreteMeasure:
    return from_mass_pairs([(1, "1/8"), (2, "1/8"), (3, "1/8"), (4, "5/8")])


def test_overlapping_events_sum_is_not_a_probability():
    m = _four_point_space()
    a = MeasurableSet.from_points([finite(1), finite(2)])
    b = MeasurableSet.from_points([finite(2), finite(3)])
    report = check_additivity(m, a, b)
    assert report.mass_sum == F(1, 2)
    assert report.mass_union == F(3, 8)
    assert not report.disjoint and not report.eligible


def test_disjoint_events_sum_is_the_union_mass():
    m = _four_point_space()
    a = MeasurableSet.from_points([finite(1)])
    b = MeasurableSet.from_points([finite(3), finite(4)])
    report = check_additivity(m, a, b)
    assert report.disjoint and report.eligible
    assert report.mass_sum == report.mass_union == F(7, 8)


def test_two_singletons_cover_the_coin_marginal():
    lam = from_mass_pairs([(0, "1/2"), (1, "1/2")])
    report = check_additivity(
        lam, MeasurableSet.singleton(finite(0)), MeasurableSet.singleton(finite(1))
    )
    assert report.mass_sum == 1 == report.mass_union


def test_atomless_overlap_is_eligible_but_not_disjoint():
    m = from_mass_pairs([(0, "1/2"), (3, "1/2")])
    a = MeasurableSet.interval(finite(0), finite(2))
    b = MeasurableSet.interval(finite(1), finite(3))
    report = check_additivity(m, a, b)
    assert not report.disjoint
    assert report.eligible  # the overlap (1, 2) carries no atoms


# --- serialization ---


def test_measure_json_round_trip():
    m = from_mass_pairs([(NEG_INF, "1/8"), ("-3/2", "1/4"), (POS_INF, "1/2")])
    data = measure_to_dict(m)
    assert data["total"] == "7/8"
    assert [a["point"] for a in data["atoms"]] == ["-inf", "-3/2", "+inf"]
    assert measure_from_dict(data) == m


def test_set_json_round_trip():
    s = MeasurableSet.from_pieces(
        [Interval(NEG_INF, False, finite("1/2"), True)], [finite(4)]
    )
    assert set_from_dict(set_to_dict(s)) == s
