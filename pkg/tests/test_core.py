import pytest

from etbounds.core import ParticleSystem, Statistics, pair_count, q_from_occupations, q_ground


@pytest.mark.parametrize("occ, n, expected", [([0, 0], 3, 1.0), ([2, 1], 3, 4.0), ([3], 2, 3.5)])
def test_q_from_occupations(occ, n, expected):
    assert q_from_occupations(occ, n) == expected


@pytest.mark.parametrize("n, stats, expected", [
    (2, Statistics.BOSON, 0.5),
    (3, Statistics.FERMION, 4.0),
    (100, Statistics.BOSON, 49.5),
    (3, "fermion", 4.0),
])
def test_q_ground(n, stats, expected):
    assert q_ground(n, stats) == expected


@pytest.mark.parametrize("occ, n", [([0, -1], 3), ([0], 3), ([0, 0, 0], 3), ([0.5, 0], 3)])
def test_bad_occupations(occ, n):
    with pytest.raises(ValueError):
        q_from_occupations(occ, n)


@pytest.mark.parametrize("n", [0, 1, 2.5])
def test_small_n_rejected(n):
    with pytest.raises(ValueError):
        q_ground(n, Statistics.BOSON)
    with pytest.raises(ValueError):
        ParticleSystem(n)


def test_ground_relations():
    for n in range(2, 60):
        assert q_ground(n, Statistics.FERMION) > q_ground(n, Statistics.BOSON)
        assert q_from_occupations([0] * (n - 1), n) == q_ground(n, Statistics.BOSON)


def test_particle_system():
    s = ParticleSystem(5, Statistics.FERMION)
    assert s.n_pairs == pair_count(5) == 10
    assert s.q_ground() == 12.0
