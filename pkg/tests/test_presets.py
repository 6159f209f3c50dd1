import math

import pytest

from pacnav.environment import density
from pacnav.presets import PRESET_NAMES, preset_config, trees_for_density


def test_trees_for_density_inverts_density():
    area = 2500.0
    n = trees_for_density(0.4, 2.5, area)
    assert n == 51
    assert density(n, 2.5, area) == pytest.approx(0.4, abs=0.01)


def test_shared_benchmark_parameters():
    for name in ("1a", "1b", "2a", "2b"):
        c = preset_config(name)
        assert c.r_f == 4.0
        assert c.r_o == 2.5
        assert c.k_c == 1.0
        assert c.k_n == 1.2
        assert c.goal == (20.0, 0.0)
        assert c.forest.width == c.forest.height == 50.0


def test_case_geometry_and_informed_counts():
    c1a, c1b = preset_config("1a"), preset_config("1b")
    c2a, c2b = preset_config("2a"), preset_config("2b")
    assert (c1a.n_uavs, len(c1a.informed_ids)) == (3, 1)
    assert (c1b.n_uavs, len(c1b.informed_ids)) == (3, 2)
    assert (c2a.n_uavs, len(c2a.informed_ids)) == (6, 2)
    assert (c2b.n_uavs, len(c2b.informed_ids)) == (6, 4)
    assert c1a.spawn_radius == 3.0 and c1a.goal_radius == 6.0
    assert c2a.spawn_radius == 4.5 and c2a.goal_radius == 8.5


def test_tree_matching_modes():
    assert preset_config("1a", tree_matching="rho").forest.n_trees == 51
    assert preset_config("1a", tree_matching="count").forest.n_trees == 104
    with pytest.raises(ValueError):
        preset_config("1a", tree_matching="exact")


def test_forest_real_geometry():
    c = preset_config("forest-real")
    assert c.n_uavs == 4
    assert len(c.informed_ids) == 1
    assert c.goal == (0.0, 40.0)
    rho = density(c.forest.n_trees, 2.5, c.forest.width * c.forest.height)
    assert rho == pytest.approx(0.25, abs=0.01)


def test_unknown_preset_rejected():
    with pytest.raises(ValueError):
        preset_config("9z")


def test_preset_names_all_buildable():
    for name in PRESET_NAMES:
        preset_config(name)
