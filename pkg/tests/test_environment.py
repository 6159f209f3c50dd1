import json
import math

import numpy as np
import pytest

from pacnav.environment import (
    Forest,
    KeepClearZone,
    PlacementError,
    density,
    forest_from_dict,
    forest_to_dict,
    generate_forest,
    line_of_sight,
    load_forest,
    los_matrix,
    nearby_obstacles,
    save_forest,
    sense_obstacles,
)

from oracles import sampled_line_blocked


def small_forest(seed=0, n=20, area=(30.0, 30.0)):
    return generate_forest(seed=seed, area=area, n_trees=n)


# --- generate_forest ---


def test_empty_forest():
    f = generate_forest(seed=0, area=(10, 10), n_trees=0)
    assert f.n_trees == 0


def test_forest_deterministic():
    a = small_forest(seed=42)
    b = small_forest(seed=42)
    assert np.array_equal(a.centers, b.centers)


def test_forest_table_scale_count():
    f = generate_forest(seed=7, area=(50.0, 50.0), n_trees=104)
    assert f.n_trees == 104
    # bounds
    assert np.all(f.centers >= f.origin)
    assert np.all(f.centers <= f.origin + [f.width, f.height])
    # spacing
    d = f.centers[:, None, :] - f.centers[None, :, :]
    dist = np.sqrt((d**2).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    assert dist.min() >= 2 * f.tree_radius + 1.2 - 1e-12


def test_forest_keep_clear_respected():
    zones = (
        KeepClearZone(np.array([5.0, 5.0]), 4.0),
        KeepClearZone(np.array([25.0, 25.0]), 6.0),
    )
    f = generate_forest(seed=3, area=(30, 30), n_trees=40, keep_clear=zones)
    for zone in zones:
        d = np.sqrt(((f.centers - zone.center) ** 2).sum(axis=1))
        assert np.all(d >= zone.radius)


def test_forest_origin_offset():
    f = generate_forest(seed=1, area=(20, 20), n_trees=10, origin=(-10.0, -10.0))
    assert np.all(f.centers >= -10.0)
    assert np.all(f.centers <= 10.0)


def test_forest_placement_failure():
    with pytest.raises(PlacementError):
        generate_forest(seed=0, area=(3.0, 3.0), n_trees=50)


# --- density ---


def test_density_zero_trees():
    assert density(0, 2.5, 2500.0) == 0.0


def test_density_rho_matched_count():
    assert density(51, 2.5, 2500.0) == pytest.approx(0.4006, abs=1e-4)


def test_density_nominal_count():
    assert density(104, 2.5, 2500.0) == pytest.approx(0.8168, abs=1e-4)


def test_density_linear_and_quadratic():
    base = density(10, 1.5, 400.0)
    assert density(20, 1.5, 400.0) == pytest.approx(2 * base)
    assert density(10, 3.0, 400.0) == pytest.approx(4 * base)


def test_density_requires_positive_area():
    with pytest.raises(ValueError):
        density(1, 1.0, 0.0)


# --- line_of_sight ---


def test_los_empty_forest():
    f = generate_forest(seed=0, area=(10, 10), n_trees=0)
    assert line_of_sight(f, np.array([0.0, 0.0]), np.array([10.0, 10.0]))


def test_los_blocked_by_midpoint_tree():
    f = Forest(
        centers=np.array([[5.0, 0.0]]), tree_radius=0.3,
        width=10.0, height=10.0, seed=0, origin=np.array([0.0, -5.0]),
    )
    assert not line_of_sight(f, np.array([0.0, 0.0]), np.array([10.0, 0.0]))


def test_los_symmetric(rng):
    f = small_forest(seed=5)
    for _ in range(100):
        a = rng.uniform(0, 30, 2)
        b = rng.uniform(0, 30, 2)
        assert line_of_sight(f, a, b) == line_of_sight(f, b, a)


def test_los_matches_dense_sampling_oracle(rng):
    mismatches = 0
    for trial in range(10):
        f = small_forest(seed=100 + trial)
        centers = [tuple(c) for c in f.centers]
        for _ in range(100):
            a = rng.uniform(0, 30, 2)
            b = rng.uniform(0, 30, 2)
            got = line_of_sight(f, a, b)
            want = not sampled_line_blocked(a, b, centers, f.tree_radius)
            if got != want:
                mismatches += 1
    assert mismatches == 0


def test_los_inflation_blocks_near_misses():
    f = Forest(
        centers=np.array([[5.0, 0.4]]), tree_radius=0.3,
        width=10.0, height=10.0, seed=0, origin=np.array([0.0, -5.0]),
        los_inflation=0.2,
    )
    # segment passes 0.4 m from center: clear of the 0.3 disk but not 0.5
    assert not line_of_sight(f, np.array([0.0, 0.0]), np.array([10.0, 0.0]))
    f.los_inflation = 0.0
    assert line_of_sight(f, np.array([0.0, 0.0]), np.array([10.0, 0.0]))


def test_los_matrix_matches_pairwise(rng):
    f = small_forest(seed=8)
    pos = rng.uniform(0, 30, (5, 2))
    mat = los_matrix(f, pos)
    for i in range(5):
        assert mat[i, i]
        for j in range(5):
            assert mat[i, j] == line_of_sight(f, pos[i], pos[j])


def test_los_matrix_body_occlusion():
    f = generate_forest(seed=0, area=(10, 10), n_trees=0)
    # agent 2 sits exactly between 0 and 1
    pos = np.array([[1.0, 5.0], [9.0, 5.0], [5.0, 5.0]])
    clear = los_matrix(f, pos)
    assert clear[0, 1]
    occl = los_matrix(f, pos, body_radius=0.25)
    assert not occl[0, 1]
    assert occl[0, 2] and occl[1, 2]


# --- sense_obstacles ---


def test_sense_radius_smaller_than_nearest():
    f = Forest(
        centers=np.array([[5.0, 5.0]]), tree_radius=0.3,
        width=10.0, height=10.0, seed=0,
    )
    assert sense_obstacles(f, np.array([0.0, 0.0]), 1.0) == set()


def test_sense_radius_covers_all():
    f = small_forest(seed=2)
    diag = math.hypot(30, 30)
    assert sense_obstacles(f, np.array([0.0, 0.0]), diag + 1) == set(range(f.n_trees))


def test_sense_monotone_and_exhaustive(rng):
    for trial in range(20):
        f = small_forest(seed=200 + trial, n=15)
        p = rng.uniform(0, 30, 2)
        prev = set()
        for r in (2.0, 5.0, 10.0, 20.0, 50.0):
            got = sense_obstacles(f, p, r)
            want = {
                t for t in range(f.n_trees)
                if math.hypot(*(f.centers[t] - p)) <= r
            }
            assert got == want
            assert got >= prev
            prev = got


# --- nearby_obstacles ---


def test_nearby_empty():
    f = generate_forest(seed=0, area=(10, 10), n_trees=0)
    assert nearby_obstacles(f, [], np.array([5.0, 5.0]), 2.5) == []


def test_nearby_single_tree_inside():
    f = Forest(
        centers=np.array([[6.0, 5.0]]), tree_radius=0.3,
        width=10.0, height=10.0, seed=0,
    )
    out = nearby_obstacles(f, [], np.array([5.0, 5.0]), 2.5)
    assert len(out) == 1
    assert out[0] == pytest.approx([6.0, 5.0])


def test_nearby_tree_and_uav():
    f = Forest(
        centers=np.array([[6.25, 5.0]]), tree_radius=0.3,
        width=10.0, height=10.0, seed=0,
    )
    est = np.array([5.0, 6.25])
    out = nearby_obstacles(f, [est], np.array([5.0, 5.0]), 2.5)
    assert len(out) == 2
    assert out[0] == pytest.approx([6.25, 5.0])  # trees listed first
    assert out[1] == pytest.approx([5.0, 6.25])


def test_nearby_excludes_far_points():
    f = Forest(
        centers=np.array([[9.0, 5.0]]), tree_radius=0.3,
        width=10.0, height=10.0, seed=0,
    )
    far = np.array([5.0, 9.0])
    assert nearby_obstacles(f, [far], np.array([5.0, 5.0]), 2.5) == []


# --- serialization ---


def test_forest_roundtrip(tmp_path):
    f = small_forest(seed=11)
    path = tmp_path / "forest.json"
    save_forest(f, path)
    g = load_forest(path)
    assert np.array_equal(f.centers, g.centers)
    assert g.tree_radius == f.tree_radius
    assert g.seed == f.seed
    assert np.array_equal(g.origin, f.origin)
    # byte-stable rerun
    first = path.read_text()
    save_forest(g, path)
    assert path.read_text() == first


def test_forest_dict_rejects_mixed_radii():
    doc = forest_to_dict(small_forest(seed=1, n=3))
    doc["trees"][0][2] = 0.5
    with pytest.raises(ValueError):
        forest_from_dict(doc)
