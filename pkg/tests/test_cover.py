import math
import random

import pytest

from streamsimplify.cover import (
    anchors_at,
    cover_at,
    hull_at,
    make_template,
)
from streamsimplify.geom import point_in_convex, tol_for

# Regression constants frozen from bring-up measurements.
CORNERS_EPS25 = 613
HULL_EPS25 = 20
MAX_CORNERS_X_EPS2 = 110.0
MAX_HULL_X_EPS = 16.0


def test_cell_side_formula():
    t = make_template(1.0 - 1e-12, 1.0)
    assert t.cell_side == pytest.approx(1.0 / (2.0 * math.sqrt(2.0)), rel=1e-9)
    t2 = make_template(0.5, 2.0)
    assert t2.cell_side == pytest.approx(0.5 * 2.0 / (2.0 * math.sqrt(2.0)), rel=1e-15)


def test_parameter_domain():
    with pytest.raises(ValueError):
        make_template(0.0, 1.0)
    with pytest.raises(ValueError):
        make_template(1.0, 1.0)
    with pytest.raises(ValueError):
        make_template(1.5, 1.0)
    with pytest.raises(ValueError):
        make_template(0.5, 0.0)
    with pytest.raises(ValueError):
        make_template(0.5, -2.0)


def test_reference_template_counts_frozen():
    t = make_template(0.25, 1.0)
    assert len(t.corner_offsets) == CORNERS_EPS25
    assert len(t.hull) == HULL_EPS25
    # Counts depend only on eps, not on delta.
    for delta in (0.01, 3.7, 1000.0):
        td = make_template(0.25, delta)
        assert len(td.corner_offsets) == CORNERS_EPS25
        assert len(td.hull) == HULL_EPS25


def test_count_bounds_across_eps():
    for eps in (0.99, 0.9, 0.75, 0.5, 0.25, 0.1, 0.05):
        t = make_template(eps, 1.0)
        assert len(t.corner_offsets) * eps * eps <= MAX_CORNERS_X_EPS2
        assert len(t.hull) * eps <= MAX_HULL_X_EPS


def test_ball_sandwich():
    rng = random.Random(5)
    for _ in range(100):
        eps = rng.uniform(0.05, 0.95)
        delta = 10.0 ** rng.uniform(-2, 2)
        t = make_template(eps, delta)
        slack = tol_for(2.0 * delta) * 8
        for i in range(40):
            a = 2.0 * math.pi * i / 40
            z = (delta * math.cos(a), delta * math.sin(a))
            assert point_in_convex(t.hull, z, slack)
        lim = (1.0 + eps) * delta + slack
        for v in t.hull:
            assert math.hypot(v[0], v[1]) <= lim


def test_anchor_density_covers_disk():
    rng = random.Random(6)
    for eps, delta in ((0.5, 1.0), (0.25, 0.3), (0.8, 7.0)):
        t = make_template(eps, delta)
        reach = eps * delta / 2.0 + tol_for(delta) * 4
        for _ in range(300):
            a = rng.uniform(0, 2 * math.pi)
            r = delta * math.sqrt(rng.random())
            z = (r * math.cos(a), r * math.sin(a))
            best = min(math.hypot(z[0] - o[0], z[1] - o[1])
                       for o in t.corner_offsets)
            assert best <= reach


def test_center_is_an_anchor_and_translation_is_exact():
    t = make_template(0.5, 1.0)
    assert (0.0, 0.0) in t.corner_offsets
    for x in ((3.0, 4.0), (-17.25, 0.125), (1e6, -2.5e5)):
        anchors, hull = cover_at(t, x)
        assert x in anchors
        assert anchors == anchors_at(t, x)
        assert hull == hull_at(t, x)
        # Every cover is one shared offset table plus the center, bitwise:
        # no per-vertex re-derivation of the grid.
        assert anchors == [(o[0] + x[0], o[1] + x[1]) for o in t.corner_offsets]
        assert hull == [(v[0] + x[0], v[1] + x[1]) for v in t.hull]
        back = [(p[0] - x[0], p[1] - x[1]) for p in anchors]
        for b, o in zip(back, t.corner_offsets):
            assert b[0] == pytest.approx(o[0], abs=1e-9 * max(1.0, abs(x[0])))
            assert b[1] == pytest.approx(o[1], abs=1e-9 * max(1.0, abs(x[1])))


def test_anchor_distance_bound_example():
    t = make_template(1.0 - 1e-15, 1.0)
    anchors, _ = cover_at(t, (3.0, 4.0))
    for p in anchors:
        assert math.hypot(p[0] - 3.0, p[1] - 4.0) <= 2.0 + 1e-9


def test_cover_at_origin_matches_template():
    t = make_template(0.3, 2.0)
    anchors, hull = cover_at(t, (0.0, 0.0))
    assert anchors == list(t.corner_offsets)
    assert hull == list(t.hull)


def test_template_cache_reuses_instances():
    a = make_template(0.25, 1.0)
    b = make_template(0.25, 1.0)
    assert a is b
    c = make_template(0.25, 2.0)
    assert c is not a


def test_anchor_order_is_deterministic_grid_order():
    t = make_template(0.6, 1.0)
    offs = list(t.corner_offsets)
    keyed = sorted(offs, key=lambda o: (round(o[0] / t.cell_side), round(o[1] / t.cell_side)))
    assert offs == keyed
