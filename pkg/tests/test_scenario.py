import math

import numpy as np
import pytest

from privisac._rng import substream
from privisac.scenario import (NodeRole, Point2D, Region, ScenarioError, build_scenario,
                               distance, load_scenario, sample_hppp)


def base_config(**extra):
    cfg = {
        "seed": 3,
        "sinr_threshold_db": 0.0,
        "region": {"x_min": -100.0, "x_max": 100.0, "y_min": -100.0, "y_max": 100.0},
        "transmitters": {"positions": [[0.0, 0.0]]},
        "eavesdroppers": {"positions": [[50.0, 0.0]]},
    }
    cfg.update(extra)
    return cfg


def test_distance_examples():
    assert distance(Point2D(0, 0), Point2D(0, 0)) == 0
    assert distance(Point2D(0, 0), Point2D(3, 4)) == 5
    assert distance(Point2D(1, 1), Point2D(-2, 5)) == 5


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point2D(float("nan"), 0.0)


def test_region_allows_zero_area_but_not_inverted():
    assert Region(1, 1, 2, 2).area == 0
    with pytest.raises(ValueError):
        Region(1, 0, 0, 1)


def test_hppp_zero_density_and_zero_area():
    rng = substream(1, "t")
    assert sample_hppp(0.0, Region(0, 100, 0, 100), rng) == ()
    assert sample_hppp(5.0, Region(0, 0, 0, 100), rng) == ()


def test_hppp_negative_density():
    with pytest.raises(ValueError):
        sample_hppp(-1e-3, Region(0, 1, 0, 1), substream(1, "t"))


def test_hppp_deterministic_per_stream():
    reg = Region(0, 100, 0, 100)
    assert sample_hppp(1e-2, reg, substream(9, "h")) == sample_hppp(1e-2, reg, substream(9, "h"))


def test_hppp_count_statistics():
    # mean 100, std of the sample mean over 1e4 draws is 0.1
    reg = Region(0, 100, 0, 100)
    counts = np.array([len(sample_hppp(1e-2, reg, substream(11, "hppp-count", i)))
                       for i in range(10_000)])
    assert abs(counts.mean() - 100.0) <= 3.0
    assert abs(counts.var(ddof=1) - 100.0) <= 5.0


def test_hppp_quadrant_uniformity():
    reg = Region(-50, 50, -50, 50)
    pts = []
    for i in range(1000):
        pts.extend(sample_hppp(1e-2, reg, substream(12, "hppp-quad", i)))
    xy = np.array([(p.x, p.y) for p in pts])
    assert len(xy) >= 95_000
    quad = (xy[:, 0] >= 0).astype(int) * 2 + (xy[:, 1] >= 0).astype(int)
    frac = np.bincount(quad, minlength=4) / len(xy)
    assert np.all(np.abs(frac - 0.25) <= 0.02)
    assert np.all([reg.contains(p) for p in pts[:1000]])


def test_build_copies_fixed_nodes():
    s = build_scenario(base_config())
    assert s.transmitters == (Point2D(0, 0),)
    assert s.eavesdroppers == (Point2D(50, 0),)
    assert s.sinr_threshold == 1.0


def test_node_outside_region_is_named():
    cfg = base_config(receivers={"positions": [[0.0, 0.0], [500.0, 0.0]]})
    with pytest.raises(ScenarioError, match=r"receivers\[1\]"):
        build_scenario(cfg)


def test_missing_required_role():
    with pytest.raises(ScenarioError, match="sensing_targets"):
        build_scenario(base_config(), require=[NodeRole.SENSING_TARGET])


def test_density_deployment_is_deterministic():
    cfg = base_config(region={"x_min": 0.0, "x_max": 200.0, "y_min": 0.0, "y_max": 200.0},
                      transmitters={"density": 1e-3},
                      eavesdroppers={"positions": [[50.0, 0.0]]})
    a, b = build_scenario(cfg), build_scenario(cfg)
    assert a == b
    assert len(a.transmitters) > 0
    other = build_scenario(dict(cfg, seed=4))
    assert other.transmitters != a.transmitters


def test_db_conversions_and_units():
    cfg = base_config(sinr_threshold_db=10.0,
                      radio={"tx_power_dbm": 30.0, "noise_power_w": 2e-9,
                             "reference_gain_db": -20.0})
    s = build_scenario(cfg)
    assert s.sinr_threshold == pytest.approx(10.0)
    assert s.radio.tx_power == pytest.approx(1.0)
    assert s.radio.noise_power == 2e-9
    assert s.radio.reference_gain == pytest.approx(1e-2)


@pytest.mark.parametrize("radio", [
    {"tx_power_w": 0.0}, {"pathloss_exponent": 7.0}, {"min_distance_m": 0.0},
])
def test_radio_validation(radio):
    with pytest.raises(ScenarioError):
        build_scenario(base_config(radio=radio))


def test_both_positions_and_density_rejected():
    cfg = base_config(receivers={"positions": [[0.0, 0.0]], "density": 1e-3})
    with pytest.raises(ScenarioError):
        build_scenario(cfg)


def test_scenario_is_frozen(fig3):
    with pytest.raises(AttributeError):
        fig3.sinr_threshold = 3.0


def test_bundled_defaults(fig3, fig4):
    assert fig3.region.width == 200 and fig3.region.height == 200
    assert len(fig3.eavesdroppers) == 3
    assert len(fig3.receivers) == 1 and len(fig3.sensing_targets) == 1
    assert fig3.sinr_threshold == 1.0
    assert fig3.radio.jam_power == 0.5 and fig3.radio.pathloss_exponent == 3.0
    assert fig4.ris_array.n_elements == 64
    ris = fig4.ris_position
    assert distance(ris, fig4.private_users[0]) == pytest.approx(50.0)
    assert distance(ris, fig4.sensing_targets[0]) == pytest.approx(50.0)
    assert math.degrees(math.atan2(fig4.private_users[0].y, fig4.private_users[0].x)) == pytest.approx(30.0)


def test_load_from_path(tmp_path):
    p = tmp_path / "s.toml"
    p.write_text('seed = 1\n[region]\nx_min = 0\nx_max = 10\ny_min = 0\ny_max = 10\n'
                 '[eavesdroppers]\npositions = [[1, 1]]\n')
    s = load_scenario(p)
    assert s.eavesdroppers == (Point2D(1, 1),)
