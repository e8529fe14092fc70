import math

import numpy as np
import pytest

from privisac.channel import BeamPattern, FadingModel
from privisac.scenario import Point2D, RadioParams, Region, Scenario, load_scenario


def random_grid_scenario(index, side=90.0):
    """Small deterministic-fading world used by the ACO-vs-oracle checks."""
    rng = np.random.default_rng([7, index])

    def pt():
        return Point2D(*rng.uniform(0.0, side, 2))

    return Scenario(
        region=Region(0.0, side, 0.0, side),
        transmitters=[pt(), pt()],
        receivers=[pt()],
        sensing_targets=[pt()],
        eavesdroppers=[pt() for _ in range(int(rng.integers(1, 4)))],
        fading=FadingModel.NONE,
        jammer_pattern=BeamPattern.sector(8.0, math.radians(15.0)),
    )


def single_link(d, tau=1.0, fading=FadingModel.RAYLEIGH, radio=None):
    """One transmitter at the origin, its receiver next to it, one eavesdropper at distance d."""
    return Scenario(
        region=Region(-10.0, d + 10.0, -10.0, 10.0),
        transmitters=[Point2D(0.0, 0.0)],
        receivers=[Point2D(0.0, 1.0)],
        sensing_targets=[Point2D(0.0, -1.0)],
        eavesdroppers=[Point2D(d, 0.0)],
        radio=radio or RadioParams(),
        sinr_threshold=tau,
        fading=fading,
    )


@pytest.fixture(scope="session")
def fig3():
    return load_scenario("default_fig3")


@pytest.fixture(scope="session")
def fig4():
    return load_scenario("default_fig4")


ACCEPTANCE_LINES = []


def acceptance(number, name, ok, detail):
    """Record and print one criterion verdict, then assert it."""
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
