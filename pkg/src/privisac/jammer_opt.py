"""Friendly-jammer placement.

Three strategies share one objective (:func:`evaluate_placement`):

* :func:`fixed_placement` -- a deterministic ring around the protected zone;
* :func:`aco_optimize` -- ant colony search over a grid of candidate cells;
* :func:`brute_force_placement` -- exhaustive enumeration, used as an oracle.

Every candidate is evaluated with the same seed, so within one run the noisy
Monte Carlo objective becomes a deterministic function of the chosen cells.
"""
import math
from dataclasses import dataclass, fields
from itertools import combinations
from typing import NamedTuple

import numpy as np

from ._rng import substream
from .metrics import EavesdropChannel, estimate_pse, measure_legit_impact
from .scenario import Jammer, Placement, Point2D, bearing, distance

__all__ = [
    "Jammer", "Placement", "CandidateGrid", "AcoParams", "PlacementObjective",
    "AcoResult", "SearchSpaceError", "fixed_placement", "evaluate_placement",
    "aco_optimize", "brute_force_placement", "steer_to_nearest_eavesdropper",
    "ring_positions", "protected_centroid", "SearchResult",
]

MAX_SUBSETS = 100_000


class SearchSpaceError(ValueError):
    """Refusal to enumerate an oversized search space."""


@dataclass(frozen=True)
class CandidateGrid:
    cells: tuple
    resolution: float

    @classmethod
    def from_region(cls, region, resolution):
        """Centers of a ``resolution``-sized tiling, edge cells clipped to the region."""
        if not resolution > 0:
            raise ValueError("grid resolution must be > 0")
        nx = math.ceil(region.width / resolution)
        ny = math.ceil(region.height / resolution)
        cells = []
        for iy in range(ny):
            y0 = region.y_min + iy * resolution
            y1 = min(y0 + resolution, region.y_max)
            for ix in range(nx):
                x0 = region.x_min + ix * resolution
                x1 = min(x0 + resolution, region.x_max)
                cells.append(Point2D(0.5 * (x0 + x1), 0.5 * (y0 + y1)))
        return cls(tuple(cells), float(resolution))

    def with_points(self, points):
        """Grid extended by extra candidate points (duplicates dropped)."""
        seen = set(self.cells)
        extra = []
        for p in points:
            if p not in seen:
                seen.add(p)
                extra.append(p)
        return CandidateGrid(self.cells + tuple(extra), self.resolution)

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class AcoParams:
    n_ants: int = 10
    n_iterations: int = 30
    evaporation: float = 0.2
    pheromone_init: float = 1.0
    heuristic_weight: float = 0.5
    exploitation_prob: float = 0.3
    penalty_weight: float = 0.1
    impact_budget: float = 3.0

    def __post_init__(self):
        if self.n_ants < 1 or self.n_iterations < 1:
            raise ValueError("n_ants and n_iterations must be >= 1")
        if not 0.0 < self.evaporation <= 1.0:
            raise ValueError("evaporation must lie in (0, 1]")
        if not self.pheromone_init > 0:
            raise ValueError("pheromone_init must be > 0")
        if self.heuristic_weight < 0 or self.penalty_weight < 0:
            raise ValueError("heuristic and penalty weights must be >= 0")
        if not 0.0 <= self.exploitation_prob <= 1.0:
            raise ValueError("exploitation_prob must lie in [0, 1]")

    @classmethod
    def from_mapping(cls, section):
        """Build from an ``[aco]`` config section, ignoring non-ACO keys."""
        aliases = {"impact_budget_db": "impact_budget"}
        names = {f.name: f.type for f in fields(cls)}
        kw = {}
        for key, value in section.items():
            key = aliases.get(key, key)
            if key in names:
                kw[key] = int(value) if key in ("n_ants", "n_iterations") else float(value)
        return cls(**kw)


@dataclass(frozen=True)
class PlacementObjective:
    pse: float
    impact_db: float
    j: float
    pse_info: float = float("nan")
    pse_sense: float = float("nan")

    def key(self):
        # impact breaks ties between equally private placements
        return (self.j, self.impact_db)


class AcoResult(NamedTuple):
    placement: Placement
    objective: PlacementObjective
    trace: list
    pheromone: np.ndarray = None
    pheromone_range: list = None
    cells: tuple = ()
    ants: list = None


class SearchResult(NamedTuple):
    placement: Placement
    objective: PlacementObjective
    cells: tuple


def steer_to_nearest_eavesdropper(scenario, position, fallback):
    if not scenario.eavesdroppers:
        return fallback
    eve = min(scenario.eavesdroppers, key=lambda e: distance(position, e))
    return bearing(position, eve)


def protected_centroid(scenario):
    users = scenario.private_users
    if not users:
        return scenario.region.center
    return Point2D(sum(p.x for p in users) / len(users), sum(p.y for p in users) / len(users))


def ring_positions(scenario, k):
    reg = scenario.region
    c = protected_centroid(scenario)
    r = 0.4 * min(reg.width, reg.height)
    out = []
    for i in range(k):
        a = 2.0 * math.pi * i / k
        x = min(max(c.x + r * math.cos(a), reg.x_min), reg.x_max)
        y = min(max(c.y + r * math.sin(a), reg.y_min), reg.y_max)
        out.append(Point2D(x, y))
    return out


def fixed_placement(scenario, k):
    """``k`` jammers evenly spaced on a ring around the protected zone.

    The ring has radius ``0.4 * min(width, height)`` and is centered on the
    centroid of the private users (region center if there are none). Each
    jammer steers at its nearest eavesdropper, or radially outward.
    """
    if k < 0:
        raise ValueError("jammer count must be >= 0")
    jammers = []
    for i, p in enumerate(ring_positions(scenario, k)):
        outward = 2.0 * math.pi * i / k
        steer = steer_to_nearest_eavesdropper(scenario, p, outward)
        jammers.append(Jammer(p, steer, scenario.jammer_pattern))
    return Placement(jammers)


def _placement_from_cells(scenario, grid, cells):
    jammers = []
    for idx in sorted(cells):
        p = grid.cells[idx]
        steer = steer_to_nearest_eavesdropper(scenario, p, bearing(protected_centroid(scenario), p))
        jammers.append(Jammer(p, steer, scenario.jammer_pattern))
    return Placement(jammers)


def evaluate_placement(scenario, placement, params, trials, seed, workers=1):
    """Penalized objective ``J = pse + mu * max(0, impact_db - budget)``.

    ``pse`` is the equal-weight mean of the information- and sensing-channel
    estimates.
    """
    info = estimate_pse(scenario, placement, EavesdropChannel.INFORMATION, trials, seed, workers)
    sense = estimate_pse(scenario, placement, EavesdropChannel.SENSING, trials, seed, workers)
    pse = 0.5 * (info.mean + sense.mean)
    impact = measure_legit_impact(scenario, placement, trials, seed, workers).mean_legit_sinr_loss_db
    j = pse + params.penalty_weight * max(0.0, impact - params.impact_budget)
    return PlacementObjective(pse, impact, j, info.mean, sense.mean)


class _Evaluator:
    """Memoized objective over canonical (sorted) cell subsets."""

    def __init__(self, scenario, grid, params, trials, seed, workers):
        self.args = (scenario, grid, params, trials, seed, workers)
        self.cache = {}

    def __call__(self, cells):
        key = tuple(sorted(cells))
        if key not in self.cache:
            scenario, grid, params, trials, seed, workers = self.args
            placement = _placement_from_cells(scenario, grid, key)
            self.cache[key] = (placement, evaluate_placement(
                scenario, placement, params, trials, seed, workers))
        return self.cache[key]


def aco_optimize(scenario, k, grid, params, trials, seed, workers=1):
    """Ant colony search for the best ``k``-subset of grid cells.

    Each ant picks cells one at a time without replacement. With probability
    ``exploitation_prob`` it takes the cell maximizing
    ``pheromone * heuristic**beta`` (heuristic ``1 / (1 + distance to nearest
    eavesdropper)``), otherwise it samples proportionally to that score. After
    every iteration all trails evaporate by ``(1 - rho)`` and the global-best
    cells receive ``1 / (J_best + 1e-6)``.

    Returns an :class:`AcoResult`; ``trace[i]`` is the best ``J`` after
    iteration ``i``.
    """
    n = len(grid)
    if k > n:
        raise ValueError(f"cannot place {k} jammers on {n} candidate cells")
    if k < 0:
        raise ValueError("jammer count must be >= 0")
    evaluate = _Evaluator(scenario, grid, params, trials, seed, workers)
    if k == 0:
        placement, obj = evaluate(())
        return AcoResult(placement, obj, [obj.j] * params.n_iterations, cells=())

    if scenario.eavesdroppers:
        eta = np.array([1.0 / (1.0 + min(distance(c, e) for e in scenario.eavesdroppers))
                        for c in grid.cells])
    else:
        eta = np.ones(n)
    eta_b = eta ** params.heuristic_weight
    tau = np.full(n, params.pheromone_init)
    tau_floor = params.pheromone_init * 1e-12
    rng = substream(seed, "aco", k, n)

    best_cells, best_obj, best_plc = None, None, None
    trace, tau_range, history = [], [], []
    for _ in range(params.n_iterations):
        built = []
        for _ant in range(params.n_ants):
            avail = np.ones(n, dtype=bool)
            chosen = []
            for _step in range(k):
                idx = np.flatnonzero(avail)
                score = tau[idx] * eta_b[idx]
                if rng.random() < params.exploitation_prob:
                    pick = idx[int(np.argmax(score))]
                else:
                    total = score.sum()
                    if total > 0 and np.isfinite(total):
                        pick = idx[min(int(np.searchsorted(np.cumsum(score) / total, rng.random(),
                                                           side="right")), idx.size - 1)]
                    else:
                        pick = idx[int(rng.integers(idx.size))]
                chosen.append(int(pick))
                avail[pick] = False
            plc, obj = evaluate(chosen)
            built.append(tuple(sorted(chosen)))
            if best_obj is None or obj.key() < best_obj.key():
                best_cells, best_obj, best_plc = tuple(sorted(chosen)), obj, plc
        deposit = 1.0 / (best_obj.j + 1e-6)
        tau *= 1.0 - params.evaporation
        tau[list(best_cells)] += deposit
        # max-min trail limits keep a J ~ 0 deposit from freezing exploration
        tau_max = deposit / params.evaporation
        np.clip(tau, max(tau_max / (2.0 * n), tau_floor), tau_max, out=tau)
        trace.append(best_obj.j)
        tau_range.append((float(tau.min()), float(tau.max())))
        history.append(built)
    return AcoResult(best_plc, best_obj, trace, tau.copy(), tau_range, best_cells, history)


def brute_force_placement(scenario, k, grid, trials, seed, params=None, workers=1):
    """Exact minimizer of the objective over every ``k``-subset of grid cells."""
    n = len(grid)
    if k < 0 or k > n:
        raise ValueError(f"cannot place {k} jammers on {n} candidate cells")
    count = math.comb(n, k)
    if count > MAX_SUBSETS:
        raise SearchSpaceError(f"C({n}, {k}) = {count} subsets exceeds the {MAX_SUBSETS} limit")
    params = params or AcoParams()
    evaluate = _Evaluator(scenario, grid, params, trials, seed, workers)
    best = None
    for cells in combinations(range(n), k):
        plc, obj = evaluate(cells)
        if best is None or obj.key() < best[1].key():
            best = SearchResult(plc, obj, cells)
    return best
