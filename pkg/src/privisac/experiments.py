"""Parameter sweeps: PSE versus jammer count, and RIS gains versus transmit power.

Each runner returns a :class:`SweepResult` holding the table that
:func:`run_experiment` hands to :func:`privisac.report.emit_outputs`. Results
depend only on the scenario, the experiment spec and the package version.
The worker count never changes a value.
"""
import enum
import hashlib
import platform
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .jammer_opt import (AcoParams, CandidateGrid, aco_optimize, fixed_placement,
                         ring_positions)
from .metrics import EavesdropChannel, estimate_pse, measure_legit_impact
from .report import emit_outputs
from .ris_opt import (BaselineKind, baseline_phases, evaluate, optimize_phases,
                      problem_from_scenario)
from .scenario import NodeRole, ScenarioError, load_config, build_scenario

__all__ = [
    "ExperimentKind", "ExperimentSpec", "SweepResult", "JAMMER_COLUMNS", "RIS_COLUMNS",
    "SINGLE_COLUMNS", "run_jammer_sweep", "run_ris_power_sweep", "run_single",
    "run_experiment", "ris_settings",
]

JAMMER_COLUMNS = (
    "k", "pse_info_fixed", "pse_sense_fixed", "pse_info_aco", "pse_sense_aco",
    "impact_fixed_db", "impact_aco_db", "stderr_info_fixed", "stderr_sense_fixed",
    "stderr_info_aco", "stderr_sense_aco",
)
RIS_COLUMNS = ("P", "g_user_opt", "g_target_opt", "g_user_random", "g_target_random")
SINGLE_COLUMNS = ("k", "pse_info", "stderr_info", "pse_sense", "stderr_sense",
                  "impact_db", "outage_delta")

DEFAULT_GRID_RESOLUTION = 25.0
DEFAULT_ACO_TRIALS = 1000


class ExperimentKind(enum.Enum):
    JAMMER_SWEEP = "jammer-sweep"
    RIS_POWER_SWEEP = "ris-power-sweep"
    SINGLE = "single"


@dataclass(frozen=True)
class ExperimentSpec:
    kind: ExperimentKind
    swept_values: tuple
    trials: int = 10_000
    seed: int = 0
    scenario_path: str = "default_fig3"
    output_dir: str = "out"
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", ExperimentKind(self.kind))
        vals = tuple(self.swept_values)
        if not vals:
            raise ValueError("swept values must not be empty")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("swept values must be strictly increasing")
        if self.kind is not ExperimentKind.RIS_POWER_SWEEP:
            if any(v != int(v) or v < 0 for v in vals):
                raise ValueError("jammer counts must be non-negative integers")
            vals = tuple(int(v) for v in vals)
        else:
            if any(not v >= 0 for v in vals):
                raise ValueError("transmit powers must be >= 0")
            vals = tuple(float(v) for v in vals)
        object.__setattr__(self, "swept_values", vals)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SweepResult:
    columns: tuple
    rows: list
    resolved: dict = field(default_factory=dict)
    extra_tables: dict = field(default_factory=dict)


def _load(spec, roles):
    cfg = load_config(spec.scenario_path)
    return build_scenario(cfg, require=roles)


def _aco_settings(scenario):
    sec = scenario.section("aco")
    try:
        params = AcoParams.from_mapping(sec)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"aco: {exc}") from exc
    res = float(sec.get("grid_resolution_m", DEFAULT_GRID_RESOLUTION))
    trials = int(sec.get("trials", DEFAULT_ACO_TRIALS))
    if not res > 0 or trials < 1:
        raise ScenarioError("aco: grid_resolution_m must be > 0 and trials >= 1")
    return params, res, trials


def run_jammer_sweep(spec, scenario=None):
    """PSE and legitimate impact of fixed and ACO placements for each jammer count.

    ACO searches with the ``[aco] trials`` budget; both placements are then
    scored with ``spec.trials`` on the same seed.
    """
    roles = (NodeRole.ISAC_TRANSMITTER, NodeRole.EAVESDROPPER,
             NodeRole.COMM_RECEIVER, NodeRole.SENSING_TARGET)
    if scenario is None:
        scenario = _load(spec, roles)
    else:
        scenario.require(*roles)
    params, res, aco_trials = _aco_settings(scenario)
    base_grid = CandidateGrid.from_region(scenario.region, res)
    seed, trials, workers = spec.seed, spec.trials, spec.workers

    def score(placement):
        info = estimate_pse(scenario, placement, EavesdropChannel.INFORMATION, trials, seed, workers)
        sense = estimate_pse(scenario, placement, EavesdropChannel.SENSING, trials, seed, workers)
        imp = measure_legit_impact(scenario, placement, trials, seed, workers)
        return info, sense, imp

    rows, trace_rows = [], []
    for k in spec.swept_values:
        grid = base_grid.with_points(ring_positions(scenario, k))
        if k > len(grid):
            raise ValueError(f"{k} jammers exceed the {len(grid)} candidate cells")
        fi, fs, fimp = score(fixed_placement(scenario, k))
        aco = aco_optimize(scenario, k, grid, params, aco_trials, seed, workers)
        ai, as_, aimp = score(aco.placement)
        rows.append((k, fi.mean, fs.mean, ai.mean, as_.mean,
                     fimp.mean_legit_sinr_loss_db, aimp.mean_legit_sinr_loss_db,
                     fi.stderr, fs.stderr, ai.stderr, as_.stderr))
        trace_rows.extend((k, i + 1, j) for i, j in enumerate(aco.trace))
    resolved = {f"aco.{k}": v for k, v in params.__dict__.items()}
    resolved.update({"aco.grid_resolution_m": res, "aco.trials": aco_trials,
                     "scenario.n_transmitters": len(scenario.transmitters)})
    return SweepResult(JAMMER_COLUMNS, rows, resolved,
                       {"aco_trace.csv": (("k", "iteration", "best_j"), trace_rows)})


def ris_settings(scenario):
    sec = scenario.section("ris")
    try:
        out = {
            "tradeoff": float(sec.get("tradeoff", 1.0)),
            "init": BaselineKind(sec.get("init", "align_target")),
            "restarts": int(sec.get("restarts", 6)),
            "tol": float(sec.get("tol", 1e-8)),
            "max_sweeps": int(sec.get("max_sweeps", 200)),
        }
    except ValueError as exc:
        raise ScenarioError(f"ris: {exc}") from exc
    if out["tradeoff"] < 0 or not out["tol"] > 0 or out["max_sweeps"] < 1 or out["restarts"] < 0:
        raise ScenarioError("ris: tradeoff >= 0, tol > 0, max_sweeps >= 1, restarts >= 0 required")
    return out


def run_ris_power_sweep(spec, scenario=None):
    """Optimize the RIS once at the scenario transmit power, then scale.

    The optimal profile does not depend on the power, so every row reuses
    it; each gain column is exactly proportional to ``P``.
    """
    roles = (NodeRole.ISAC_TRANSMITTER, NodeRole.PRIVATE_USER,
             NodeRole.SENSING_TARGET, NodeRole.RIS)
    if scenario is None:
        cfg = load_config(spec.scenario_path)
        if "position" not in cfg.get("ris", {}):
            raise ScenarioError("scenario has no RIS")
        scenario = build_scenario(cfg, require=roles)
    else:
        scenario.require(*roles)
    st = ris_settings(scenario)
    problem = problem_from_scenario(scenario, st["tradeoff"])
    init = baseline_phases(st["init"], problem, spec.seed)
    opt = optimize_phases(problem, init, restarts=st["restarts"], seed=spec.seed,
                          tol=st["tol"], max_sweeps=st["max_sweeps"])
    rand = baseline_phases(BaselineKind.RANDOM, problem, spec.seed)
    rows = []
    for p in spec.swept_values:
        scaled = problem.scaled(p)
        gu, gt, _ = evaluate(scaled, opt.phases)
        ru, rt, _ = evaluate(scaled, rand)
        rows.append((p, gu, gt, ru, rt))
    resolved = {f"ris.{k}": (v.value if isinstance(v, enum.Enum) else v) for k, v in st.items()}
    resolved.update({"ris.n_elements": problem.n, "ris.sweeps": len(opt.trace) - 1,
                     "ris.direct_path": scenario.ris_direct_path})
    return SweepResult(RIS_COLUMNS, rows, resolved)


def run_single(spec, scenario=None):
    """PSE and impact of the fixed ring placement for each listed jammer count."""
    roles = (NodeRole.ISAC_TRANSMITTER, NodeRole.EAVESDROPPER,
             NodeRole.COMM_RECEIVER, NodeRole.SENSING_TARGET)
    if scenario is None:
        scenario = _load(spec, roles)
    else:
        scenario.require(*roles)
    rows = []
    for k in spec.swept_values:
        plc = fixed_placement(scenario, k)
        info = estimate_pse(scenario, plc, EavesdropChannel.INFORMATION, spec.trials, spec.seed, spec.workers)
        sense = estimate_pse(scenario, plc, EavesdropChannel.SENSING, spec.trials, spec.seed, spec.workers)
        imp = measure_legit_impact(scenario, plc, spec.trials, spec.seed, spec.workers)
        rows.append((k, info.mean, info.stderr, sense.mean, sense.stderr,
                     imp.mean_legit_sinr_loss_db, imp.legit_outage_delta))
    return SweepResult(SINGLE_COLUMNS, rows)


_RUNNERS = {
    ExperimentKind.JAMMER_SWEEP: (run_jammer_sweep, "PSE versus number of friendly jammers"),
    ExperimentKind.RIS_POWER_SWEEP: (run_ris_power_sweep, "Sensing beampattern gain versus transmit power"),
    ExperimentKind.SINGLE: (run_single, "Fixed-placement evaluation"),
}


def _scenario_digest(path):
    p = Path(path)
    if p.is_file():
        return hashlib.sha256(p.read_bytes()).hexdigest()
    return "bundled:" + str(path)


def run_experiment(spec):
    """Run ``spec`` and write its outputs; returns ``(SweepResult, written paths)``."""
    runner, title = _RUNNERS[spec.kind]
    t0 = time.perf_counter()
    result = runner(spec)
    elapsed = time.perf_counter() - t0
    manifest = {
        "tool": "privisac",
        "version": __version__,
        "experiment": spec.kind.value,
        "scenario": spec.scenario_path,
        "scenario_sha256": _scenario_digest(spec.scenario_path),
        "values": ",".join(str(v) for v in spec.swept_values),
        "trials": spec.trials,
        "seed": spec.seed,
        "workers": spec.workers,
    }
    manifest.update({f"resolved.{k}": v for k, v in result.resolved.items()})
    manifest.update({
        "python": platform.python_version(),
        "numpy": np.__version__,
        "wall_clock_s": f"{elapsed:.3f}",
    })
    written = emit_outputs(result.columns, result.rows, manifest, spec.output_dir,
                           result.extra_tables, title=title)
    return result, written
