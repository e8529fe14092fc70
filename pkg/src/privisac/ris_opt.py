"""RIS phase design for private sensing zones.

The objective is ``J = g_user - tradeoff * g_target`` where each gain is the
received power through the direct path plus the RIS cascade. Writing the RIS
contribution of element ``n`` as ``c_n e^{j phi_n}`` with
``c_n = conj(a_n) * h_n``, and ``s`` for the field from everything except
element ``n``, each gain is

    g = P * (|s|^2 + |c_n|^2 + 2 Re(conj(s) c_n e^{j phi_n})),

so with the other phases held fixed ``J(phi_n) = const + 2P Re(z_n e^{j phi_n})``
with ``z_n = conj(s_user) c_user,n - tradeoff * conj(s_target) c_target,n``.
The minimizer is ``phi_n = pi - arg(z_n)``.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import substream
from .channel import PhaseProfile, cascaded_power
from .metrics import ris_link_vectors
from .scenario import NodeRole

__all__ = [
    "RisProblem", "RisResult", "BaselineKind", "evaluate", "coordinate_descent",
    "exhaustive_quantized", "baseline_phases", "optimize_phases", "problem_from_scenario",
    "MAX_LATTICE", "DEGENERATE_Z",
]

MAX_LATTICE = 2 ** 20
DEGENERATE_Z = 1e-15


@dataclass(frozen=True)
class RisProblem:
    h_t: np.ndarray
    a_user: np.ndarray
    a_target: np.ndarray
    h_d_user: complex = 0j
    h_d_target: complex = 0j
    tradeoff: float = 1.0
    power: float = 1.0

    def __post_init__(self):
        for name in ("h_t", "a_user", "a_target"):
            v = np.array(getattr(self, name), dtype=complex)
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        if not (self.h_t.ndim == 1 and self.h_t.shape == self.a_user.shape == self.a_target.shape):
            raise ValueError("h_t, a_user and a_target must be vectors of equal length")
        if self.tradeoff < 0:
            raise ValueError("tradeoff must be >= 0")

    @property
    def n(self):
        return self.h_t.size

    def scaled(self, power):
        return RisProblem(self.h_t, self.a_user, self.a_target, self.h_d_user,
                          self.h_d_target, self.tradeoff, power)

    def coeffs(self):
        return np.conj(self.a_user) * self.h_t, np.conj(self.a_target) * self.h_t


@dataclass(frozen=True)
class RisResult:
    phases: PhaseProfile
    g_user: float
    g_target: float
    objective: float
    trace: list = field(default_factory=list)


class BaselineKind(enum.Enum):
    RANDOM = "random"
    ZERO = "zero"
    ALIGN_TARGET = "align_target"


def evaluate(problem, phases):
    """Return ``(g_user, g_target, J)`` for a phase profile."""
    phi = phases.phases if isinstance(phases, PhaseProfile) else np.asarray(phases, float)
    if phi.shape != (problem.n,):
        raise ValueError(f"expected {problem.n} phases, got shape {phi.shape}")
    gu = cascaded_power(problem.power, problem.h_d_user, problem.h_t, problem.a_user, phi)
    gt = cascaded_power(problem.power, problem.h_d_target, problem.h_t, problem.a_target, phi)
    return gu, gt, gu - problem.tradeoff * gt


def _result(problem, phases, trace):
    prof = PhaseProfile(phases)
    gu, gt, j = evaluate(problem, prof)
    return RisResult(prof, gu, gt, j, trace)


def coordinate_descent(problem, init=None, tol=1e-8, max_sweeps=200, on_update=None):
    """Element-wise exact minimization of ``J`` over unit-modulus phases.

    Sweeps the elements in order until a sweep improves ``J`` by less than
    ``tol * (|J| + 1e-12)`` or ``max_sweeps`` is reached. ``init`` defaults to
    the target-aligned profile. ``on_update(n, J_before, J_after)`` is called
    after every element update when given.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be >= 1")
    if init is None:
        init = baseline_phases(BaselineKind.ALIGN_TARGET, problem)
    phi = np.array(init.phases if isinstance(init, PhaseProfile) else init, dtype=float)
    if phi.shape != (problem.n,):
        raise ValueError(f"expected {problem.n} phases, got shape {phi.shape}")
    phi = PhaseProfile(phi).phases.copy()

    # iterate at unit power so the returned phases do not depend on P
    unit = problem.scaled(1.0)
    cu, ct = problem.coeffs()
    lam = problem.tradeoff
    j = evaluate(unit, phi)[2]
    trace = [problem.power * j]
    for _ in range(max_sweeps):
        j_start = j
        e = np.exp(1j * phi)
        su = problem.h_d_user + np.sum(cu * e)
        st = problem.h_d_target + np.sum(ct * e)
        for n in range(problem.n):
            su_rest = su - cu[n] * e[n]
            st_rest = st - ct[n] * e[n]
            z = np.conj(su_rest) * cu[n] - lam * np.conj(st_rest) * ct[n]
            if abs(z) < DEGENERATE_Z:
                continue
            new = (math.pi - np.angle(z)) % (2.0 * math.pi)
            e_new = np.exp(1j * new)
            # skip no-op rotations so J cannot creep up through rounding
            if (z * e_new).real >= (z * e[n]).real:
                continue
            phi[n] = new
            e[n] = e_new
            su = su_rest + cu[n] * e_new
            st = st_rest + ct[n] * e_new
            if on_update is not None:
                j_new = evaluate(unit, phi)[2]
                on_update(n, problem.power * j, problem.power * j_new)
                j = j_new
        j = evaluate(unit, phi)[2]
        trace.append(problem.power * j)
        if j_start - j < tol * (abs(j) + 1e-12):
            break
    return _result(problem, phi, trace)


def exhaustive_quantized(problem, bits):
    """Exact minimum of ``J`` over phases restricted to ``{2 pi k / 2**bits}``."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    levels = 2 ** bits
    if problem.n * bits > 20 or levels ** problem.n > MAX_LATTICE:
        raise ValueError(f"lattice of {levels}^{problem.n} profiles exceeds {MAX_LATTICE}")
    lattice = 2.0 * math.pi * np.arange(levels) / levels
    unit = np.exp(1j * lattice)
    cu, ct = problem.coeffs()
    # contribution of element n at every level: shape (n, levels)
    ru = cu[:, None] * unit[None, :]
    rt = ct[:, None] * unit[None, :]

    best_j, best_code = math.inf, None
    chunk = 1 << 14
    total = levels ** problem.n
    powers = levels ** np.arange(problem.n)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total))
        digits = (codes[:, None] // powers[None, :]) % levels
        fu = problem.h_d_user + ru[np.arange(problem.n), digits].sum(axis=1)
        ft = problem.h_d_target + rt[np.arange(problem.n), digits].sum(axis=1)
        js = problem.power * np.abs(fu) ** 2 - problem.tradeoff * problem.power * np.abs(ft) ** 2
        i = int(np.argmin(js))
        if js[i] < best_j:
            best_j, best_code = float(js[i]), digits[i]
    return _result(problem, lattice[best_code], [])


def baseline_phases(kind, problem, seed=0):
    kind = BaselineKind(kind)
    if kind is BaselineKind.ZERO:
        return PhaseProfile(np.zeros(problem.n))
    if kind is BaselineKind.RANDOM:
        idx = seed if isinstance(seed, tuple) else (seed,)
        rng = substream(idx[0], "ris-random", *idx[1:])
        return PhaseProfile(rng.uniform(0.0, 2.0 * math.pi, problem.n))
    return PhaseProfile(-np.angle(np.conj(problem.a_target) * problem.h_t))


def problem_from_scenario(scenario, tradeoff=1.0, power=None):
    """RIS problem for the first transmitter, private user and sensing target."""
    scenario.require(NodeRole.ISAC_TRANSMITTER, NodeRole.PRIVATE_USER,
                     NodeRole.SENSING_TARGET, NodeRole.RIS)
    tx = scenario.transmitters[0]
    hdu, h_t, a_u = ris_link_vectors(scenario, tx, scenario.private_users[0])
    hdt, _, a_t = ris_link_vectors(scenario, tx, scenario.sensing_targets[0])
    power = scenario.radio.tx_power if power is None else power
    return RisProblem(h_t, a_u, a_t, hdu, hdt, tradeoff, power)


def optimize_phases(problem, init=None, restarts=6, seed=0, tol=1e-8, max_sweeps=200):
    """Multi-start coordinate descent; returns the best local optimum found.

    Starts from ``init`` (target-aligned by default), the all-zero profile and
    ``restarts`` seeded random profiles.
    """
    starts = [init, baseline_phases(BaselineKind.ZERO, problem)]
    starts += [baseline_phases(BaselineKind.RANDOM, problem, seed=(seed, r)) for r in range(restarts)]
    best = None
    for s in starts:
        res = coordinate_descent(problem, s, tol=tol, max_sweeps=max_sweeps)
        if best is None or res.objective < best.objective:
            best = res
    return best
