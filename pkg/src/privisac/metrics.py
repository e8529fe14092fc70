"""Monte Carlo evaluation of eavesdropping success and of the cost of jamming to legitimate links.

Randomness
----------
Fading is drawn per *link* and per *block* of trials. A link is named by the
coordinates of its two end points, so the same physical link sees the same
fading sequence in every evaluation that shares a seed (common random
numbers across candidate placements). Trials are grouped into fixed blocks
of :data:`BLOCK_SIZE`; block ``b`` of link ``L`` draws from substream
``(seed, "fade", key(L), b)``. Per-block results are reduced by integer
counts in block order, which makes every estimate independent of the number
of worker threads.
"""
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._rng import coord_key, substream
from .channel import (FadingModel, beam_gain, cascaded_power, path_gain,
                      steering_vector, wrap_angle)
from .scenario import NodeRole, Placement, ScenarioError, bearing, distance

__all__ = [
    "EavesdropChannel", "PseEstimate", "ImpactReport", "ChannelRealization",
    "MissingLinkError", "BLOCK_SIZE", "serving_transmitter", "legit_links",
    "sinr_at", "estimate_pse", "measure_legit_impact", "ris_link_vectors",
    "beampattern_gain",
]

BLOCK_SIZE = 1024


class EavesdropChannel(enum.Enum):
    INFORMATION = "information"
    SENSING = "sensing"


class MissingLinkError(KeyError):
    """A realization was asked for a link it does not cover."""


@dataclass(frozen=True)
class PseEstimate:
    mean: float
    stderr: float
    trials: int
    successes: int

    @classmethod
    def from_counts(cls, successes, trials):
        p = successes / trials
        return cls(p, math.sqrt(p * (1.0 - p) / trials), trials, successes)


@dataclass(frozen=True)
class ImpactReport:
    mean_legit_sinr_loss_db: float
    legit_outage_delta: float
    trials: int


@lru_cache(maxsize=8192)
def _link_fades(seed, key, block):
    g = substream(seed, "fade", key, block).standard_exponential(BLOCK_SIZE)
    g.setflags(write=False)
    return g


def _link_key(src, dst):
    return coord_key(src.x, src.y, dst.x, dst.y)


class ChannelRealization:
    """Power fading gains for a set of links over one block of trials.

    ``gains`` maps ``(source_point, dest_point)`` to a scalar or an array
    with one entry per trial in the block.
    """

    def __init__(self, gains):
        self.gains = dict(gains)

    def __getitem__(self, link):
        try:
            return self.gains[link]
        except KeyError:
            src, dst = link
            raise MissingLinkError(
                f"no fading gain for link ({src.x}, {src.y}) -> ({dst.x}, {dst.y})") from None

    @classmethod
    def draw(cls, links, model, seed, block=0, n=BLOCK_SIZE):
        if model is FadingModel.NONE:
            return cls({link: 1.0 for link in links})
        return cls({link: _link_fades(seed, _link_key(*link), block)[:n] for link in links})


def serving_transmitter(scenario, node):
    """Transmitter nearest to ``node`` (first one wins ties)."""
    if not scenario.transmitters:
        raise ScenarioError("scenario has no transmitters")
    return min(scenario.transmitters, key=lambda t: distance(t, node))


def legit_links(scenario, channel):
    """``(source, destination)`` pairs whose signal the eavesdroppers try to capture."""
    dests = scenario.receivers if channel is EavesdropChannel.INFORMATION else scenario.sensing_targets
    return [(serving_transmitter(scenario, d), d) for d in dests]


def _interference(dest, placement, radio, realization):
    total = 0.0
    for j in placement:
        g = beam_gain(j.pattern, j.steering, bearing(j.position, dest))
        total = total + (radio.jam_power * g * realization[(j.position, dest)]
                         * path_gain(distance(j.position, dest), radio))
    return total


def sinr_at(dest, signal_source, scenario, placement, realization):
    """SINR at ``dest`` for the signal of ``signal_source`` under ``placement``.

    Transmitters are omnidirectional; jammer interference adds in power.
    Works elementwise when the realization holds per-trial arrays.
    """
    radio = scenario.radio
    signal = (radio.tx_power * realization[(signal_source, dest)]
              * path_gain(distance(signal_source, dest), radio))
    return signal / (_interference(dest, placement, radio, realization) + radio.noise_power)


def _blocks(trials):
    nb = -(-trials // BLOCK_SIZE)
    return [(b, min(BLOCK_SIZE, trials - b * BLOCK_SIZE)) for b in range(nb)]


def _map_blocks(fn, trials, workers):
    blocks = _blocks(trials)
    if workers <= 1 or len(blocks) == 1:
        return [fn(b, n) for b, n in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda bn: fn(*bn), blocks))


def estimate_pse(scenario, placement, channel, trials, seed, workers=1, aggregate="any"):
    """Monte Carlo probability of successful eavesdropping.

    A trial succeeds when the SINR of a captured legitimate signal reaches the
    scenario threshold at an eavesdropper. With ``aggregate="any"`` one success
    at any eavesdropper counts (defender's worst case) and a single
    :class:`PseEstimate` is returned; ``aggregate="each"`` returns one estimate
    per eavesdropper.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if aggregate not in ("any", "each"):
        raise ValueError(f"unknown aggregate {aggregate!r}")
    scenario.require(NodeRole.EAVESDROPPER, NodeRole.ISAC_TRANSMITTER)
    sources = legit_links(scenario, channel)
    if not sources:
        raise ScenarioError(f"no legitimate {channel.value} links to eavesdrop on")
    placement = placement if placement is not None else Placement()
    eves = scenario.eavesdroppers
    links = [(s, e) for e in eves for s, _ in sources]
    links += [(j.position, e) for e in eves for j in placement]
    tau = scenario.sinr_threshold

    def block(b, n):
        real = ChannelRealization.draw(links, scenario.fading, seed, b, n)
        hits = np.zeros((len(eves), n), dtype=bool)
        for i, e in enumerate(eves):
            for s, _ in sources:
                hits[i] |= sinr_at(e, s, scenario, placement, real) >= tau
        if aggregate == "any":
            return int(np.count_nonzero(hits.any(axis=0)))
        return np.count_nonzero(hits, axis=1)

    counts = _map_blocks(block, trials, workers)
    if aggregate == "any":
        return PseEstimate.from_counts(sum(counts), trials)
    total = np.sum(counts, axis=0)
    return [PseEstimate.from_counts(int(c), trials) for c in total]


def measure_legit_impact(scenario, placement, trials, seed, workers=1):
    """Paired with/without-jammer comparison of every receiver's SINR.

    Both arms reuse the same fading draws, so an empty placement gives
    exactly zero loss and zero outage change.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    scenario.require(NodeRole.COMM_RECEIVER, NodeRole.ISAC_TRANSMITTER)
    placement = placement if placement is not None else Placement()
    pairs = legit_links(scenario, EavesdropChannel.INFORMATION)
    links = list(pairs) + [(j.position, r) for _, r in pairs for j in placement]
    tau = scenario.sinr_threshold
    empty = Placement()

    def block(b, n):
        real = ChannelRealization.draw(links, scenario.fading, seed, b, n)
        loss = 0.0
        outage = 0
        for s, r in pairs:
            base = np.broadcast_to(sinr_at(r, s, scenario, empty, real), (n,))
            jam = np.broadcast_to(sinr_at(r, s, scenario, placement, real), (n,))
            loss += float(np.sum(10.0 * np.log10(base / jam)))
            outage += int(np.count_nonzero(jam < tau)) - int(np.count_nonzero(base < tau))
        return loss, outage

    parts = _map_blocks(block, trials, workers)
    norm = trials * len(pairs)
    loss = math.fsum(p[0] for p in parts) / norm
    return ImpactReport(loss, sum(p[1] for p in parts) / norm, trials)


def ris_link_vectors(scenario, source, probe):
    """Deterministic line-of-sight vectors for the direct + RIS paths.

    Returns ``(h_direct, h_tx_ris, a_ris_probe)`` in the convention of
    :func:`privisac.channel.cascaded_power`. Each link amplitude is the square
    root of its path gain times the carrier phase ``exp(-j 2pi d / wavelength)``.
    """
    if scenario.ris_position is None:
        raise ScenarioError("scenario has no RIS")
    radio, arr, ris = scenario.radio, scenario.ris_array, scenario.ris_position
    k = 2.0 * math.pi / arr.wavelength

    def los(a, b):
        d = distance(a, b)
        return math.sqrt(path_gain(d, radio)) * np.exp(-1j * k * d)

    theta_src = float(wrap_angle(bearing(ris, source) - arr.orientation))
    theta_dst = float(wrap_angle(bearing(ris, probe) - arr.orientation))
    h_t = los(source, ris) * steering_vector(arr, theta_src)
    a_r = np.conj(los(ris, probe) * steering_vector(arr, theta_dst))
    h_d = complex(los(source, probe)) if scenario.ris_direct_path else 0j
    return h_d, h_t, a_r


def beampattern_gain(power, scenario, phases, probe):
    """Received power at ``probe`` from the first transmitter via direct + RIS paths."""
    if scenario.ris_position is None:
        raise ScenarioError("scenario has no RIS")
    scenario.require(NodeRole.ISAC_TRANSMITTER)
    h_d, h_t, a_r = ris_link_vectors(scenario, scenario.transmitters[0], probe)
    return cascaded_power(power, h_d, h_t, a_r, phases)
