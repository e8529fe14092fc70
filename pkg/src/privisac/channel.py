"""Radio propagation primitives.

Large-scale log-distance path loss, Rayleigh power fading, two-level sector
beams for the friendly jammers, planar-array steering vectors and the
direct + RIS cascaded received power.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FadingModel", "BeamPattern", "RisArray", "PhaseProfile",
    "path_gain", "sample_fading", "beam_gain", "wrap_angle",
    "steering_vector", "cascaded_power",
]

TWO_PI = 2.0 * math.pi


class FadingModel(enum.Enum):
    NONE = "none"
    RAYLEIGH = "rayleigh"


def wrap_angle(a):
    """Map an angle (or array of angles) to [-pi, pi)."""
    return (np.asarray(a) + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class BeamPattern:
    """Flat-top sector beam, or an omnidirectional pattern.

    For a sector the side-lobe gain is fixed by energy conservation,
    ``G_m * w / 2pi + G_s * (1 - w / 2pi) = 1`` with ``w = 2 * half_beamwidth``.
    Build sectors with :meth:`sector` rather than the raw constructor.
    """

    kind: str = "omni"
    main_gain: float = 1.0
    side_gain: float = 1.0
    half_beamwidth: float = math.pi

    def __post_init__(self):
        if self.kind not in ("omni", "sector"):
            raise ValueError(f"unknown beam kind {self.kind!r}")
        if self.kind == "sector":
            if not 0.0 < self.half_beamwidth < math.pi:
                raise ValueError("sector half beamwidth must lie in (0, pi)")
            if not self.main_gain > self.side_gain > 0.0:
                raise ValueError(
                    f"sector needs main_gain > side_gain > 0, got "
                    f"{self.main_gain} and {self.side_gain}")
            if abs(self.normalization() - 1.0) > 1e-12:
                raise ValueError("sector gains violate energy normalization")

    @classmethod
    def omni(cls):
        return cls()

    @classmethod
    def sector(cls, main_gain, half_beamwidth):
        frac = 2.0 * half_beamwidth / TWO_PI
        side = (1.0 - main_gain * frac) / (1.0 - frac)
        return cls("sector", float(main_gain), side, float(half_beamwidth))

    @classmethod
    def sector_from_side(cls, side_gain, half_beamwidth):
        """Sector whose main-lobe gain is fixed by a chosen side-lobe gain."""
        frac = 2.0 * half_beamwidth / TWO_PI
        main = (1.0 - side_gain * (1.0 - frac)) / frac
        return cls("sector", main, float(side_gain), float(half_beamwidth))

    @property
    def beamwidth(self):
        return 2.0 * self.half_beamwidth

    def normalization(self):
        """Left-hand side of the energy identity (1 for a valid pattern)."""
        if self.kind == "omni":
            return 1.0
        frac = self.beamwidth / TWO_PI
        return self.main_gain * frac + self.side_gain * (1.0 - frac)


def beam_gain(pattern, steering, toward):
    """Gain of ``pattern`` steered at ``steering`` in direction ``toward`` (radians)."""
    if pattern.kind == "omni":
        if np.ndim(toward) == 0 and np.ndim(steering) == 0:
            return 1.0
        return np.ones(np.broadcast(np.asarray(steering), np.asarray(toward)).shape)
    offset = np.abs(wrap_angle(np.asarray(toward) - np.asarray(steering)))
    g = np.where(offset <= pattern.half_beamwidth, pattern.main_gain, pattern.side_gain)
    return float(g) if g.ndim == 0 else g


def path_gain(d, radio):
    """Log-distance power gain ``c0 * (max(d, d_min) / d0) ** -alpha``."""
    d = np.maximum(d, radio.min_distance)
    g = radio.reference_gain * (d / radio.reference_distance) ** (-radio.pathloss_exponent)
    return float(g) if np.ndim(g) == 0 else g


def sample_fading(model, rng, size=None):
    """Power fading gain: 1 for ``NONE``, Exp(1) draws for ``RAYLEIGH``."""
    if model is FadingModel.NONE:
        return 1.0 if size is None else np.ones(size)
    return rng.standard_exponential(size)


@dataclass(frozen=True)
class RisArray:
    """Planar RIS of ``n_rows x n_cols`` elements lying in the vertical plane.

    The column axis is horizontal, so in the 2-D simulation plane only the
    column index projects onto the propagation direction. ``orientation`` is
    the bearing of the array broadside in the global frame.
    """

    n_rows: int = 8
    n_cols: int = 8
    element_spacing: float = 0.5
    orientation: float = 0.0
    wavelength: float = 0.1

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError("RIS needs at least one element")
        if not self.element_spacing > 0 or not self.wavelength > 0:
            raise ValueError("RIS spacing and wavelength must be positive")

    @property
    def n_elements(self):
        return self.n_rows * self.n_cols

    def projection_index(self):
        # row-major flattening: element n = r * n_cols + c
        return np.tile(np.arange(self.n_cols, dtype=float), self.n_rows)


def steering_vector(array, direction):
    """Unit-modulus array response toward ``direction`` (radians from broadside)."""
    phase = TWO_PI * array.element_spacing * array.projection_index() * math.sin(direction)
    return np.exp(1j * phase)


@dataclass(frozen=True)
class PhaseProfile:
    """RIS element phases, stored wrapped into [0, 2pi)."""

    phases: np.ndarray

    def __post_init__(self):
        p = np.mod(np.asarray(self.phases, dtype=float), TWO_PI)
        # mod can round a tiny negative up to exactly 2pi
        p[p >= TWO_PI] = 0.0
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    def __len__(self):
        return self.phases.size

    def __eq__(self, other):
        return isinstance(other, PhaseProfile) and np.array_equal(self.phases, other.phases)

    __hash__ = None

    def coefficients(self):
        return np.exp(1j * self.phases)


def _as_phases(phases):
    return phases.phases if isinstance(phases, PhaseProfile) else np.asarray(phases, dtype=float)


def cascaded_power(power, h_direct, h_tx_ris, a_ris_dest, phases):
    """Received power ``P * |h_d + sum_n conj(a_n) e^{j phi_n} h_n|^2``."""
    h_tx_ris = np.asarray(h_tx_ris, dtype=complex)
    a_ris_dest = np.asarray(a_ris_dest, dtype=complex)
    phi = _as_phases(phases)
    if not (h_tx_ris.shape == a_ris_dest.shape == phi.shape) or h_tx_ris.ndim != 1:
        raise ValueError(
            f"dimension mismatch: h_t {h_tx_ris.shape}, a_r {a_ris_dest.shape}, "
            f"phases {phi.shape}")
    field = h_direct + np.sum(np.conj(a_ris_dest) * np.exp(1j * phi) * h_tx_ris)
    return power * abs(field) ** 2
