"""Simulated world: geometry, node deployment and scenario configuration.

A :class:`Scenario` is an immutable snapshot of the network. Roles can be
given as fixed positions or deployed as a homogeneous Poisson point process
(HPPP) drawn from the scenario seed. Configs are TOML files; see
``data/default_fig3.toml`` for an annotated example with units per key.
"""
import enum
import math
import sys
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from types import MappingProxyType

from ._rng import substream
from .channel import BeamPattern, FadingModel, RisArray

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = [
    "Point2D", "Region", "NodeRole", "RadioParams", "Scenario", "ScenarioError",
    "sample_hppp", "build_scenario", "load_scenario", "load_config", "distance",
    "bearing", "db_to_linear", "Jammer", "Placement",
]


class ScenarioError(ValueError):
    """Raised when a scenario config fails validation."""


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


def distance(a, b):
    return math.hypot(b.x - a.x, b.y - a.y)


def bearing(a, b):
    """Angle of the vector a -> b in radians, measured from the +x axis."""
    return math.atan2(b.y - a.y, b.x - a.x)


@dataclass(frozen=True)
class Region:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if self.x_max < self.x_min or self.y_max < self.y_min:
            raise ValueError(f"invalid region bounds {self}")

    @property
    def width(self):
        return self.x_max - self.x_min

    @property
    def height(self):
        return self.y_max - self.y_min

    @property
    def area(self):
        return self.width * self.height

    @property
    def center(self):
        return Point2D(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))

    def contains(self, p):
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max


class NodeRole(enum.Enum):
    ISAC_TRANSMITTER = "transmitters"
    COMM_RECEIVER = "receivers"
    SENSING_TARGET = "sensing_targets"
    PRIVATE_USER = "private_users"
    EAVESDROPPER = "eavesdroppers"
    JAMMER = "jammers"
    RIS = "ris"


# roles that may appear as node sections in a config file
_DEPLOYABLE = (
    NodeRole.ISAC_TRANSMITTER,
    NodeRole.COMM_RECEIVER,
    NodeRole.SENSING_TARGET,
    NodeRole.PRIVATE_USER,
    NodeRole.EAVESDROPPER,
)


@dataclass(frozen=True)
class RadioParams:
    tx_power: float = 1.0
    jam_power: float = 0.5
    noise_power: float = 1e-9
    pathloss_exponent: float = 3.0
    reference_distance: float = 1.0
    reference_gain: float = 1e-3
    min_distance: float = 1.0

    def __post_init__(self):
        for name in ("tx_power", "jam_power", "noise_power"):
            if not getattr(self, name) > 0:
                raise ScenarioError(f"radio.{name} must be > 0")
        if not 2.0 <= self.pathloss_exponent <= 6.0:
            raise ScenarioError("radio.pathloss_exponent must lie in [2, 6]")
        if not self.reference_distance > 0 or not self.min_distance > 0:
            raise ScenarioError("radio reference and minimum distances must be > 0")
        if not self.reference_gain > 0:
            raise ScenarioError("radio.reference_gain must be > 0")


@dataclass(frozen=True)
class Scenario:
    region: Region
    transmitters: tuple = ()
    receivers: tuple = ()
    sensing_targets: tuple = ()
    private_users: tuple = ()
    eavesdroppers: tuple = ()
    ris_position: Point2D = None
    radio: RadioParams = field(default_factory=RadioParams)
    sinr_threshold: float = 1.0
    rng_seed: int = 0
    fading: FadingModel = FadingModel.RAYLEIGH
    jammer_pattern: BeamPattern = field(default_factory=BeamPattern.omni)
    ris_array: RisArray = field(default_factory=RisArray)
    ris_direct_path: bool = True
    # raw optimizer sections ([aco], [ris] knobs), validated by their consumers
    options: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        for role in _DEPLOYABLE:
            pts = tuple(getattr(self, role.value))
            object.__setattr__(self, role.value, pts)
            for i, p in enumerate(pts):
                if not self.region.contains(p):
                    raise ScenarioError(
                        f"{role.value}[{i}] at ({p.x}, {p.y}) lies outside the region")
        if self.ris_position is not None and not self.region.contains(self.ris_position):
            raise ScenarioError("ris position lies outside the region")
        if not self.sinr_threshold > 0:
            raise ScenarioError("sinr threshold must be > 0")
        if not isinstance(self.options, MappingProxyType):
            object.__setattr__(self, "options", MappingProxyType(dict(self.options)))

    def nodes(self, role):
        if role is NodeRole.RIS:
            return () if self.ris_position is None else (self.ris_position,)
        return getattr(self, role.value)

    def section(self, name):
        return dict(self.options.get(name, {}))

    def with_(self, **changes):
        """Copy with fields replaced (validation re-runs)."""
        return replace(self, **changes)

    def require(self, *roles):
        missing = [r.value for r in roles if not self.nodes(r)]
        if missing:
            raise ScenarioError(f"scenario has no {', '.join(missing)}")


@dataclass(frozen=True)
class Jammer:
    position: Point2D
    steering: float
    pattern: BeamPattern = field(default_factory=BeamPattern.omni)


@dataclass(frozen=True)
class Placement:
    """Friendly jammers deployed on top of a scenario (possibly none)."""

    jammers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "jammers", tuple(self.jammers))

    def __len__(self):
        return len(self.jammers)

    def __iter__(self):
        return iter(self.jammers)

    @property
    def positions(self):
        return tuple(j.position for j in self.jammers)

    def check_inside(self, region):
        for i, j in enumerate(self.jammers):
            if not region.contains(j.position):
                raise ScenarioError(f"jammer[{i}] lies outside the region")


def sample_hppp(density, region, rng):
    """Draw an HPPP realization: Poisson count, then i.i.d. uniform positions."""
    if density < 0:
        raise ValueError(f"HPPP density must be >= 0, got {density}")
    mean = density * region.area
    if mean == 0:
        return ()
    n = int(rng.poisson(mean))
    xs = rng.uniform(region.x_min, region.x_max, n)
    ys = rng.uniform(region.y_min, region.y_max, n)
    return tuple(Point2D(float(x), float(y)) for x, y in zip(xs, ys))


def _points(raw, where):
    try:
        return tuple(Point2D(float(x), float(y)) for x, y in raw)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: positions must be a list of [x, y] pairs") from exc


def _power(section, key, default):
    if f"{key}_dbm" in section:
        return db_to_linear(section[f"{key}_dbm"]) * 1e-3
    return float(section.get(f"{key}_w", default))


def _radio(section):
    d = RadioParams()
    if "reference_gain_db" in section:
        c0 = db_to_linear(section["reference_gain_db"])
    else:
        c0 = float(section.get("reference_gain", d.reference_gain))
    return RadioParams(
        tx_power=_power(section, "tx_power", d.tx_power),
        jam_power=_power(section, "jam_power", d.jam_power),
        noise_power=_power(section, "noise_power", d.noise_power),
        pathloss_exponent=float(section.get("pathloss_exponent", d.pathloss_exponent)),
        reference_distance=float(section.get("reference_distance_m", d.reference_distance)),
        reference_gain=c0,
        min_distance=float(section.get("min_distance_m", d.min_distance)),
    )


def _jammer_pattern(section):
    if not section or section.get("kind", "sector") == "omni":
        return BeamPattern.omni()
    main = section.get("main_gain")
    if main is None:
        main = db_to_linear(section.get("main_gain_db", 9.0))
    half = math.radians(section.get("beamwidth_deg", 30.0)) / 2.0
    try:
        return BeamPattern.sector(float(main), half)
    except ValueError as exc:
        raise ScenarioError(f"jammer: {exc}") from exc


def _ris(section):
    d = RisArray()
    try:
        return RisArray(
            n_rows=int(section.get("n_rows", d.n_rows)),
            n_cols=int(section.get("n_cols", d.n_cols)),
            element_spacing=float(section.get("element_spacing", d.element_spacing)),
            orientation=math.radians(section.get("orientation_deg", 0.0)),
            wavelength=float(section.get("wavelength_m", d.wavelength)),
        )
    except ValueError as exc:
        raise ScenarioError(f"ris: {exc}") from exc


def build_scenario(config, require=()):
    """Validate a config mapping and deploy its nodes.

    Parameters
    ----------
    config : mapping
        Parsed config (same layout as the TOML files).
    require : iterable of NodeRole
        Roles the caller needs; a missing one raises :class:`ScenarioError`.
    """
    try:
        r = config["region"]
        region = Region(float(r["x_min"]), float(r["x_max"]), float(r["y_min"]), float(r["y_max"]))
    except KeyError as exc:
        raise ScenarioError(f"region: missing key {exc}") from exc
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc

    seed = int(config.get("seed", 0))
    if not 0 <= seed < 2 ** 64:
        raise ScenarioError("seed must be an unsigned 64-bit integer")

    nodes = {}
    for idx, role in enumerate(_DEPLOYABLE):
        sec = config.get(role.value, {})
        if "positions" in sec and "density" in sec:
            raise ScenarioError(f"{role.value}: give either positions or density, not both")
        if "density" in sec:
            lam = float(sec["density"])
            if lam < 0:
                raise ScenarioError(f"{role.value}: density must be >= 0")
            nodes[role.value] = sample_hppp(lam, region, substream(seed, "hppp", idx))
        else:
            nodes[role.value] = _points(sec.get("positions", []), role.value)

    ris_sec = config.get("ris", {})
    ris_pos = None
    if "position" in ris_sec:
        (ris_pos,) = _points([ris_sec["position"]], "ris")

    fading_name = str(config.get("fading", "rayleigh")).lower()
    try:
        fading = FadingModel(fading_name)
    except ValueError:
        raise ScenarioError(f"unknown fading model {fading_name!r}") from None

    options = {k: dict(config[k]) for k in ("aco", "ris") if k in config}
    scen = Scenario(
        region=region,
        radio=_radio(config.get("radio", {})),
        sinr_threshold=db_to_linear(float(config.get("sinr_threshold_db", 0.0))),
        rng_seed=seed,
        fading=fading,
        jammer_pattern=_jammer_pattern(config.get("jammer", {})),
        ris_position=ris_pos,
        ris_array=_ris(ris_sec),
        ris_direct_path=bool(ris_sec.get("direct_path", True)),
        options=options,
        **nodes,
    )
    scen.require(*require)
    return scen


def load_config(source):
    """Parse a TOML config from a path, or a bundled default by name."""
    path = Path(source)
    if not path.exists() and not path.suffix:
        ref = resources.files("privisac") / "data" / f"{source}.toml"
        if ref.is_file():
            return tomllib.loads(ref.read_text(encoding="utf-8"))
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def load_scenario(source, require=(), **overrides):
    """Load and build a scenario; ``overrides`` replace top-level config keys."""
    cfg = load_config(source)
    cfg.update(overrides)
    return build_scenario(cfg, require=require)
