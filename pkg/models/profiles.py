import json
import logging
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from utils.helpers import resource_path


@dataclass(frozen=True)
class ScaleProfile:
    """Multiplicative constants of the strategy geometry.

    Every length the strategies use is ``coeff * r**k``:
    separation ``keep_coeff*r^2``, per-step gain ``gain_coeff*r^2``,
    region height ``height_coeff*r^2``, region base radius
    ``base_coeff*r^3`` and the cover rectangles
    ``cover_width_coeff*r^3`` by ``cover_height_coeff*r^2``.

    ``base_coeff=None`` selects the dimension default: the planar triangle
    has a base of total length r^3/10^5 (half-width r^3/(2*10^5)) while the
    higher dimensional cone has a basis of radius r^3/10^5.
    """
    name: str
    keep_coeff: float
    gain_coeff: float
    height_coeff: float
    base_coeff: float = None
    cover_width_coeff: float = 1e-6
    cover_height_coeff: float = 1e-6
    regime_max_r: float = 0.3

    def __post_init__(self):
        self.validate()

    def validate(self):
        coefficients = {
            'keep_coeff': self.keep_coeff,
            'gain_coeff': self.gain_coeff,
            'height_coeff': self.height_coeff,
            'cover_width_coeff': self.cover_width_coeff,
            'cover_height_coeff': self.cover_height_coeff,
            'regime_max_r': self.regime_max_r,
        }
        if self.base_coeff is not None:
            coefficients['base_coeff'] = self.base_coeff
        for key, value in coefficients.items():
            if not value > 0:
                raise ValueError(f"Profile '{self.name}': {key} must be positive, got {value}")
        if self.name == 'paper' and self.keep_coeff > self.height_coeff:
            raise ValueError("Profile 'paper': keep_coeff must not exceed height_coeff")

    def base_radius_coeff(self, d):
        if self.base_coeff is not None:
            return self.base_coeff
        return 1 / (2 * 10**5) if d == 2 else 1 / 10**5

    # Lengths at a given radius
    def separation(self, r):
        return self.keep_coeff * r * r

    def gain(self, r):
        return self.gain_coeff * r * r

    def region_height(self, r):
        return self.height_coeff * r * r

    def region_base_radius(self, r, d):
        return self.base_radius_coeff(d) * r**3

    def cover_width(self, r):
        return self.cover_width_coeff * r**3

    def cover_height(self, r):
        return self.cover_height_coeff * r * r

    def in_regime(self, r):
        """True when the per-step assertions are proven for this radius."""
        return r <= self.regime_max_r

    def renamed(self, name):
        return replace(self, name=name)

    def to_dict(self):
        return asdict(self)


PAPER = ScaleProfile(
    name='paper',
    keep_coeff=1 / 100,
    gain_coeff=1 / 5,
    height_coeff=1 / 100,
    base_coeff=None,
    cover_width_coeff=1e-6,
    cover_height_coeff=1e-6,
)

# Feasible at desk scale: T(X) is wide enough to hold vertices of a graph
# with a few hundred thousand points.
DESK = ScaleProfile(
    name='desk',
    keep_coeff=1 / 100,
    gain_coeff=1 / 5,
    height_coeff=1 / 4,
    base_coeff=1 / 4,
    cover_width_coeff=1 / 16,
    cover_height_coeff=1 / 16,
)

BUILTIN_PROFILES = {
    PAPER.name: PAPER,
    DESK.name: DESK,
}


def load_profile(path):
    """Load a profile from a JSON file (see resources/profiles/)."""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"Could not load profile {path}: {e}")

    data.setdefault('name', path.stem)
    known = set(ScaleProfile.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        logging.warning(f"Ignoring unknown profile keys in {path}: {', '.join(sorted(unknown))}")
    return ScaleProfile(**{k: v for k, v in data.items() if k in known})


def save_profile(profile, path):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(profile.to_dict(), f, indent=2)


def resolve_profile(name_or_path):
    """Return a builtin profile by name, a bundled one from
    resources/profiles/<name>.json, or load one from a JSON path."""
    if isinstance(name_or_path, ScaleProfile):
        return name_or_path
    if name_or_path in BUILTIN_PROFILES:
        return BUILTIN_PROFILES[name_or_path]
    bundled = Path(resource_path(os.path.join('resources', 'profiles', f'{name_or_path}.json')))
    if not Path(name_or_path).suffix and bundled.exists():
        return load_profile(bundled)
    return load_profile(name_or_path)
