"""Deterministic sampling of cone points and random family parameters."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError
from .params import ParamSet
from .scalars import ScalarTriple, scalar_triple


@dataclass(frozen=True)
class SampleRegion:
    r_min: float = 0.5
    r_max: float = 2.0
    margin: float = 0.2  # lower bound on w / r
    count: int = 100
    seed: int = 0
    u_min: float = 0.5
    u_max: float = 2.0

    def __post_init__(self):
        if not self.r_min > 0:
            raise ConfigError("r_min must be positive")
        if self.r_max < self.r_min:
            raise ConfigError("r_max must be >= r_min")
        if not 0 < self.margin < 1:
            raise ConfigError("margin must lie in (0, 1)")
        if self.count < 1:
            raise ConfigError("count must be positive")
        if not 0 < self.u_min <= self.u_max:
            raise ConfigError("need 0 < u_min <= u_max")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Sample:
    index: int
    x: tuple[float, float]
    y: tuple[float, float]
    triple: ScalarTriple


def sample_points(region: SampleRegion) -> list[Sample]:
    """Points with x1*y2 - x2*y1 > 0 and w >= margin * r.

    The angle psi from x to y is drawn from [asin(margin), pi - asin(margin)],
    so w = r sin(psi) respects the margin by construction.
    """
    rng = np.random.default_rng(region.seed)
    lo = math.asin(region.margin)
    out = []
    for k in range(region.count):
        r = rng.uniform(region.r_min, region.r_max)
        theta = rng.uniform(0.0, 2 * math.pi)
        psi = rng.uniform(lo, math.pi - lo)
        u = rng.uniform(region.u_min, region.u_max)
        x = (r * math.cos(theta), r * math.sin(theta))
        y = (u * math.cos(theta + psi), u * math.sin(theta + psi))
        out.append(Sample(k, x, y, scalar_triple(x, y)))
    return out


# negative coefficients render as "+ -0.5", which the grammar accepts
_TEMPLATES = (
    "{a}",
    "{a} + {b}*r",
    "{a} + {b}*r^2",
    "{a}*r + {b}/r",
    "{a}/(1 + r^2)",
    "{a} + {b}*r - {c}*r^3",
    "({a} + {b}*r)/(2 + r)",
)


def random_expr(rng: np.random.Generator) -> str:
    tpl = _TEMPLATES[rng.integers(len(_TEMPLATES))]
    a, b, c = (round(float(v), 3) for v in rng.uniform(-2.0, 2.0, size=3))
    return tpl.format(a=a, b=b, c=abs(c))


def random_params(rng: np.random.Generator, **fixed) -> ParamSet:
    """A ParamSet of random low-degree polynomial/rational radial functions."""
    fields = {k: random_expr(rng) for k in ("c0", "f1", "f2", "c1", "c2")}
    fields["c"] = round(float(rng.uniform(-1.0, 1.0)), 3)
    fields.update(fixed)
    return ParamSet(**fields)
