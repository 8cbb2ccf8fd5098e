"""
One-variable closed-form profiles.

Profiles are the building blocks of the catalog's field components (the f and
g of the transversal and staircase entries) and of tensor-product test
functions.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Tuple, Union

from core.errors import BadParams

INF = math.inf


class Profile(ABC):
    """A real function of one variable with a known derivative."""

    kind = "profile"

    @abstractmethod
    def value(self, t: float) -> float:
        pass

    @abstractmethod
    def derivative(self, t: float) -> float:
        pass

    def __call__(self, t: float) -> float:
        return self.value(t)

    def breakpoints(self) -> Tuple[float, ...]:
        """Points where the profile is not analytic."""
        return ()

    def support(self) -> Tuple[float, float]:
        return (-INF, INF)

    @abstractmethod
    def sup_abs(self, lo: float = -INF, hi: float = INF) -> float:
        """An upper bound for |value| on (lo, hi), attained when possible."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass


@dataclass(frozen=True)
class ConstantProfile(Profile):
    c: float = 1.0

    kind = "constant"

    def value(self, t: float) -> float:
        return self.c

    def derivative(self, t: float) -> float:
        return 0.0

    def sup_abs(self, lo: float = -INF, hi: float = INF) -> float:
        return abs(self.c)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "c": self.c}


@dataclass(frozen=True)
class LinearProfile(Profile):
    intercept: float = 0.0
    slope: float = 1.0

    kind = "linear"

    def value(self, t: float) -> float:
        return self.intercept + self.slope * t

    def derivative(self, t: float) -> float:
        return self.slope

    def sup_abs(self, lo: float = -INF, hi: float = INF) -> float:
        if self.slope == 0:
            return abs(self.intercept)
        if math.isinf(lo) or math.isinf(hi):
            return INF
        return max(abs(self.value(lo)), abs(self.value(hi)))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "intercept": self.intercept, "slope": self.slope}


@dataclass(frozen=True)
class BumpProfile(Profile):
    """
    amplitude·(1 − s²)^power with s = (t − center)/radius, zero for |s| ≥ 1.

    power = 3 gives the C² test-function profile, power = 2 a C¹ field profile.
    """

    center: float = 0.0
    radius: float = 1.0
    amplitude: float = 1.0
    power: int = 3

    kind = "bump"

    def __post_init__(self):
        if self.radius <= 0:
            raise BadParams(f"bump radius must be positive, got {self.radius}")
        if self.power < 1:
            raise BadParams(f"bump power must be at least 1, got {self.power}")

    def value(self, t: float) -> float:
        s = (t - self.center) / self.radius
        if abs(s) >= 1:
            return 0.0
        return self.amplitude * (1.0 - s * s) ** self.power

    def derivative(self, t: float) -> float:
        s = (t - self.center) / self.radius
        if abs(s) >= 1:
            return 0.0
        return (
            self.amplitude
            * self.power
            * (1.0 - s * s) ** (self.power - 1)
            * (-2.0 * s / self.radius)
        )

    def breakpoints(self) -> Tuple[float, ...]:
        return (self.center - self.radius, self.center + self.radius)

    def support(self) -> Tuple[float, float]:
        return (self.center - self.radius, self.center + self.radius)

    def sup_abs(self, lo: float = -INF, hi: float = INF) -> float:
        a, b = max(lo, self.center - self.radius), min(hi, self.center + self.radius)
        if b <= a:
            return 0.0
        if a <= self.center <= b:
            return abs(self.amplitude)
        nearest = a if a > self.center else b
        return abs(self.value(nearest))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "center": self.center,
            "radius": self.radius,
            "amplitude": self.amplitude,
            "power": self.power,
        }


def _smoothstep(s: float) -> float:
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)


def _smoothstep_slope(s: float) -> float:
    return 30.0 * s * s * (1.0 - s) ** 2


@dataclass(frozen=True)
class PlateauProfile(Profile):
    """
    amplitude on [lo, hi], zero outside (lo − ramp, hi + ramp), joined by
    quintic C² ramps.
    """

    lo: float = -0.5
    hi: float = 0.5
    ramp: float = 0.25
    amplitude: float = 1.0

    kind = "plateau"

    def __post_init__(self):
        if self.hi < self.lo or self.ramp <= 0:
            raise BadParams(f"bad plateau [{self.lo}, {self.hi}] with ramp {self.ramp}")

    def value(self, t: float) -> float:
        if t <= self.lo - self.ramp or t >= self.hi + self.ramp:
            return 0.0
        if t < self.lo:
            return self.amplitude * _smoothstep((t - self.lo + self.ramp) / self.ramp)
        if t > self.hi:
            return self.amplitude * _smoothstep((self.hi + self.ramp - t) / self.ramp)
        return self.amplitude

    def derivative(self, t: float) -> float:
        if t <= self.lo - self.ramp or t >= self.hi + self.ramp:
            return 0.0
        if t < self.lo:
            s = (t - self.lo + self.ramp) / self.ramp
            return self.amplitude * _smoothstep_slope(s) / self.ramp
        if t > self.hi:
            s = (self.hi + self.ramp - t) / self.ramp
            return -self.amplitude * _smoothstep_slope(s) / self.ramp
        return 0.0

    def breakpoints(self) -> Tuple[float, ...]:
        return (self.lo - self.ramp, self.lo, self.hi, self.hi + self.ramp)

    def support(self) -> Tuple[float, float]:
        return (self.lo - self.ramp, self.hi + self.ramp)

    def sup_abs(self, lo: float = -INF, hi: float = INF) -> float:
        a, b = max(lo, self.lo - self.ramp), min(hi, self.hi + self.ramp)
        if b <= a:
            return 0.0
        if b >= self.lo and a <= self.hi:
            return abs(self.amplitude)
        nearest = b if b < self.lo else a
        return abs(self.value(nearest))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "lo": self.lo,
            "hi": self.hi,
            "ramp": self.ramp,
            "amplitude": self.amplitude,
        }


@dataclass(frozen=True)
class OddProfile(Profile):
    """sign(t)·base(|t|) for a base profile vanishing near 0."""

    base: Profile

    kind = "odd"

    def __post_init__(self):
        if self.base.value(0.0) != 0.0:
            raise BadParams("odd extension needs a base profile with base(0) = 0")

    def value(self, t: float) -> float:
        if t == 0:
            return 0.0
        return math.copysign(self.base.value(abs(t)), t)

    def derivative(self, t: float) -> float:
        return self.base.derivative(abs(t))

    def breakpoints(self) -> Tuple[float, ...]:
        points = {0.0}
        for b in self.base.breakpoints():
            if b >= 0:
                points.update((b, -b))
        return tuple(sorted(points))

    def support(self) -> Tuple[float, float]:
        reach = max(abs(c) for c in self.base.support())
        return (-reach, reach)

    def sup_abs(self, lo: float = -INF, hi: float = INF) -> float:
        a = 0.0 if lo <= 0 <= hi else min(abs(lo), abs(hi))
        return self.base.sup_abs(a, max(abs(lo), abs(hi)))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "base": self.base.to_dict()}


_PROFILE_TYPES = {
    cls.kind: cls
    for cls in (ConstantProfile, LinearProfile, BumpProfile, PlateauProfile, OddProfile)
}


def profile_from_dict(data: Union[Dict[str, Any], float, int, Profile]) -> Profile:
    """
    Decode a profile; bare numbers are constants.

    Raises:
        BadParams: If the kind is unknown or parameters do not fit
    """
    if isinstance(data, Profile):
        return data
    if isinstance(data, (int, float)):
        return ConstantProfile(float(data))
    data = dict(data)
    kind = data.pop("kind", None)
    cls = _PROFILE_TYPES.get(kind)
    if cls is None:
        raise BadParams(f"unknown profile kind {kind!r}; expected one of {sorted(_PROFILE_TYPES)}")
    if cls is OddProfile:
        return OddProfile(profile_from_dict(data["base"]))
    try:
        return cls(**data)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {kind} profile: {exc}") from exc
