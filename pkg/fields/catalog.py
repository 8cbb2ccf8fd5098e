"""
The catalog of concrete divergence-measure fields.

Every entry declares its divergence in closed form; nothing here is derived
numerically.
"""

import math
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
from scipy import special

from core.errors import BadParams

from .field import FieldND, SegmentPart
from .forms import ScalarForm, VectorForm
from .measure_nd import MeasureND
from .profiles import BumpProfile, ConstantProfile, Profile, profile_from_dict
from .registry import field_catalog, register_field

ProfileSpec = Union[Profile, Dict[str, Any], float, None]


def unit_ball_volume(k: int) -> float:
    """ω_k = π^{k/2} / Γ(k/2 + 1)."""
    return math.pi ** (k / 2.0) / float(special.gamma(k / 2.0 + 1.0))


def _dimension(dimension: Any, minimum: int = 1) -> int:
    try:
        n = int(dimension)
    except (TypeError, ValueError) as exc:
        raise BadParams(f"dimension must be an integer, got {dimension!r}") from exc
    if n != dimension or n < minimum or n > 4:
        raise BadParams(f"dimension must be an integer in [{minimum}, 4], got {dimension!r}")
    return n


def _cube(n: int, a: float, b: float):
    return (a,) * n, (b,) * n


def _profile(spec: ProfileSpec, default: Profile) -> Profile:
    return default if spec is None else profile_from_dict(spec)


def _params(**kwargs) -> tuple:
    return tuple(sorted(kwargs.items()))


@register_field(tags=["singular", "unbounded", "summable"])
def radial(dimension: int = 2) -> FieldND:
    """A(x) = x / (N ω_N |x|^N), the field with div A = δ₀."""
    n = _dimension(dimension)
    c = 1.0 / (n * unit_ball_volume(n))
    origin = (0.0,) * n

    def fn(x: np.ndarray) -> np.ndarray:
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return np.zeros(n)
        return c * x / r**n

    return FieldND(
        name="radial",
        dimension=n,
        window=_cube(n, -2.0, 2.0),
        divergence=MeasureND.dirac(origin, 1.0),
        ac=VectorForm("x/(N w_N |x|^N)", n, fn, singular_points=(origin,)),
        essential_sup=None,
        params=_params(dimension=n),
        description="point source of unit strength at the origin",
    )


@register_field(tags=["bounded", "smooth", "summable"])
def constant(dimension: int = 2, direction: Optional[Sequence[float]] = None) -> FieldND:
    """A ≡ v, divergence free."""
    n = _dimension(dimension)
    v = np.zeros(n)
    if direction is None:
        v[0] = 1.0
    else:
        if len(direction) != n:
            raise BadParams(f"direction {direction} is not in R^{n}")
        v[:] = [float(c) for c in direction]
    v.setflags(write=False)
    return FieldND(
        name="constant",
        dimension=n,
        window=_cube(n, -2.0, 2.0),
        divergence=MeasureND.zero(n),
        ac=VectorForm(f"{list(v)}", n, lambda x: v, piecewise_constant=True),
        essential_sup=float(np.linalg.norm(v)),
        params=_params(dimension=n, direction=tuple(v)),
    )


@register_field(tags=["bounded", "jump", "summable"])
def heaviside(dimension: int = 2, offset: float = 0.0) -> FieldND:
    """A = χ_{x₁ > offset} e₁, with div A = H^{N−1} ⌞ {x₁ = offset}."""
    n = _dimension(dimension)
    offset = float(offset)
    lo, hi = _cube(n, -2.0, 2.0)
    if not lo[0] < offset < hi[0]:
        raise BadParams(f"jump plane x1 = {offset} outside the window")
    e1 = np.zeros(n)
    e1[0] = 1.0
    zero = np.zeros(n)
    face_lo, face_hi = list(lo), list(hi)
    face_lo[0] = face_hi[0] = offset
    return FieldND(
        name="heaviside",
        dimension=n,
        window=(lo, hi),
        divergence=MeasureND.on_box(face_lo, face_hi, 1.0),
        ac=VectorForm(
            f"chi(x1>{offset:g}) e1",
            n,
            lambda x: e1 if x[0] > offset else zero,
            jump_planes=((0, offset),),
            piecewise_constant=True,
        ),
        essential_sup=1.0,
        params=_params(dimension=n, offset=offset),
    )


@register_field(tags=["bounded", "smooth", "summable", "degenerate"])
def transversal(dimension: int = 2, f: ProfileSpec = None) -> FieldND:
    """A(x) = (f(x_N), 0, …, 0), divergence free."""
    n = _dimension(dimension, minimum=2)
    profile = _profile(f, BumpProfile(0.0, 1.0, 1.0, 2))
    lo, hi = _cube(n, -1.0, 1.0)

    def fn(x: np.ndarray) -> np.ndarray:
        out = np.zeros(n)
        out[0] = profile.value(float(x[-1]))
        return out

    return FieldND(
        name="transversal",
        dimension=n,
        window=(lo, hi),
        divergence=MeasureND.zero(n),
        ac=VectorForm(
            "(f(xN), 0, ...)",
            n,
            fn,
            splits=((n - 1, tuple(profile.breakpoints())),),
        ),
        essential_sup=profile.sup_abs(lo[-1], hi[-1]),
        params=_params(dimension=n, f=profile),
    )


@register_field(tags=["singular", "unbounded", "summable", "not-measure"])
def vortex(dimension: int = 2) -> FieldND:
    """A(x) = (−x₂, x₁)/|x|², divergence free; pairings with χ_E need not be measures."""
    if dimension != 2:
        raise BadParams("the vortex field lives in dimension 2")

    def fn(x: np.ndarray) -> np.ndarray:
        r2 = float(x[0] * x[0] + x[1] * x[1])
        if r2 == 0.0:
            return np.zeros(2)
        return np.array([-x[1], x[0]]) / r2

    return FieldND(
        name="vortex",
        dimension=2,
        window=_cube(2, -1.0, 1.0),
        divergence=MeasureND.zero(2),
        ac=VectorForm("(-x2, x1)/|x|^2", 2, fn, singular_points=((0.0, 0.0),)),
        essential_sup=None,
        closed_form_traces=False,
        probe="vortex",
        params=_params(dimension=2),
    )


@register_field(tags=["measure", "not-summable", "not-measure"])
def segment(dimension: int = 2) -> FieldND:
    """A = (H¹ ⌞ J, 0, …, 0) with J the x₁-axis segment, divergence free in the window."""
    n = _dimension(dimension, minimum=2)
    lo, hi = _cube(n, -1.0, 1.0)
    return FieldND(
        name="segment",
        dimension=n,
        window=(lo, hi),
        divergence=MeasureND.zero(n),
        segments=(SegmentPart(0, (0.0,) * n, lo[0], hi[0], 1.0),),
        essential_sup=None,
        probe="segment",
        params=_params(dimension=n),
    )


@register_field(tags=["bounded", "smooth", "summable", "staircase"])
def staircase(
    dimension: int = 2, f: ProfileSpec = None, g: ProfileSpec = None, depth: int = 10
) -> FieldND:
    """A(x) = (f(x₂)g(x₁), 0, …, 0), with div A = f(x₂)g′(x₁) L^N."""
    n = _dimension(dimension, minimum=2)
    if int(depth) != depth or depth < 1:
        raise BadParams(f"staircase depth must be a positive integer, got {depth!r}")
    f_profile = _profile(f, ConstantProfile(1.0))
    g_profile = _profile(g, BumpProfile(1.0, 2.0, 1.0, 2))
    lo = (-1.0,) * n
    hi = (3.0,) + (2.0,) * (n - 1)

    def fn(x: np.ndarray) -> np.ndarray:
        out = np.zeros(n)
        out[0] = f_profile.value(float(x[1])) * g_profile.value(float(x[0]))
        return out

    splits = ((0, tuple(g_profile.breakpoints())), (1, tuple(f_profile.breakpoints())))
    density = ScalarForm(
        "f(x2) g'(x1)",
        lambda x: f_profile.value(float(x[1])) * g_profile.derivative(float(x[0])),
        splits,
    )
    return FieldND(
        name="staircase",
        dimension=n,
        window=(lo, hi),
        divergence=MeasureND.on_box(lo, hi, density),
        ac=VectorForm("(f(x2) g(x1), 0, ...)", n, fn, splits=splits),
        essential_sup=f_profile.sup_abs(lo[1], hi[1]) * g_profile.sup_abs(lo[0], hi[0]),
        params=_params(dimension=n, f=f_profile, g=g_profile, depth=int(depth)),
    )


@register_field(tags=["measure", "not-summable", "jump"])
def measure_components(
    dimension: int = 2,
    point: Optional[Sequence[float]] = None,
    slope: float = 0.0,
    jump: float = 1.0,
    at: float = 0.0,
) -> FieldND:
    """
    A = (a₁, …, a_{N−1}, a_N L^N): a_j = H¹ on the x_j-line through a point,
    a_N(x_N) = slope·x_N + jump·χ_{x_N > at}; div A = slope L^N + jump H^{N−1} ⌞ {x_N = at}.
    """
    n = _dimension(dimension, minimum=2)
    lo, hi = _cube(n, -1.0, 1.0)
    through = tuple(float(c) for c in point) if point is not None else (0.0,) * (n - 1) + (0.5,)
    if len(through) != n or not all(a < c < b for a, c, b in zip(lo, through, hi)):
        raise BadParams(f"point {point} is not inside the window of R^{n}")
    slope, jump, at = float(slope), float(jump), float(at)
    if not lo[-1] < at < hi[-1]:
        raise BadParams(f"jump level x_N = {at} outside the window")

    def fn(x: np.ndarray) -> np.ndarray:
        out = np.zeros(n)
        out[-1] = slope * x[-1] + (jump if x[-1] > at else 0.0)
        return out

    divergence = MeasureND.zero(n)
    if slope != 0.0:
        divergence = divergence + MeasureND.on_box(lo, hi, slope)
    if jump != 0.0:
        face_lo, face_hi = list(lo), list(hi)
        face_lo[-1] = face_hi[-1] = at
        divergence = divergence + MeasureND.on_box(face_lo, face_hi, jump)
    segments = tuple(SegmentPart(j, through, lo[j], hi[j], 1.0) for j in range(n - 1))
    return FieldND(
        name="measure_components",
        dimension=n,
        window=(lo, hi),
        divergence=divergence,
        ac=VectorForm(
            "(0, ..., a_N(x_N))",
            n,
            fn,
            jump_planes=((n - 1, at),) if jump != 0.0 else (),
            piecewise_constant=slope == 0.0,
        ),
        segments=segments,
        essential_sup=None,
        params=_params(dimension=n, point=through, slope=slope, jump=jump, at=at),
    )


def catalog(name: str, params: Optional[Dict[str, Any]] = None) -> FieldND:
    """
    Build a catalog field by name.

    Raises:
        UnknownEntry: If the name is not registered
        BadParams: If the parameters are invalid for the entry
    """
    return field_catalog.build(name, params)
