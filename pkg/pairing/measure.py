"""
The pairing measure (A, Dχ_E)_λ for box sets, read off from the Leibniz rule

    (A, Dχ_E)_λ = div(χ_E^λ A) − χ_E^λ div A.

Volume parts cancel, so the measure lives on the faces of E, on the
hyperplanes where A jumps, at the atoms of div A and at the points where
χ_E^λ jumps along a segment part of A.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BadParams, NoClosedForm
from core.quadrature import BoxIntegrator
from fields.field import FieldND
from fields.forms import ScalarForm
from fields.measure_nd import BoxPart, MeasureND, total_variation
from measures.selector import LambdaSelector

from .boxes import Box, BoxGrid, BoxSet, StepFunctionND, probe_offset, representative_point

logger = logging.getLogger(__name__)

# (A, Dχ_E)_λ is returned as an explicit MeasureND
PairingMeasureND = MeasureND


def pairing_grid(
    field: FieldND,
    coords: Dict[int, Sequence[float]],
    lam: Optional[LambdaSelector] = None,
    window: Optional[Box] = None,
) -> BoxGrid:
    """Grid of the window cut where the field, the scalar or λ can change."""
    window = window or field.window
    merged: Dict[int, List[float]] = {i: list(v) for i, v in field.splits().items()}
    for axis, values in coords.items():
        merged.setdefault(axis, []).extend(values)
    if lam is not None:
        for axis in range(field.dimension):
            merged.setdefault(axis, []).extend(lam.boundaries(axis))
    return BoxGrid(window[0], window[1], merged)


def _divergence_faces(field: FieldND, axis: int, offset: float, face: Box) -> List[ScalarForm]:
    out = []
    for part in field.divergence.parts:
        if part.flat_axes != (axis,) or part.lo[axis] != offset:
            continue
        if all(
            part.lo[i] <= face[0][i] and face[1][i] <= part.hi[i]
            for i in range(field.dimension)
            if i != axis
        ):
            out.append(part.density)
    return out


def _jump_density(field: FieldND, face: Box, axis: int, chi_minus: float, chi_plus: float) -> ScalarForm:
    """χ⁺A_axis⁺ − χ⁻A_axis⁻ on a face cell."""
    ac = field.ac
    if ac.piecewise_constant:
        centre = representative_point(*face)
        value = chi_plus * ac.one_sided(centre, axis, +1)[axis] - chi_minus * ac.one_sided(centre, axis, -1)[axis]
        return ScalarForm.of_constant(value)

    def fn(x: np.ndarray) -> float:
        return chi_plus * ac.one_sided(x, axis, +1)[axis] - chi_minus * ac.one_sided(x, axis, -1)[axis]

    return ScalarForm(
        f"jump[{axis}]({ac.label})", fn, ac.all_splits(), ac.singular_points
    )


def _check_representable(field: FieldND) -> None:
    if not field.closed_form_traces:
        raise NoClosedForm(f"{field.name} has no closed-form traces; use pairing_apply")
    n = field.dimension
    for part in field.divergence.parts:
        if part.order not in (n - 1, n):
            raise NoClosedForm(f"{field.name}: divergence part of dimension {part.order}")


def pairing_measure_box(
    field: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    window: Optional[Box] = None,
) -> PairingMeasureND:
    """
    (A, Dχ_E)_λ as an explicit measure on the open window.

    Face cells carry χ⁺A⁺·e − χ⁻A⁻·e − χ^λ·(div A face density); atoms of
    div A carry (θ_E(p) − χ_E^λ(p))·w, with θ_E the Lebesgue density, which
    is exact for point sources spreading isotropically; segment parts of A
    carry weight·(jump of χ_E^λ along the segment).

    Raises:
        NoClosedForm: If the field has no closed-form traces
    """
    _check_representable(field)
    if E.dimension != field.dimension:
        raise BadParams("set and field live in different dimensions")
    window = window or field.window
    u = E.indicator()
    grid = pairing_grid(field, E.coordinate_map(), lam, window)
    coords = grid.coordinate_map()

    parts: List[BoxPart] = []
    for axis in range(field.dimension):
        for face in grid.face_cells(axis):
            centre = np.asarray(representative_point(*face))
            delta = probe_offset(centre, coords)
            minus, plus = centre.copy(), centre.copy()
            minus[axis] -= delta
            plus[axis] += delta
            chi_minus, chi_plus = u.value(minus), u.value(plus)
            offset = face[0][axis]
            div_faces = _divergence_faces(field, axis, offset, face)
            rep = u.representative(centre, lam, on_face=True)

            density = ScalarForm.of_constant(0.0)
            if field.ac is not None and (chi_minus or chi_plus):
                if chi_minus != chi_plus or field.jumps_across(axis, offset):
                    density = density.plus(_jump_density(field, face, axis, chi_minus, chi_plus))
            if rep != 0.0:
                for div_face in div_faces:
                    density = density.plus(div_face.scale(-rep))
            if not density.is_zero():
                parts.append(BoxPart(face[0], face[1], density))

    atoms: List[Tuple[Tuple[float, ...], float]] = []
    wlo, whi = window
    for point, weight in field.divergence.atoms:
        if not all(a < c < b for a, c, b in zip(wlo, point, whi)):
            continue
        theta = E.density(point)
        rep = u.representative(point, lam)
        if theta != rep:
            atoms.append((point, (theta - rep) * weight))

    for seg in field.segments:
        line = [c for c in coords[seg.axis] if seg.lo < c < seg.hi]
        if not all(wlo[i] < seg.through[i] < whi[i] for i in range(field.dimension) if i != seg.axis):
            continue
        cuts = [max(seg.lo, wlo[seg.axis])] + line + [min(seg.hi, whi[seg.axis])]
        values = [
            u.representative(seg.point(0.5 * (a + b)), lam, on_face=True)
            for a, b in zip(cuts, cuts[1:])
        ]
        for t, left, right in zip(cuts[1:-1], values, values[1:]):
            if right != left:
                atoms.append((tuple(seg.point(t)), seg.weight * (right - left)))

    measure = MeasureND(field.dimension, tuple(atoms), tuple(parts))
    logger.debug(
        f"pairing measure of {field.name} on {len(E.boxes)} box(es): "
        f"{len(measure.atoms)} atoms, {len(measure.parts)} face parts"
    )
    return measure


def perimeter(
    field: FieldND,
    E: BoxSet,
    lam: LambdaSelector,
    window: Optional[Box] = None,
    integrator: Optional[BoxIntegrator] = None,
) -> float:
    """P_{A,λ}(E, window) = |(A, Dχ_E)_λ|(window)."""
    window = window or field.window
    return total_variation(pairing_measure_box(field, E, lam), window, integrator)


def partition_by_density(
    mu: MeasureND, E: BoxSet, extra: Optional[Dict[int, Sequence[float]]] = None
) -> Tuple[MeasureND, MeasureND, MeasureND]:
    """
    Split μ into its restrictions to E¹, ∂*E and E⁰, cutting parts along the
    coordinates of E (and any extra coordinates).
    """
    coords: Dict[int, List[float]] = {i: list(v) for i, v in E.coordinate_map().items()}
    for axis, values in (extra or {}).items():
        coords.setdefault(axis, []).extend(values)
    buckets: Dict[str, Tuple[list, list]] = {k: ([], []) for k in ("interior", "boundary", "exterior")}

    def bucket(theta: float) -> str:
        if theta == 1.0:
            return "interior"
        if theta == 0.0:
            return "exterior"
        return "boundary"

    for point, weight in mu.atoms:
        buckets[bucket(E.density(point))][0].append((point, weight))
    for part in mu.parts:
        for piece in part.split(coords):
            buckets[bucket(E.density(piece.centre()))][1].append(piece)
    return tuple(
        MeasureND(mu.dimension, tuple(atoms), tuple(parts))
        for atoms, parts in (buckets["interior"], buckets["boundary"], buckets["exterior"])
    )


def restrict_to_reduced_boundary(mu: MeasureND, E: BoxSet) -> MeasureND:
    """μ ⌞ ∂*E."""
    return partition_by_density(mu, E)[1]


def weight_by_lambda(mu: MeasureND, lam: LambdaSelector) -> MeasureND:
    """λμ: atoms weighted by λ(p), parts by the region constant of λ."""
    coords = {i: lam.boundaries(i) for i in range(mu.dimension)}
    atoms = tuple((p, float(lam.value(p)) * w) for p, w in mu.atoms)
    parts = []
    for part in mu.parts:
        for piece in part.split(coords):
            t = float(lam.region_value(piece.centre()))
            if t != 0.0:
                parts.append(piece.with_density(piece.density.scale(t)))
    return MeasureND(mu.dimension, atoms, tuple(parts))


def chi_lambda(E: BoxSet, lam: LambdaSelector, x: Sequence[float], on_face: bool = True) -> float:
    """χ_E^λ(x) = χ_{E¹}(x) + λ(x)χ_{∂*E}(x)."""
    return E.indicator().representative(x, lam, on_face=on_face)
