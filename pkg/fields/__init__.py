"""
N-dimensional divergence-measure fields, their measures and test functions.
"""

from .catalog import catalog, unit_ball_volume
from .field import FieldND, SegmentPart
from .forms import ScalarForm, VectorForm
from .measure_nd import (
    BoxPart,
    MeasureND,
    distance,
    integrate,
    is_close,
    mass,
    normalize,
    restrict,
    total_variation,
)
from .profiles import (
    BumpProfile,
    ConstantProfile,
    LinearProfile,
    OddProfile,
    PlateauProfile,
    Profile,
    profile_from_dict,
)
from .registry import (
    FieldCatalog,
    FieldInfo,
    field_catalog,
    get_field_info,
    list_fields,
    list_fields_with_info,
    register_field,
    search_fields,
)
from .selftest import (
    divergence_selftest,
    flux_integral,
    random_test_functions,
    support_check,
    vector_flux,
)
from .testfunc import TensorProductFunction, TestFunction, TestFunctionSum, bump, plateau, random_bumps

__all__ = [
    "BoxPart",
    "BumpProfile",
    "ConstantProfile",
    "FieldCatalog",
    "FieldInfo",
    "FieldND",
    "LinearProfile",
    "MeasureND",
    "OddProfile",
    "PlateauProfile",
    "Profile",
    "ScalarForm",
    "SegmentPart",
    "TensorProductFunction",
    "TestFunction",
    "TestFunctionSum",
    "VectorForm",
    "bump",
    "catalog",
    "distance",
    "divergence_selftest",
    "field_catalog",
    "flux_integral",
    "get_field_info",
    "integrate",
    "is_close",
    "list_fields",
    "list_fields_with_info",
    "mass",
    "normalize",
    "plateau",
    "profile_from_dict",
    "random_bumps",
    "random_test_functions",
    "register_field",
    "restrict",
    "search_fields",
    "support_check",
    "total_variation",
    "unit_ball_volume",
    "vector_flux",
]
