"""
Scenario files - JSON descriptions of fields, sets, λ and the checks to run
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from core.errors import BadParams, ConfigError, UnknownEntry
from fields import FieldND, catalog, get_field_info
from measures.selector import LambdaSelector
from pairing.boxes import BoxSet

logger = logging.getLogger(__name__)


class FieldSpec(BaseModel):
    """A catalog entry and its parameters"""

    name: str = Field(..., description="Catalog name of the field")
    params: Dict[str, Any] = Field(default_factory=dict, description="Builder parameters")

    @field_validator("name")
    @classmethod
    def _known(cls, name: str) -> str:
        if get_field_info(name) is None:
            raise ValueError(f"unknown field {name!r}")
        return name


class Scenario(BaseModel):
    """One batch entry: a field, sets, a λ-selector and the checks to run on them"""

    model_config = ConfigDict(populate_by_name=True)

    id: str = Field(..., min_length=1, description="Scenario identifier, also the report sort key")
    field: Optional[FieldSpec] = Field(None, description="Catalog field for N-D checks")
    set: Optional[Dict[str, Any]] = Field(None, description="BoxSet description E")
    other: Optional[Dict[str, Any]] = Field(None, description="Second BoxSet F for additivity")
    function: Optional[Dict[str, Any]] = Field(
        None, description="One-dimensional data, e.g. {'A': ..., 'u': ...} piecewise functions"
    )
    lam: Optional[Dict[str, Any]] = Field(None, alias="lambda", description="LambdaSelector description")
    checks: List[str] = Field(..., min_length=1, description="Registered check names")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="Per-check tolerance overrides")
    params: Dict[str, Any] = Field(default_factory=dict, description="Check-specific parameters")
    output: Optional[str] = Field(None, description="Optional per-scenario report path")

    @field_validator("tolerances")
    @classmethod
    def _positive(cls, tolerances: Dict[str, float]) -> Dict[str, float]:
        bad = {k: v for k, v in tolerances.items() if not v > 0}
        if bad:
            raise ValueError(f"tolerances must be positive, got {bad}")
        return tolerances

    @model_validator(mode="after")
    def _registered(self) -> "Scenario":
        # imported here: the registry imports this module for type hints
        from .registry import get_check_info

        unknown = [name for name in self.checks if get_check_info(name) is None]
        if unknown:
            raise ValueError(f"unknown check(s) {unknown}")
        stray = sorted(set(self.tolerances) - set(self.checks))
        if stray:
            raise ValueError(f"tolerances given for checks not in the list: {stray}")
        return self

    def build_field(self) -> FieldND:
        if self.field is None:
            raise BadParams(f"scenario {self.id} needs a field")
        return catalog(self.field.name, self.field.params)

    def build_set(self, which: str = "set") -> BoxSet:
        data = getattr(self, which)
        if data is None:
            raise BadParams(f"scenario {self.id} needs {which!r}")
        if "dimension" not in data and self.field is not None:
            data = {**data, "dimension": self.build_field().dimension}
        return BoxSet.from_dict(data)

    def build_lambda(self) -> LambdaSelector:
        if self.lam is None:
            return LambdaSelector.constant(0.5)
        return LambdaSelector.from_dict(self.lam)

    def tolerance(self, check: str, default: float, scale: float = 1.0) -> float:
        return self.tolerances.get(check, default) * scale


class SuiteConfig(BaseModel):
    """A scenario file"""

    name: str = Field("suite", description="Suite name")
    output: Optional[str] = Field(None, description="Default report path")
    scenarios: List[Scenario] = Field(default_factory=list)

    @model_validator(mode="after")
    def _unique_ids(self) -> "SuiteConfig":
        seen = set()
        duplicates = sorted({s.id for s in self.scenarios if s.id in seen or seen.add(s.id)})
        if duplicates:
            raise ValueError(f"duplicate scenario ids {duplicates}")
        return self


def parse_suite(data: Union[Dict[str, Any], List[Any]]) -> SuiteConfig:
    """
    Validate a parsed scenario document

    A bare list is read as the scenario list.

    Raises:
        ConfigError: If the document does not describe a valid suite
    """
    if isinstance(data, list):
        data = {"scenarios": data}
    try:
        suite = SuiteConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid scenario file: {exc}") from exc
    for scenario in suite.scenarios:
        try:
            if scenario.field is not None:
                field_ = scenario.build_field()
                if scenario.set is not None:
                    scenario.build_set()
                logger.debug(f"scenario {scenario.id}: field {field_.name} in R^{field_.dimension}")
            scenario.build_lambda()
        except (BadParams, UnknownEntry, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"scenario {scenario.id}: {exc}") from exc
    return suite


def load_suite(path: Union[str, Path]) -> SuiteConfig:
    """
    Read and validate a JSON scenario file

    Raises:
        ConfigError: If the file is missing, not JSON or not a valid suite
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    suite = parse_suite(data)
    logger.info(f"loaded {len(suite.scenarios)} scenario(s) from {path}")
    return suite
