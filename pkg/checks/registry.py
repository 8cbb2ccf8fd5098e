"""
Check Registry - registration of named checks that scenarios refer to
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel, Field

from core.quadrature import BoxIntegrator

from .scenario import Scenario


class CheckOutcome(BaseModel):
    """What a check computed: both sides of its identity and their gap"""

    lhs: float = Field(..., description="Left-hand side")
    rhs: float = Field(..., description="Right-hand side")
    residual: float = Field(..., description="Gap judged against the tolerance")
    tolerance: Optional[float] = Field(
        None, description="Tolerance computed by the check itself (e.g. an analytic tail bound)"
    )
    flagged: bool = Field(False, description="The value is only a certified bound")
    detail: str = Field("", description="Short note for the report")

    @classmethod
    def identity(cls, lhs: float, rhs: float, **kwargs) -> "CheckOutcome":
        """|lhs − rhs| as the residual"""
        residual = abs(lhs - rhs) if math.isfinite(lhs) and math.isfinite(rhs) else math.inf
        return cls(lhs=lhs, rhs=rhs, residual=residual, **kwargs)

    @classmethod
    def bound(cls, lhs: float, rhs: float, **kwargs) -> "CheckOutcome":
        """lhs ≤ rhs, with the excess as the residual"""
        return cls(lhs=lhs, rhs=rhs, residual=max(0.0, lhs - rhs), **kwargs)


CheckFunc = Callable[[Scenario, BoxIntegrator], CheckOutcome]


@dataclass
class CheckInfo:
    """Check information structure"""

    name: str
    func: CheckFunc
    tolerance: float = 1e-8
    description: Optional[str] = None
    tags: List[str] = field(default_factory=list)

    def __post_init__(self):
        """Set default description from function docstring if not provided"""
        if self.description is None and self.func.__doc__:
            self.description = self.func.__doc__.strip().split("\n")[0]


class CheckRegistry:
    """Registry of the checks a scenario may list"""

    def __init__(self):
        self._checks: Dict[str, CheckInfo] = {}

    def register_check(
        self,
        func: Optional[CheckFunc] = None,
        *,
        name: Optional[str] = None,
        tolerance: float = 1e-8,
        description: Optional[str] = None,
        tags: Optional[List[str]] = None,
    ) -> Callable:
        """
        Register a function as a check

        Args:
            func: Function taking (scenario, integrator) and returning a CheckOutcome
            name: Check name (defaults to the function name with '-' for '_')
            tolerance: Default tolerance on the residual
            description: Check description
            tags: List of tags for categorization

        Returns:
            The original function (for decorator usage)
        """

        def decorator(f: CheckFunc) -> CheckFunc:
            check_name = name or f.__name__.replace("_", "-")
            self._checks[check_name] = CheckInfo(
                name=check_name,
                func=f,
                tolerance=tolerance,
                description=description,
                tags=tags or [],
            )
            return f

        if func is None:
            return decorator
        else:
            return decorator(func)

    def get_check(self, name: str) -> Optional[CheckFunc]:
        info = self._checks.get(name)
        return info.func if info else None

    def get_check_info(self, name: str) -> Optional[CheckInfo]:
        return self._checks.get(name)

    def list_checks(self) -> List[str]:
        return list(self._checks.keys())

    def list_checks_with_info(self) -> List[CheckInfo]:
        return list(self._checks.values())

    def search_checks(self, tag: str) -> List[str]:
        """
        Search checks by tag

        Args:
            tag: Tag to search for

        Returns:
            List of check names that have the specified tag
        """
        return [name for name, info in self._checks.items() if tag in info.tags]


# Global registry instance
registry = CheckRegistry()


def register_check(
    func: Optional[CheckFunc] = None,
    *,
    name: Optional[str] = None,
    tolerance: float = 1e-8,
    description: Optional[str] = None,
    tags: Optional[List[str]] = None,
) -> Callable:
    """Decorator registering a check in the global registry"""
    return registry.register_check(
        func=func, name=name, tolerance=tolerance, description=description, tags=tags
    )


def get_check(name: str) -> Optional[CheckFunc]:
    return registry.get_check(name)


def get_check_info(name: str) -> Optional[CheckInfo]:
    return registry.get_check_info(name)


def list_checks() -> List[str]:
    return registry.list_checks()


def list_checks_with_info() -> List[CheckInfo]:
    return registry.list_checks_with_info()


def search_checks(tag: str) -> List[str]:
    return registry.search_checks(tag)
