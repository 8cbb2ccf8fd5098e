"""
Field catalog registry - registration and lookup of field builders by name
"""
import inspect
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from core.errors import BadParams, UnknownEntry

from .field import FieldND

logger = logging.getLogger(__name__)


@dataclass
class FieldInfo:
    """Catalog entry information structure"""

    name: str
    builder: Callable[..., FieldND]
    description: Optional[str] = None
    tags: List[str] = field(default_factory=list)
    parameters: Optional[List[str]] = None
    signature: Optional[str] = None

    def __post_init__(self):
        """Set default description from builder docstring if not provided"""
        if self.description is None and self.builder.__doc__:
            self.description = self.builder.__doc__.strip().split("\n")[0]
        if self.parameters is None:
            sig = inspect.signature(self.builder)
            self.parameters = list(sig.parameters.keys())
            self.signature = str(sig)


class FieldCatalog:
    """Registry of named field builders"""

    def __init__(self):
        self._fields: Dict[str, FieldInfo] = {}

    def register_field(
        self,
        func: Optional[Callable[..., FieldND]] = None,
        *,
        name: Optional[str] = None,
        description: Optional[str] = None,
        tags: Optional[List[str]] = None,
    ) -> Callable:
        """
        Register a builder as a catalog entry

        Args:
            func: Builder returning a FieldND (for decorator usage)
            name: Entry name (defaults to the builder's name)
            description: Entry description (defaults to the docstring's first line)
            tags: Tags for search_fields

        Returns:
            The original builder
        """

        def decorator(f: Callable[..., FieldND]) -> Callable[..., FieldND]:
            entry = name or f.__name__
            self._fields[entry] = FieldInfo(
                name=entry, builder=f, description=description, tags=tags or []
            )
            return f

        if func is None:
            return decorator
        else:
            return decorator(func)

    def get_field_info(self, name: str) -> Optional[FieldInfo]:
        return self._fields.get(name)

    def list_fields(self) -> List[str]:
        return list(self._fields.keys())

    def list_fields_with_info(self) -> List[FieldInfo]:
        return list(self._fields.values())

    def search_fields(self, tag: str) -> List[str]:
        """Names of the entries carrying a tag"""
        return [name for name, info in self._fields.items() if tag in info.tags]

    def build(self, name: str, params: Optional[Dict[str, Any]] = None) -> FieldND:
        """
        Instantiate an entry

        Args:
            name: Entry name
            params: Keyword parameters for the builder

        Returns:
            The field

        Raises:
            UnknownEntry: If no entry has that name
            BadParams: If the parameters do not fit the builder
        """
        info = self._fields.get(name)
        if info is None:
            raise UnknownEntry(f"unknown field {name!r}; known: {', '.join(self.list_fields())}")
        params = dict(params or {})
        unexpected = sorted(set(params) - set(info.parameters or ()))
        if unexpected:
            raise BadParams(f"field {name!r} takes no parameter(s) {unexpected}")
        logger.debug(f"building field {name} with {params}")
        return info.builder(**params)


# Global catalog instance
field_catalog = FieldCatalog()


def register_field(
    func: Optional[Callable[..., FieldND]] = None,
    *,
    name: Optional[str] = None,
    description: Optional[str] = None,
    tags: Optional[List[str]] = None,
) -> Callable:
    """Decorator registering a builder in the global catalog"""
    return field_catalog.register_field(
        func=func, name=name, description=description, tags=tags
    )


def get_field_info(name: str) -> Optional[FieldInfo]:
    return field_catalog.get_field_info(name)


def list_fields() -> List[str]:
    return field_catalog.list_fields()


def list_fields_with_info() -> List[FieldInfo]:
    return field_catalog.list_fields_with_info()


def search_fields(tag: str) -> List[str]:
    return field_catalog.search_fields(tag)
