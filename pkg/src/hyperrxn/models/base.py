"""Base model classes for hyperrxn records."""

from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict


class BaseModel(PydanticBaseModel):  # type: ignore[misc]
    """Base model class for all hyperrxn data records.

    This class provides common configuration for molecules, reactions,
    hypergraphs and reports.

    Configuration:
        - frozen=True: Records are immutable after construction, so parsed
          molecules and built hypergraphs can be shared between threads
        - extra="forbid": Unknown fields are rejected, catching typos in
          configuration files and JSON inputs
        - use_enum_values=False: Enum members are kept as members so that
          relation and node kinds compare by identity

    Example:
        >>> class Point(BaseModel):
        ...     x: int
        >>> Point(x=1).x
        1
    """

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        use_enum_values=False,
    )


class MutableModel(PydanticBaseModel):  # type: ignore[misc]
    """Base class for records that are filled in incrementally.

    Run manifests and configuration objects are assembled step by step, so
    they validate every assignment instead of being frozen.
    """

    model_config = ConfigDict(
        extra="forbid",
        validate_assignment=True,
        use_enum_values=False,
    )
