"""Loading flat TOML configuration files.

A configuration file is a flat table of :class:`TrainingConfig` keys::

    layer_kind = "rgat"
    layers = 10
    dim = 128
    lr = 4.11e-4

Values given as overrides (command-line flags) replace file values. Bundled
configurations are addressed by name: ``uspto``, ``mechanism``, ``ranking``
and ``synthetic``.
"""

import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from pydantic import ValidationError

from hyperrxn.models.config import TrainingConfig
from hyperrxn.utils.error_handling import config_error_from
from hyperrxn.utils.exceptions import RxnConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)


def bundled_configs() -> List[str]:
    """Names of the configurations shipped with the package."""
    folder = resources.files("hyperrxn") / "configs"
    return sorted(
        entry.name[: -len(".toml")] for entry in folder.iterdir() if entry.name.endswith(".toml")
    )


def read_config_values(source: Union[str, Path]) -> Dict[str, Any]:
    """Raw key/value pairs of a config file or bundled config name.

    Raises:
        RxnConfigError: If the source does not exist, is not valid TOML or
            contains nested tables
    """
    path = Path(source)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        where = str(path)
    else:
        name = str(source)[: -len(".toml")] if str(source).endswith(".toml") else str(source)
        entry = resources.files("hyperrxn") / "configs" / f"{name}.toml"
        if not entry.is_file():
            raise RxnConfigError(
                f"No config file or bundled config named {str(source)!r} "
                f"(bundled: {', '.join(bundled_configs())})",
                source=str(source),
            )
        text = entry.read_text(encoding="utf-8")
        where = f"bundled config {name}"
    try:
        values = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise RxnConfigError(f"Invalid TOML in {where}: {e}", source=where) from e
    nested = sorted(key for key, value in values.items() if isinstance(value, dict))
    if nested:
        raise RxnConfigError(
            f"Config {where} must be flat; found tables {nested}", source=where
        )
    logger.debug(f"Read {len(values)} config keys from {where}")
    return values


def load_config(
    source: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> TrainingConfig:
    """Build a validated :class:`TrainingConfig`.

    Args:
        source: Config file path or bundled config name; defaults only when
            ``None``
        overrides: Values that replace file values; ``None`` entries are
            ignored so unset command-line flags do not clobber the file

    Raises:
        RxnConfigError: For unknown keys, invalid values or unreadable files

    Example:
        >>> load_config("ranking").layers
        5
        >>> load_config("ranking", {"layers": 3}).layers
        3
    """
    values: Dict[str, Any] = read_config_values(source) if source is not None else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    try:
        return TrainingConfig.model_validate(values)
    except ValidationError as e:
        raise config_error_from(e, str(source) if source is not None else "flags") from e
