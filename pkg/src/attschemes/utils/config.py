"""
Run configuration: CLI arguments, an optional JSON config file and
ATTSCHEMES_* environment variables, resolved in that order.
"""

import argparse
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from attschemes.exceptions import ConfigError
from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams

logger = logging.getLogger(__name__)

ENV_THREADS = "ATTSCHEMES_THREADS"
ENV_PRECISION = "ATTSCHEMES_PRECISION"
ENV_RANK_LIMIT = "ATTSCHEMES_RANK_LIMIT"
ENV_BASES = "ATTSCHEMES_BASES"

DEFAULT_PRECISION = 256
DEFAULT_RANK_LIMIT = 200
DEFAULT_EXPONENTS = (4, 20)

# keys accepted in a --config file
CONFIG_FIELDS = (
    "q",
    "n",
    "ell",
    "m",
    "r",
    "p",
    "input",
    "output",
    "format",
    "scope",
    "kind",
    "bases",
    "threads",
    "precision",
    "rank_limit",
    "h_min_exp",
    "h_max_exp",
)
OUTPUT_FORMATS = ("json", "csv")


def get_param(key: str, env_var: Optional[str], kwargs: Dict[str, Any], default: Any = None) -> Any:
    """
    Get parameter with priority: CLI argument > environment variable > default.

    Args:
        key: Parameter key in kwargs
        env_var: Environment variable name (None when the key has no variable)
        kwargs: Keyword arguments dictionary
        default: Default value if neither arg nor env var is set

    Returns:
        Parameter value
    """
    if key in kwargs and kwargs[key] is not None:
        return kwargs[key]

    if env_var:
        env_value = os.getenv(env_var)
        if env_value is not None and env_value.strip() != "":
            return env_value

    return default


def get_int_param(key: str, env_var: Optional[str], kwargs: Dict[str, Any], default: Optional[int] = None) -> Optional[int]:
    """
    Get integer parameter with type conversion.

    Raises:
        ConfigError: If the resolved value is not an integer
    """
    value = get_param(key, env_var, kwargs, None)
    if value is None:
        return default
    try:
        return int(value)
    except (ValueError, TypeError) as e:
        source = f"{env_var} env var" if env_var and key not in kwargs else key
        raise ConfigError(f"{source} must be an integer, got {value!r}") from e


def parse_bases(value: Any) -> Optional[List[int]]:
    """
    Parse a base vertex list given as "0,5,9" or as a list of integers.

    Raises:
        ConfigError: On a malformed or empty list
    """
    if value is None:
        return None
    items = value.split(",") if isinstance(value, str) else list(value)
    try:
        bases = [int(item) for item in items if str(item).strip() != ""]
    except (ValueError, TypeError) as e:
        raise ConfigError(f"base vertices must be integers, got {value!r}") from e
    if not bases:
        raise ConfigError("base vertex list is empty")
    return bases


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Load a JSON config file holding RunConfig fields.

    Raises:
        ConfigError: If the file is unreadable, is not a JSON object or has unknown keys
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(data) - set(CONFIG_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config field: {', '.join(unknown)}")
    logger.debug("Loaded config %s: %s", path, data)
    return data


def collect_kwargs(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Merge a --config file under the explicit CLI arguments.

    Values given on the command line win; the file fills the gaps.
    """
    cli = {key: value for key, value in vars(args).items() if value is not None and key not in ("func", "config", "action")}
    config_path = getattr(args, "config", None)
    if config_path is None:
        return cli
    merged = load_config_file(Path(config_path))
    merged.update(cli)
    return merged


@dataclass
class RunConfig:
    """Validated settings for one CLI invocation."""

    subcommand: str
    params: Optional[SchemeParams] = None
    johnson: Optional[JohnsonParams] = None
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    output_format: str = "json"
    bases: Optional[List[int]] = None
    threads: int = 1
    precision: int = DEFAULT_PRECISION
    rank_limit: int = DEFAULT_RANK_LIMIT
    exponents: Tuple[int, int] = DEFAULT_EXPONENTS
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ConfigError: On any inconsistent setting
        """
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}")
        if self.threads < 1:
            raise ConfigError(f"thread count must be at least 1, got {self.threads}")
        if self.precision < 64:
            raise ConfigError(f"precision must be at least 64 bits, got {self.precision}")
        if self.rank_limit < 0:
            raise ConfigError(f"rank limit must be non-negative, got {self.rank_limit}")
        low, high = self.exponents
        if not 1 <= low < high:
            raise ConfigError(f"h exponents must satisfy 1 <= min < max, got {low}..{high}")
        if self.bases is not None and any(base < 0 for base in self.bases):
            raise ConfigError(f"base vertices must be non-negative, got {self.bases}")

    @classmethod
    def from_kwargs(cls, subcommand: str, kwargs: Dict[str, Any]) -> "RunConfig":
        """
        Resolve a RunConfig from merged CLI/config-file values and the environment.

        Raises:
            ConfigError: On missing, malformed or inconsistent values
            FieldNotSupportedError: If q has no field table
        """
        low = get_int_param("h_min_exp", None, kwargs, DEFAULT_EXPONENTS[0])
        high = get_int_param("h_max_exp", None, kwargs, DEFAULT_EXPONENTS[1])
        input_path = kwargs.get("input")
        output_path = kwargs.get("output")
        return cls(
            subcommand=subcommand,
            params=scheme_params_from(kwargs),
            johnson=johnson_params_from(kwargs),
            input_path=Path(input_path) if input_path is not None else None,
            output_path=Path(output_path) if output_path is not None else None,
            output_format=str(kwargs.get("format") or "json"),
            bases=parse_bases(get_param("bases", ENV_BASES, kwargs)),
            threads=get_int_param("threads", ENV_THREADS, kwargs, os.cpu_count() or 1),
            precision=get_int_param("precision", ENV_PRECISION, kwargs, DEFAULT_PRECISION),
            rank_limit=get_int_param("rank_limit", ENV_RANK_LIMIT, kwargs, DEFAULT_RANK_LIMIT),
            exponents=(low, high),
            extra={key: kwargs[key] for key in ("scope", "kind", "p") if key in kwargs},
        )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls.from_kwargs(args.action, collect_kwargs(args))


def _int_fields(kwargs: Dict[str, Any], keys: Tuple[str, ...]) -> Optional[Dict[str, int]]:
    present = [key for key in keys if kwargs.get(key) is not None]
    if not present:
        return None
    missing = [key for key in keys if key not in present]
    if missing:
        raise ConfigError(f"missing parameter: {', '.join(missing)}")
    try:
        return {key: int(kwargs[key]) for key in keys}
    except (ValueError, TypeError) as e:
        raise ConfigError(f"parameters {', '.join(keys)} must be integers") from e


def scheme_params_from(kwargs: Dict[str, Any]) -> Optional[SchemeParams]:
    """SchemeParams from q, n, ell, m, or None when q is absent."""
    if kwargs.get("q") is None:
        return None
    values = _int_fields(kwargs, ("q", "n", "ell", "m"))
    return SchemeParams(**values) if values else None


def johnson_params_from(kwargs: Dict[str, Any]) -> Optional[JohnsonParams]:
    """JohnsonParams from r, n, m, or None when r is absent."""
    if kwargs.get("r") is None:
        return None
    values = _int_fields(kwargs, ("r", "n", "m"))
    return JohnsonParams(**values) if values else None
