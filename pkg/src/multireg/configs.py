import argparse
import pathlib

import toml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime

from multireg.model.errors import InputError


class Caps(BaseSettings):
    """Size caps and numeric knobs; every field can be overridden with ``MULTIREG_<NAME>``."""

    model_config = SettingsConfigDict(env_prefix="MULTIREG_", frozen=True)

    enumeration_nodes: int = 2_000_000  # search nodes per integer-feasibility query
    taylor_generators: int = 16  # Taylor complex has 2^q terms
    fan_rays: int = 20
    stab_window: int = 3  # h0 kernel-chain stabilization window
    torsion_power_cap: int = 64
    characteristic: int = 0  # 0 means exact rationals
    scan_limit: int = 4096  # vregnum downward scan
    oracle_bound: int = 6  # |a_k| bound of the truncated Cech oracle

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        # 环境变量优先于配置文件
        return env_settings, init_settings

    @field_validator("characteristic")
    @classmethod
    def validate_characteristic(cls, value: int) -> int:
        if value != 0 and not isprime(value):
            raise ValueError("characteristic must be 0 or a prime")
        return value

    @field_validator(
        "enumeration_nodes",
        "taylor_generators",
        "fan_rays",
        "stab_window",
        "torsion_power_cap",
        "scan_limit",
        "oracle_bound",
    )
    @classmethod
    def validate_positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("caps must be positive")
        return value


class Config(BaseModel):
    model_config = ConfigDict(frozen=True)

    config_file: pathlib.Path | None = None
    verbose: bool = False
    log_level: str = "INFO"
    output_format: str = "text"
    caps: Caps = Field(default_factory=Caps)

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, value: str) -> str:
        if value not in ("text", "json"):
            raise ValueError("output_format must be 'text' or 'json'")
        return value


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-c",
        "--config",
        type=pathlib.Path,
        default=pathlib.Path("./config/config.toml"),
        help="Path to the configuration file (optional)",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Show verbose (DEBUG) output",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=("text", "json"),
        help="Report format",
    )
    parser.add_argument(
        "--characteristic",
        type=int,
        help="Coefficient field characteristic (0 = rationals)",
    )


def _read_config_file(path: pathlib.Path | None) -> dict:
    if path is None or not path.exists():
        return {}
    try:
        return toml.load(path)
    except toml.TomlDecodeError as exc:
        logger.warning(f"Skip unreadable config file {str(path)!r}: {exc}")
        return {}


def load_configs(args: argparse.Namespace | None = None) -> Config:
    """
    Build the configuration from (lowest to highest priority) defaults,
    the TOML config file, ``MULTIREG_*`` environment variables and CLI flags.
    """
    config_file = getattr(args, "config", None)
    toml_config = _read_config_file(config_file)

    caps_values: dict[str, int] = {}
    for key, value in toml_config.get("caps", {}).items():
        if key not in Caps.model_fields:
            logger.warning(f"Skip unknown caps item {key!r}; value={value!r}")
            continue
        try:
            Caps(**{key: value})
        except ValidationError as exc:
            logger.warning(f"Skip invalid caps item {key!r}: {exc}; value={value!r}")
            continue
        caps_values[key] = value
    caps = Caps(**caps_values)

    characteristic = getattr(args, "characteristic", None)
    if characteristic is not None:
        if characteristic != 0 and not isprime(characteristic):
            raise InputError(f"characteristic must be 0 or a prime, got {characteristic}")
        # 命令行参数覆盖环境变量与配置文件
        caps = caps.model_copy(update={"characteristic": characteristic})

    verbose = bool(getattr(args, "verbose", False))
    output_format = getattr(args, "output_format", None) or toml_config.get(
        "output_format", "text"
    )
    return Config(
        config_file=config_file if config_file and config_file.exists() else None,
        verbose=verbose,
        log_level="DEBUG" if verbose else toml_config.get("log_level", "INFO"),
        output_format=output_format,
        caps=caps,
    )
