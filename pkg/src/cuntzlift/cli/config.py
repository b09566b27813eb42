import os

from typing import Any, Mapping, Optional, TextIO

import attr
import toml

from .exceptions import InvalidKeyError, MissingKeyError

#: The table settings files keep their keys in.
TABLE = "cuntzlift"

#: Environment variable overriding the resolution cap.
ENV_RESOLUTION_CAP = "CUNTZLIFT_RESOLUTION_CAP"

OUTPUT_FORMATS = ("json", "text")


def _validate_int(instance, attribute: attr.Attribute, value: Any):
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"'{attribute.name}' must be an integer, got {value!r}")


def _validate_nonnegative(instance, attribute: attr.Attribute, value: int):
    if value < 0:
        raise ValueError(f"'{attribute.name}' must be non-negative, got {value}")


def _validate_positive(instance, attribute: attr.Attribute, value: int):
    if value < 1:
        raise ValueError(f"'{attribute.name}' must be positive, got {value}")


def _validate_format(instance, attribute: attr.Attribute, value: Any):
    if not isinstance(value, str):
        raise TypeError(f"'{attribute.name}' must be a string, got {value!r}")
    if value not in OUTPUT_FORMATS:
        raise ValueError(
            f"unsupported value '{value}' for '{attribute.name}', expected one of "
            f"{', '.join(OUTPUT_FORMATS)}"
        )


@attr.s(frozen=True, slots=True)
class Settings:
    """Defaults for the command-line tool.

    Settings files are TOML with every key under a `[cuntzlift]` table, so they can
    share a file with other tools. Command-line flags override the environment, which
    overrides the file.

    Attributes:
        resolution_cap (int): The largest resolution n any command may work at.
            Defaults to 6.
        seed (int): Seed of the randomized property trials. Defaults to 0.
        output_format (str): *json* or *text*. Defaults to *json*.
        trials (int): Number of randomized trials per property. Defaults to 20.
    """

    resolution_cap: int = attr.ib(default=6, validator=[_validate_int, _validate_nonnegative])
    seed: int = attr.ib(default=0, validator=[_validate_int])
    output_format: str = attr.ib(default="json", validator=[_validate_format])
    trials: int = attr.ib(default=20, validator=[_validate_int, _validate_positive])

    @classmethod
    def from_env(
        cls, base: "Settings", environ: Optional[Mapping[str, str]] = None
    ) -> "Settings":
        """Apply the environment overrides to `base`.

        Args:
            base (Settings): The settings to start from.
            environ (Mapping[str, str], optional): The environment. Defaults to
                `os.environ`.

        Returns:
            Settings: `base` with the overrides applied.
        """
        if environ is None:
            environ = os.environ
        raw = environ.get(ENV_RESOLUTION_CAP)
        if raw is None or not raw.strip():
            return base
        try:
            cap = int(raw)
        except ValueError as e:
            raise ValueError(f"'{ENV_RESOLUTION_CAP}' must be an integer, got '{raw}'") from e
        return attr.evolve(base, resolution_cap=cap)

    def check_resolution(self, n: int, name: str = "resolution") -> int:
        """Return n, or raise `ValueError` if it exceeds the resolution cap."""
        if n > self.resolution_cap:
            raise ValueError(
                f"{name} {n} exceeds the resolution cap {self.resolution_cap} "
                f"(raise it with {ENV_RESOLUTION_CAP} or a settings file)"
            )
        return n

    def dumps(self) -> str:
        """Serialize these `Settings` to a TOML string.

        Returns:
            str: TOML formatted settings.
        """
        return toml.dumps({TABLE: attr.asdict(self)})

    def dump(self, f: TextIO):
        f.write(self.dumps())


def loads(s: str) -> Settings:
    """Deserialize a TOML string to `Settings`; absent keys keep their defaults.

    Args:
        s (str): The TOML formatted string to deserialize.

    Returns:
        Settings: The settings.

    Raises:
        MissingKeyError: raised when the `[cuntzlift]` table is missing.
        InvalidKeyError: raised for unknown keys.
    """
    toml_data = toml.loads(s)
    try:
        table = toml_data[TABLE]
    except KeyError as e:
        raise MissingKeyError(f"required table '{TABLE}' missing from settings") from e
    if not isinstance(table, dict):
        raise TypeError(f"'{TABLE}' must be a table")

    known = {a.name for a in attr.fields(Settings)}
    for key in table:
        if key not in known:
            raise InvalidKeyError(f"unexpected key '{key}' found in '{TABLE}'")
    return Settings(**table)


def load(f: TextIO) -> Settings:
    """Deserialize a TOML file-like object to `Settings`.

    Args:
        f (TextIO): The file-like object from which to read.

    Returns:
        Settings: The settings.
    """
    return loads(f.read())


__all__ = ["ENV_RESOLUTION_CAP", "OUTPUT_FORMATS", "Settings", "TABLE", "load", "loads"]
