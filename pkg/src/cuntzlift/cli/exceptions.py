class MissingKeyError(KeyError):
    """Raised when a required key is missing from a settings file."""

    pass


class InvalidKeyError(KeyError):
    """Raised when an unexpected key is present in a settings file."""

    pass


__all__ = ["InvalidKeyError", "MissingKeyError"]
