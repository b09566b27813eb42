class SchemaError(ValueError):
    """Raised when a JSON document does not describe the expected object."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


__all__ = ["SchemaError"]
