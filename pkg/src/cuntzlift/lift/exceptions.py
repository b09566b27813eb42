class LiftError(RuntimeError):
    """Raised when a graph lift fails; `step` names the stage that failed."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


__all__ = ["LiftError"]
