class PreconditionViolated(ValueError):
    """An operation was called with arguments that break its stated contract."""
