class InvariantBreach(RuntimeError):
    """An internal consistency check failed; the result must not be trusted."""
