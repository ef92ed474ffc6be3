class CabletorusError(ValueError):
    """Domain error: a precondition of a library operation was violated."""
