class ModelError(ValueError):
    """Invalid model input: bad syntax, singular or non-invertible matrix, bad group."""


class DegenerateError(RuntimeError):
    """A restricted polynomial has an infinite-dimensional Jacobi ring."""


class GroupOrderError(RuntimeError):
    """A group grew beyond the configured order cap."""


class PreconditionError(ValueError):
    """An operation was called outside its admissible range (e.g. G not in SL_W)."""
