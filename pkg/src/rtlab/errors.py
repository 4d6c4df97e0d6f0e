"""Shared exception types.

The CLI maps these onto exit codes (contract violation -> 2, resource
budget -> 3), so every module raises the same two classes instead of
ad-hoc ValueError/RuntimeError.
"""


class ContractViolationError(ValueError):
    """An argument or state violates a documented precondition."""


class ResourceLimitError(RuntimeError):
    """A configured budget (bits, nodes, colorings, vertices) would be exceeded."""
