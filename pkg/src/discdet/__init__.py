"""Determinant-discriminant identities for polynomial powers over F_p."""

__version__ = "0.1.0"

from .ff import PrimeCtx, prime_ctx  # noqa: F401
