"""Resource guards shared by every module.

Values live in context variables so a CLI invocation (or a test) can
tighten them locally without touching global state.
"""
from __future__ import annotations

import contextlib
import contextvars

DEFAULT_MAX_TERMS = 10**7
DEFAULT_MAX_GRID = 10**6

_max_terms = contextvars.ContextVar("max_terms", default=DEFAULT_MAX_TERMS)
_max_grid = contextvars.ContextVar("max_grid", default=DEFAULT_MAX_GRID)


def max_terms() -> int:
    return _max_terms.get()


def max_grid() -> int:
    return _max_grid.get()


@contextlib.contextmanager
def resource_limits(max_terms: int | None = None, max_grid: int | None = None):
    """Temporarily override the term-count and grid-size guards."""
    tokens = []
    if max_terms is not None:
        tokens.append((_max_terms, _max_terms.set(max_terms)))
    if max_grid is not None:
        tokens.append((_max_grid, _max_grid.set(max_grid)))
    try:
        yield
    finally:
        for var, tok in reversed(tokens):
            var.reset(tok)
