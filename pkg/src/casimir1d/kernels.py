"""Kernel dispatch: prefer the compiled extension, fall back to pure Python.

``core`` is the module actually in use; ``COMPILED`` records which one won.
Both expose the identical API (they are built from the same source file).
"""

try:
    from . import _core_c as core
    COMPILED = True
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _core as core
    COMPILED = False

__all__ = ["core", "COMPILED"]
