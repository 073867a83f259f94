"""Collusion-resistant fingerprinting codes: construction, verification,
averaging-attack simulation, tracing, and rate estimation."""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core as _impl
except ImportError:  # running against a build tree where _core is top-level
    from _core import *  # noqa: F401,F403
    import _core as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
