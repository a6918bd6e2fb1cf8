"""Zeno and anti-Zeno dynamics of a measured qubit."""

from ._core import *  # noqa: F401,F403
from ._core import ZenoError, ModelParams, check_count, schema_version

__all__ = [name for name in dir() if not name.startswith("_")]
