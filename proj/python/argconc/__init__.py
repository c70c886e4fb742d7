"""Argument/conclusion corpus toolkit."""

from ._argconc import *  # noqa: F401,F403
from ._argconc import ArgconcError, Record, __version__, schema_version  # noqa: F401
