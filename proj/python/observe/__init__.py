"""Python bindings for the observe toolkit."""

from ._observe import *  # noqa: F401,F403
from ._observe import __version__, Graph, ObserveError, ParseError, CapExceeded, SearchExhausted  # noqa: F401
