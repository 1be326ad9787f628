"""Python interface to the qgsw numerical core."""

from ._qgsw import *  # noqa: F401,F403
from ._qgsw import __version__  # noqa: F401
