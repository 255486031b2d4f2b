"""Value-based distances between two-player information structures."""

from ._infodist import *  # noqa: F401,F403
from ._infodist import InfodistError, __doc__  # noqa: F401
