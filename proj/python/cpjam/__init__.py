from ._cpjam import *  # noqa: F401,F403
from ._cpjam import __doc__  # noqa: F401
