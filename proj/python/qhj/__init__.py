from ._qhj import *  # noqa: F401,F403
