from ._caketest import *  # noqa: F401,F403
