"""Quantum principal bundles with the universal calculus."""
from .core import *  # noqa: F401,F403
from .connection import *  # noqa: F401,F403
from .gauge import *  # noqa: F401,F403
from .trivial import *  # noqa: F401,F403
from .cocycle import *  # noqa: F401,F403
from .associated import *  # noqa: F401,F403
