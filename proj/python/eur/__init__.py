"""Entropic uncertainty relations with quantum memory.

States are ``DensityMatrix`` objects; observables may be ``Observable``
instances or Hermitian numpy arrays.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
