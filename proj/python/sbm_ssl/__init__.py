"""Semi-supervised community detection on SBM graphs with a noisy oracle."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
