"""Cross-spectral analysis of bivariate graph signals.

Thin wrapper over the C++ extension module; everything lives in ``_gcsa``.
"""

from ._gcsa import *  # noqa: F401,F403
from ._gcsa import __version__  # noqa: F401
