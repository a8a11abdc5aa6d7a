"""Behavioral type engine for dynamically reconfigurable components.

Thin wrapper over the native module; everything lives in C++.
"""

try:
    from ._bht import *  # noqa: F401,F403
    from ._bht import __version__  # noqa: F401
except ImportError:  # development layout: extension next to the package dir
    from _bht import *  # noqa: F401,F403
    from _bht import __version__  # noqa: F401
