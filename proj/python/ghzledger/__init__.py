"""Entropy accounting and relative-entropy entanglement bounds for small
multipartite states. Thin wrapper over the C++ extension module."""

try:
    from ghzledger._core import *  # noqa: F401,F403
    from ghzledger._core import __version__  # noqa: F401
except ImportError:  # in-tree builds put _core next to the package
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
