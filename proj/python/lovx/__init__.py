"""Multi-way Lovasz extensions, ratio solvers, and set-pair eigenvalue tools."""

try:
    from ._lovx import *  # noqa: F401,F403
    from ._lovx import __version__  # noqa: F401
except ImportError:  # in-tree builds expose the module at the top level
    from _lovx import *  # noqa: F401,F403
    from _lovx import __version__  # noqa: F401
