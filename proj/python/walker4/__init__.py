"""Curvature workbench for four-dimensional neutral Walker metrics."""

try:
    # installed layout: the extension lives inside the package
    from ._walker4 import *  # noqa: F401,F403
    from ._walker4 import __version__  # noqa: F401
except ImportError:
    # build-tree layout: the extension sits next to the package on sys.path
    from _walker4 import *  # noqa: F401,F403
    from _walker4 import __version__  # noqa: F401
