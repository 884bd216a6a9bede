"""Sharp-penalty fixed-point solver for monotone variational inequalities.

Thin re-export of the native module; see the project README for usage.
"""

try:
    from ._visharp import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _visharp import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)
