import sys

# In the development build the extension lives in the build tree as a
# top-level module named `_core`; register it under the package path the
# `bell_lp` package imports from.
import _core

sys.modules.setdefault("bell_lp._core", _core)
