import os
import sys

# The built extension lives in the CMake build tree; the package sources in
# python/. Both locations come in through environment variables set by ctest
# (or default to an in-tree build/ directory).
_here = os.path.dirname(os.path.abspath(__file__))
_root = os.path.dirname(os.path.dirname(_here))

module_dir = os.environ.get("BANACHLAB_MODULE_DIR", os.path.join(_root, "build"))
pkg_dir = os.environ.get("BANACHLAB_PKG_DIR", os.path.join(_root, "python"))

for p in (module_dir, pkg_dir):
    if p and p not in sys.path:
        sys.path.insert(0, p)
