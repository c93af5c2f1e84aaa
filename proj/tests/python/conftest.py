import os
import sys

# The smoke tests run against the freshly built extension: CMake exports the
# module directory via POLYCAMO_PYMODULE_DIR; sys.path gets both that
# directory (for `_core`) and the source package (for `polycamo`).
_here = os.path.dirname(os.path.abspath(__file__))
_repo = os.path.dirname(os.path.dirname(_here))

module_dir = os.environ.get("POLYCAMO_PYMODULE_DIR")
if module_dir:
    pkg_dir = os.path.join(_repo, "python", "polycamo")
    sys.path.insert(0, module_dir)
    sys.path.insert(0, os.path.join(_repo, "python"))
    # Let `polycamo._core` resolve to the built module when the package is
    # imported from the source tree.
    import importlib
    import types

    core = importlib.import_module("_core")
    pkg = types.ModuleType("polycamo")
    pkg.__path__ = [pkg_dir]
    sys.modules["polycamo"] = pkg
    sys.modules["polycamo._core"] = core
    with open(os.path.join(pkg_dir, "__init__.py")) as f:
        exec(compile(f.read(), "polycamo/__init__.py", "exec"), pkg.__dict__)
