"""Build the bell_lp._core extension through the project's CMake build.

Everything about the extension (sources, flags, dependencies) lives in
CMakeLists.txt; this file only teaches setuptools to invoke it and to drop
the resulting module where the wheel expects it.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        # get_ext_fullpath points at <build_lib>/bell_lp/_core<suffix>; CMake
        # should write the module straight into that directory.
        ext_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DBELL_LP_BUILD_CLI=OFF",
            "-DBELL_LP_BUILD_TESTS=OFF",
            "-DBELL_LP_BUILD_PYTHON=ON",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={ext_dir}",
        ]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("bell_lp._core")],
    cmdclass={"build_ext": CMakeBuild},
)
