"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension (with a warning) if the toolchain is unusable."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"WARNING: building acslab._kernels._core failed ({exc}); "
                  "falling back to the pure-Python kernels", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"WARNING: {ext.name} failed to compile ({exc}); "
                  "falling back to the pure-Python kernels", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; installing without compiled "
              "kernels", file=sys.stderr)
        return []
    ext = Extension(
        "acslab._kernels._core",
        ["src/acslab/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
