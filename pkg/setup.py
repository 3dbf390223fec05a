"""Build script for the optional compiled kernels.

The package works without the extension: hyperspace.kernels falls back to
the numpy implementation when the compiled module is missing, so any build
failure here (no compiler, no Cython) downgrades to a warning.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError


def make_extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "hyperspace._kernels",
        ["src/hyperspace/_kernels.pyx"],
        include_dirs=[np.get_include()],
        language="c++",
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level="3")


class optional_build_ext(build_ext):
    """Build the extension if possible, continue without it otherwise."""

    def run(self):
        try:
            build_ext.run(self)
        except (PlatformError, FileNotFoundError) as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except (CCompilerError, ExecError, PlatformError, ValueError) as exc:
            self._skip(exc)

    def _skip(self, exc):
        print(f"warning: compiled kernels skipped ({exc}); "
              "using the numpy fallback", file=sys.stderr)


setup(ext_modules=make_extensions(), cmdclass={"build_ext": optional_build_ext})
