"""Build script: compiles the optional training kernel extension.

The compiled kernel is a speedup only. If Cython or a C compiler is
unavailable the install still succeeds and the package falls back to the
pure-Python kernel at import time (udup._kernel_py).
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Swallow compiler failures so a pure-Python install still works."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"warning: compiled kernel skipped ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: {ext.name} skipped ({exc})", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    # No -ffast-math: the kernel must stay bit-compatible with the
    # pure-Python fallback (strict IEEE double, sequential accumulation).
    ext = Extension(
        "udup._kernel",
        ["src/udup/_kernel.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
