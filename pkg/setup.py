"""Build script: compiles the optional Cython extension walg._speedups.

The package works without the extension (walg.backend falls back to the
pure-Python kernels), so any build failure here downgrades to a warning
instead of breaking the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"warning: building walg._speedups failed ({exc}); "
                  "using the pure-Python kernels", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "using the pure-Python kernels", file=sys.stderr)


ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/walg/_speedups.pyx"],
        language_level=3,
        compiler_directives={"binding": False},
    )
except ImportError:
    print("warning: Cython not available; skipping the compiled kernels",
          file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
