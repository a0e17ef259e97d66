"""Build script: compiles the optional Cython search kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so any failure here degrades to the slow path instead of
breaking the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/zhedkit/search_fast.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print("zhedkit: skipping compiled kernel (%s); pure-Python fallback will be used" % exc)

setup(ext_modules=ext_modules)
