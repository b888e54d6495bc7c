import os

from setuptools import setup

ext_modules = []
if os.environ.get("ISOFOLD_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("isofold._refine", ["src/isofold/_refine.pyx"])],
            language_level=3,
        )
    except Exception:
        # No Cython or no compiler: the pure-Python kernel is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
