"""Build hook for the optional compiled kernel.

All metadata lives in pyproject.toml.  When Cython or a C compiler is
missing the package still installs and uses the numpy fallback.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("MADCAP_NO_EXT", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("madcap._kernels", ["src/madcap/_kernels.pyx"],
                       include_dirs=[numpy.get_include()],
                       extra_compile_args=["-O3"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
