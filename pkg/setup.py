from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("permeq.kernels._core", ["src/permeq/kernels/_core.pyx"])],
        language_level=3,
    )
except ImportError:
    # Pure-Python fallback kernels are selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
