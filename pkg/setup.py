"""Optional compiled kernel core: python setup.py build_ext --inplace.

The package is fully functional without it; levylab.kernels falls back to
the pure-numpy backend when the extension is absent.
"""
from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("levylab._fastkern", ["src/levylab/_fastkern.pyx"])],
        language_level=3,
    ),
)
