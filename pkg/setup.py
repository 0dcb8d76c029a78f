"""Build script for the optional Cython speedup kernels.

The package works without the compiled extension (a NumPy fallback is
selected at import time); building it makes training runs several times
faster.
"""
import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "kgrl.nn.kernels._speedups",
        ["src/kgrl/nn/kernels/_speedups.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
