from setuptools import Extension, setup
from Cython.Build import cythonize
import numpy as np

# -ffp-contract=off keeps the compiled kernels bit-compatible with the
# pure NumPy fallback (no FMA contraction of a*b - c*d).
ext_modules = [
    Extension(
        "kaudit._ckernels",
        ["src/kaudit/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(ext_modules=cythonize(ext_modules, language_level=3))
