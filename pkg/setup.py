import platform
import sys

import numpy as np
from setuptools import Extension, setup

compile_args, link_args = ["-O3"], []
if sys.platform.startswith("linux") and platform.machine() == "x86_64":
    # glibc's libmvec supplies SIMD exp for the kernel reductions; -ffast-math
    # stays out of the link step so crtfastmath (FTZ/DAZ) is not pulled in
    compile_args.append("-ffast-math")
    link_args.append("-lmvec")

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; deltaxai.kernels falls back to numpy
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "deltaxai._ckernels",
                ["src/deltaxai/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=compile_args,
                extra_link_args=link_args,
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
