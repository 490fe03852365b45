from setuptools import Extension, setup
from Cython.Build import cythonize
import numpy as np

ext = Extension(
    "eulercount._trace_kernel",
    ["src/eulercount/_trace_kernel.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3"],
)

setup(
    ext_modules=cythonize(
        [ext],
        compiler_directives={"language_level": "3"},
    )
)
