"""Build script for the compiled quadrature kernel extension.

The package works without the extension (a pure NumPy fallback is selected
at import time), so a failed extension build only costs speed.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "mfbs._kernels._gkcore",
                ["src/mfbs/_kernels/_gkcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
