import sys

from setuptools import Extension, setup

# The compiled state-sum core is optional: without Cython (or a working C
# compiler) the package installs anyway and falls back to the pure-Python
# kernel in twistlink.kernels.statesum_py.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "twistlink.kernels._statesum",
                ["src/twistlink/kernels/_statesum.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    sys.stderr.write("Cython not found; installing without the compiled state-sum core\n")

setup(ext_modules=ext_modules)
