"""Build the optional Cython Sturm-count kernel.

The package works without it; ``etbounds._kernels`` falls back to the
pure-Python implementation when the extension is missing.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "etbounds._sturm_ext",
                ["src/etbounds/_sturm_ext.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
