"""Build script for the optional compiled scan kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so a failed compile downgrades to a warning
instead of aborting the install.
"""

import warnings

from setuptools import setup


def extension_modules():
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        warnings.warn(f"compiled kernels skipped ({exc}); using pure-Python fallback")
        return []
    ext = Extension(
        "lanefv._scan",
        ["src/lanefv/_scan.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extension_modules())
