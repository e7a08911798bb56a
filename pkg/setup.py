from setuptools import Extension, setup

# The RK4 kernel is an optional speedup; the package falls back to the
# numpy implementation in abnorm._ode_python when the extension is absent.
try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "abnorm._ode_kernel",
                ["src/abnorm/_ode_kernel.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
