from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    HAVE_CYTHON = True
except ImportError:
    HAVE_CYTHON = False

extensions = []
if HAVE_CYTHON:
    ext = Extension(
        "circbridge._kernels",
        ["src/circbridge/_kernels.pyx"],
        # fp-contract off keeps results bitwise identical to the
        # pure-Python kernels (no fused multiply-add).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    # the pure-Python fallback is selected at import when the build fails
    ext.optional = True
    extensions = cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": False,
            "initializedcheck": False,
        },
    )

setup(ext_modules=extensions)
