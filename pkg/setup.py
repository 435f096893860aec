from setuptools import Extension, setup

# The state-sum kernel is optional: braidkit falls back to the pure-Python
# implementation when the extension is absent (see braidkit/invariants.py).
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("braidkit._bracket", ["src/braidkit/_bracket.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
