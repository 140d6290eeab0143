import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GONALITY_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "gonality._enum_c",
                    ["src/gonality/_enum_c.pyx"],
                    # no FMA contraction: node counts must match the Python kernel
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
