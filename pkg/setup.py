import os

from setuptools import setup

ext_modules = []
if os.environ.get("IGUSA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:  # build the pure-Python package only
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "igusa._lift",
                    ["src/igusa/_lift.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
