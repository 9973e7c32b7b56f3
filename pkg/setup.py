import os
import sys

from setuptools import Extension, setup

ext_modules = []
try:
    if not os.path.exists("src/bsol/_census_cy.pyx"):
        raise ImportError
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bsol._census_cy",
                ["src/bsol/_census_cy.pyx"],
                language="c++",
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    sys.stderr.write("Cython unavailable, skipping the compiled census kernel\n")

setup(ext_modules=ext_modules)
