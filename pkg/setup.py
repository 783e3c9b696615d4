from setuptools import setup
from setuptools.extension import Extension

from Cython.Build import cythonize

extensions = [
    Extension("apivec.hashing._core", ["src/apivec/hashing/_core.pyx"]),
]

setup(ext_modules=cythonize(extensions, language_level="3"))
