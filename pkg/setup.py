from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext = cythonize([Extension("spectralab.mc._sweep", ["src/spectralab/mc/_sweep.pyx"])],
                    language_level=3)
except ImportError:
    ext = []

setup(ext_modules=ext)
