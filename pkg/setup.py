from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; eulertours falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "eulertours._kernels",
                ["src/eulertours/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
