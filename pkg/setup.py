"""Builds the optional compiled quantile kernel.

The package is fully functional without it (reactest.quantiles falls back to
the pure-Python twin), so any failure here downgrades to a pure install
instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    # -ffp-contract=off keeps the compiled kernel bit-identical to the pure
    # backend: same IEEE-754 operation sequence, no fused multiply-adds.
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "reactest._qkern_c",
                ["src/reactest/_qkern_c.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on build host
    import sys

    print(f"reactest: compiled kernel skipped ({exc}); pure backend will be used", file=sys.stderr)

setup(ext_modules=ext_modules)
