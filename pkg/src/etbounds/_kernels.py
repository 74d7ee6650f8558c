"""Select the compiled Sturm kernels when built, else the Python ones."""
try:
    from ._sturm_ext import lowest_eigenvalue, sturm_count

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._sturm_py import lowest_eigenvalue, sturm_count

    BACKEND = "python"

__all__ = ["BACKEND", "lowest_eigenvalue", "sturm_count"]
