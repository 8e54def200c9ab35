"""Numerical toolkit for the Poisson-Lie groups SU(n), their duals AN and the
delinearized cotangent bundle T*SU(2).
"""
__version__ = "0.1.0"

from . import liealg, grp, poisson, cotangent, delin, verify  # noqa: E402,F401
