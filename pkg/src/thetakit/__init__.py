"""Exact finite computations with Joyal's categories Theta_n and presheaves on them."""

from .theta import (ThetaObject, ThetaMorphism, ThetaCategory, bounded, category, cell,
                    compose, degree, diag_object, enumerate_objects, hom, identity,
                    tau_theta)
from ._kernels import BACKEND

__all__ = ["ThetaObject", "ThetaMorphism", "ThetaCategory", "bounded", "category", "cell",
           "compose", "degree", "diag_object", "enumerate_objects", "hom", "identity",
           "tau_theta", "BACKEND"]
__version__ = "0.1.0"
