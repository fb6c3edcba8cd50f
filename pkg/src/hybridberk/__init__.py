"""Hybrid Berkovich spaces: points, discs, retractions and skeleta.

The hybrid affine line over Q or Q(i) is modelled by two point kinds,
``ArchPoint`` (ev(z, t), the pullback of |.|^t at z) and ``TrivPoint``
(eta_{p,r} on the trivially valued fibre).  Affine space over a base ring
uses ``GaussPoint``.  Every homotopy is a ``Homotopy`` object whose axioms
can be checked with ``sdr_axiom_suite``.
"""
__version__ = "0.1.0"

from .core_points import (ArchPoint, DerivedPoint, NormValue, TrivPoint, enumerate_irreducibles,
                          eval_archimedean, eval_trivial, seminorm)
from .errors import HybridError, InputError, NumericError
from .homotopy import Homotopy, compose_many, homotopy_compose
from .multipoly import MultiPoly
from .polynomial import Q, QI_FIELD, FieldSpec, Polynomial
from .scalars import QI

__all__ = [
    "__version__", "ArchPoint", "TrivPoint", "DerivedPoint", "NormValue", "seminorm",
    "eval_archimedean", "eval_trivial", "enumerate_irreducibles", "HybridError", "InputError",
    "NumericError", "Homotopy", "homotopy_compose", "compose_many", "MultiPoly", "Polynomial",
    "FieldSpec", "Q", "QI_FIELD", "QI",
]
