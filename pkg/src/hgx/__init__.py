"""Exact-arithmetic kernel for finite-dimensional Hopf algebroids.

The public surface groups into layers:

* :mod:`hgx.fields`, :mod:`hgx.linalg`, :mod:`hgx.tensor` - exact scalars,
  sparse linear algebra, balanced tensor quotients.
* :mod:`hgx.algebra`, :mod:`hgx.bialgebroid` - structure-constant algebras
  and validated left bialgebroids with both inversion structures.
* :mod:`hgx.galois` - comodule algebras, Galois extensions, relative Hopf
  modules and the structure round trips.
* :mod:`hgx.twist`, :mod:`hgx.double` - base-valued cocycle twists and the
  generalized double against a skew pairing.
* :mod:`hgx.cleft` - cleft extensions, crossed products, gauge equivalence.
* :mod:`hgx.io`, :mod:`hgx.cli` - the JSON document format, the example
  corpus, and the ``hgx`` command-line tool.
"""

from .algebra import FiniteDimAlgebra, ValidationError
from .bialgebroid import LeftBialgebroid
from .fields import QQ, Field
from .galois import ComoduleAlgebra, GaloisExtension
from .twist import BaseCocycle, check_cocycle, twist_bialgebroid
from .double import SkewPairing, check_skew_pairing, double_bialgebroid
from .cleft import (CleftExtension, GaugeElement, check_measuring_cocycle,
                    crossed_product)

__version__ = "0.1.0"

__all__ = [
    "BaseCocycle", "CleftExtension", "ComoduleAlgebra", "Field",
    "FiniteDimAlgebra", "GaloisExtension", "GaugeElement",
    "LeftBialgebroid", "QQ", "SkewPairing", "ValidationError",
    "check_cocycle", "check_measuring_cocycle", "check_skew_pairing",
    "crossed_product", "double_bialgebroid", "twist_bialgebroid",
]
