"""Exact computations with the omni-Lie superalgebra gl(V) + V.

Submodules:

* :mod:`superomni.superlinalg` - graded spaces, maps, subspaces;
* :mod:`superomni.liesuper` - Lie superalgebra checks and constructions;
* :mod:`superomni.omni` - the products on gl(V) + V;
* :mod:`superomni.dirac` - Dirac structures and Lie structures on subspaces;
* :mod:`superomni.lie2` - Lie 2-superalgebras and crossed modules;
* :mod:`superomni.documents` - JSON input and output;
* :mod:`superomni.cli` - the ``superomni`` command.
"""

from .scalars import GF, QQ, PrimeField, RationalField
from .superlinalg import GradedSpace, GradedSubspace, SuperMap, SuperSpace, SuperVector

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "PrimeField", "RationalField",
    "GradedSpace", "GradedSubspace", "SuperMap", "SuperSpace", "SuperVector",
]
