"""Exact computations with braided Hopf algebras of diagonal type.

Cyclotomic scalars, braiding matrices and their Dynkin diagrams, Weyl
groupoid root systems, the free braided algebra, degreewise quotients with
Hilbert series and primitivity tests, and a verifier that decides whether a
relation is forced to vanish in every pre-Nichols algebra of finite
GK-dimension for a concrete braiding.
"""

from .braiding import BraidingMatrix
from .freealg import FreeAlgebra, FreeElement
from .quotient import Presentation, QuotientEngine, ResourceLimitError
from .rootsys import Finite, NotFiniteWithinCap, enumerate_roots
from .scalar import Cyclotomic, RootOfUnity
from .verifier import Verdict, check_forced_relation, run_paper_suite

__all__ = [
    "BraidingMatrix",
    "Cyclotomic",
    "Finite",
    "FreeAlgebra",
    "FreeElement",
    "NotFiniteWithinCap",
    "Presentation",
    "QuotientEngine",
    "ResourceLimitError",
    "RootOfUnity",
    "Verdict",
    "check_forced_relation",
    "enumerate_roots",
    "run_paper_suite",
]

__version__ = "0.1.0"
