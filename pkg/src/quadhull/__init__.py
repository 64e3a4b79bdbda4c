"""Key recovery for McEliece-style alternant codes via quadratic hulls.

The package is organised bottom-up: :mod:`quadhull.ff` (finite fields),
:mod:`quadhull.linalg`, :mod:`quadhull.weil`, :mod:`quadhull.codes`,
:mod:`quadhull.hull` and :mod:`quadhull.attack`, with :mod:`quadhull.cli`
as the command-line front end.
"""

from .attack import AttackReport, StabilizerAlgebra, compute_algebra, full_attack, verify_key
from .codes import AlternantInstance, GrsSpec, LinearCode, keygen, keygen_alternant, keygen_goppa
from .ff import FieldTower
from .hull import QuadricBasis, RegimeReport, i2_basis, regime

__version__ = "0.1.0"

__all__ = [
    "AlternantInstance",
    "AttackReport",
    "FieldTower",
    "GrsSpec",
    "LinearCode",
    "QuadricBasis",
    "RegimeReport",
    "StabilizerAlgebra",
    "compute_algebra",
    "full_attack",
    "i2_basis",
    "keygen",
    "keygen_alternant",
    "keygen_goppa",
    "regime",
    "verify_key",
]
