"""Chart-wise diagonalization of division-algebra spin Hamiltonians, the
Dirac strings obstructing the charts, and the operator-valued analogue of
the whole construction built on the detuned Jaynes-Cummings model."""

from .algebra import AlgebraElement, AlgebraTag
from .berry import (
    BasePoint,
    ChartDecomposition,
    ChartTag,
    DiracStringError,
    Matrix2K,
    PointClass,
)
from .config import DEFAULT, Tolerances
from .jc import BlockOperator, JCParams, SectorReport, SingularSectorError

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlgebraTag",
    "BasePoint",
    "BlockOperator",
    "ChartDecomposition",
    "ChartTag",
    "DEFAULT",
    "DiracStringError",
    "JCParams",
    "Matrix2K",
    "PointClass",
    "SectorReport",
    "SingularSectorError",
    "Tolerances",
    "__version__",
]
