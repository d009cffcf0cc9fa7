from typing import Annotated, TypeAlias

import numpy as np
from numpy.typing import NDArray
from pydantic import Field

__all__ = (
    "Frequency",
    "Length",
    "PositiveFloat",
    "ComplexVector",
    "ComplexMatrix",
    "RealVector",
)

Frequency: TypeAlias = Annotated[float, Field(gt=0)]
"""Strictly positive frequency in Hz."""
Length: TypeAlias = Annotated[float, Field(gt=0)]
"""Strictly positive length in metres."""
PositiveFloat: TypeAlias = Annotated[float, Field(gt=0)]
"""Strictly positive dimensionless or physical scalar."""

ComplexVector: TypeAlias = NDArray[np.complex128]
"""One-dimensional complex array of length N."""
ComplexMatrix: TypeAlias = NDArray[np.complex128]
"""Two-dimensional complex N×N array."""
RealVector: TypeAlias = NDArray[np.float64]
"""One-dimensional real array."""
