"""qptau: tau functions of the q-Painleve III3 equations.

Three independent pipelines compute the same isomonodromic tau function:
a combinatorial Fourier series over pairs of Young diagrams (nekrasov),
a truncated Fredholm determinant with an explicit integrable kernel
(fredholm.det_fredholm), and a Fourier-discretised Widom determinant of a
Riemann-Hilbert jump on a circle (fredholm.widom_fft_det).  The connection
module maps monodromy data between t and 1/t and evaluates the associated
connection constants.
"""

from .errors import (
    DomainError,
    NonconvergenceError,
    PoleError,
    QPTauError,
    ResonanceError,
)
from .qspecial import QBase, TruncationPolicy

__all__ = [
    "QBase",
    "TruncationPolicy",
    "QPTauError",
    "DomainError",
    "ResonanceError",
    "PoleError",
    "NonconvergenceError",
]

__version__ = "0.1.0"
