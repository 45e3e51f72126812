"""Special functions - Bessel J₀, Y₀ and Hankel H₀⁽¹⁾."""

from scatterbayes.specfun.bessel import (
    REGIME_SWITCH,
    bessel_j0,
    bessel_j1,
    bessel_y0,
    bessel_y1,
    hankel1_0,
)

__all__ = [
    "REGIME_SWITCH",
    "bessel_j0",
    "bessel_j1",
    "bessel_y0",
    "bessel_y1",
    "hankel1_0",
]
