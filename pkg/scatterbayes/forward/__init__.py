"""Forward problem - Lippmann-Schwinger solvers on a uniform grid."""

from scatterbayes.forward.direct import DirectSolution, ReducedSystem, solve_direct, solve_direct_system
from scatterbayes.forward.fields import ComplexField, Grid2D, ScattererField, relative_l2, write_field_csv
from scatterbayes.forward.incident import incident_plane_wave, plane_wave_at
from scatterbayes.forward.quadrature import (
    EULER_GAMMA,
    LATTICE_C1,
    CalibrationReport,
    QuadratureWeights,
    beta1,
    calibrate_c1,
    calibration_study,
    green_phi,
    load_c1,
    quadrature_weights,
)
from scatterbayes.forward.reference import ConvolutionOperator, solve_reference

__all__ = [
    "EULER_GAMMA",
    "LATTICE_C1",
    "CalibrationReport",
    "ComplexField",
    "ConvolutionOperator",
    "DirectSolution",
    "Grid2D",
    "QuadratureWeights",
    "ReducedSystem",
    "ScattererField",
    "beta1",
    "calibrate_c1",
    "calibration_study",
    "green_phi",
    "incident_plane_wave",
    "load_c1",
    "plane_wave_at",
    "quadrature_weights",
    "relative_l2",
    "solve_direct",
    "solve_direct_system",
    "solve_reference",
    "write_field_csv",
]
