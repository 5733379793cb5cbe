"""Fractional power series on the unit disk, coefficient operators and
numerical checks of univalence-class bounds."""

from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    KernelDirectionError,
    UsageError,
)
from .fracseries import (
    DiskGrid,
    FracPowerSeries,
    TailModel,
    evaluate,
    evaluate_d1,
    evaluate_d2,
    hadamard,
    in_class_A_mu,
    in_class_X_mu,
    koebe_frac,
    pochhammer,
    series,
)
from .operators import noor_frac, psi_weight, ruscheweyh_frac, z_noor_derivative
from .specialfn import FoxWrightParams, fox_wright_2psi1, gamma_real, theorem2_bound, theorem3_bound
from .diskcheck import (
    CheckReport,
    duren_bound_check,
    goodman_bound_check,
    is_convex,
    is_starlike,
    is_ucv,
    ucv_two_point,
    verify_theorem2,
    verify_theorem3,
)
from .banachmodel import BanachModel, pre_schwarzian_norm, slice_series

__all__ = [name for name in dir() if not name.startswith("_")]
