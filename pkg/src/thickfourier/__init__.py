"""Fourier transforms of thick distributions at the origin and sl-thick distributions at infinity."""

from .distributions import (
    Atom,
    SlThickDistribution,
    ThickDistribution,
    ThickJet,
    WFunctionJet,
    delta_inf,
    delta_ln_inf,
    pair,
    pf_power,
    pfw_power,
    thick_delta,
)
from .errors import ThickFourierError
from .fourier import ft_jet, ft_star, ft_upper_star, g_value, ift_jet, project_classical
from .kernelops import frak_apply, kappa_coeff, lambda_coeff
from .scalars import ExactScalar, FloatApprox
from .sphere import AngularFunction, Poly

__version__ = "0.1.0"
