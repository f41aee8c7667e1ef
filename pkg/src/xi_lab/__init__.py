"""High-precision experiments with F(s) = pi^{-s/2} Gamma(s/2) zeta(s) off the critical line."""
from .numerics import ComplexValue, DomainError, PoleError, PrecisionContext
from .completed import LinePoint, F_integral, F_line, F_product, im_equation_sides
from .theta import ThetaArg, theta_w, theta_w_deriv
from .hardy import IdentitySpec, verify_identity, moment_rhs_sign
from .zeros import ScanPolicy, ZeroRecord, count_zeros, find_zeros, refine, scan

__version__ = "0.1.0"
