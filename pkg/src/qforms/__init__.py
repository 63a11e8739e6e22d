"""Divisibility of (z^n - y^n)/(z - y) by odd prime powers, built from primitive roots."""

from .factor import Factorization, factorize, is_perfect_nth_power, is_prime, largest_prime_factor
from .modular import PrimePowerModulus, Residue, crt_combine, euler_phi_prime_power, gcd, mod_inverse, mod_pow
from .primroot import (
    PrimitiveRootCert,
    find_primitive_root_mod_p_squared,
    is_primitive_root,
    lift_to_p_squared,
    multiplicative_order,
)
from .quotient import QuotientInstance, quotient, qvalue
from .witness import (
    CompositeSpec,
    ConstructionParams,
    c_values,
    classify_divisor,
    construct_z,
    crt_construct,
    divisibility_characterization,
    root_power_sum,
    xi_enumerate,
)

__version__ = "0.1.0"
