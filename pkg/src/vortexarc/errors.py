"""Exception and warning types raised by vortexarc."""


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined."""


class DivergenceError(ArithmeticError):
    """Integral diverges (logarithmic singularity of F at k = 1)."""


class SingularIntegrandError(ArithmeticError):
    """The arc integrand 1/sqrt(D) is unbounded on the integration domain."""


class CoreProximityError(ValueError):
    """Field point lies within the core cutoff distance of the filament."""


class DegenerateModulusError(ArithmeticError):
    """Complementary modulus 1 - k^2 is too small for a derivative formula."""


class QuadratureNonconvergence(RuntimeError):
    """Adaptive quadrature did not reach its tolerance within the subdivision budget."""


class ValidityWarning(UserWarning):
    """An asymptotic evaluator was used outside its calibrated region."""
