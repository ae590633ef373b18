"""
Error Handling Utilities for linkforge
Exception hierarchy shared by the library and the CLI, plus the exact-to-approximate
backend fallback decorator.
"""

import functools
from typing import Any, Callable, Optional, TypeVar

from utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


class LinkforgeError(Exception):
    """Base class for all linkforge errors"""

    exit_code: int = 1

    def __init__(self, message: Optional[str] = None):
        self.message = message or self.__class__.__doc__ or self.__class__.__name__
        super().__init__(self.message)


# Algebra


class AlgebraError(LinkforgeError):
    """Invalid operation in the algebra K"""


class ZeroPrimal(AlgebraError):
    """Element has zero primal part and does not represent an isometry"""


class RealPrimal(AlgebraError):
    """Element has a real primal part (a translation without a finite fixed point)"""


class BackendMismatch(AlgebraError):
    """Operands belong to different numeric backends"""


# Roots


class RootError(LinkforgeError):
    """Root extraction failed"""

    exit_code = 4


class NotExactlySplit(RootError):
    """Polynomial does not split into linear factors over the Gaussian rationals"""


class NonConvergence(RootError):
    """Numerical root finding did not converge"""


# Factorization


class FactorizationError(LinkforgeError):
    """Motion polynomial cannot be factored"""

    exit_code = 3


class NotBounded(FactorizationError):
    """Motion polynomial is not monic or its primal part has real roots"""


class RealCommonFactor(FactorizationError):
    """Primal and secondary part share a non-constant real factor"""


class RealRoot(FactorizationError):
    """Real polynomial has a real root"""


class Inconsistent(FactorizationError):
    """Target polynomial is not in the span of the Q polynomials"""

    exit_code = 4


# Flips and linkages


class DegenerateFlip(LinkforgeError):
    """Flip is undefined because the primal parts are conjugate"""


class IFMViolation(LinkforgeError):
    """Auxiliary factor does not satisfy iterated flip mobility"""

    exit_code = 5


class LinkageError(LinkforgeError):
    """Malformed linkage or missing synthesis data"""


class NotLadder(LinkageError):
    """Operation requires a ladder linkage"""


# Documents


class DocumentError(LinkforgeError):
    """Malformed input or document"""

    exit_code = 2


class BoundednessUncertain(UserWarning):
    """A root of the primal part is numerically close to the real axis"""


def exact_with_fallback(
    convert: Callable[..., tuple[tuple[Any, ...], dict[str, Any]]],
    label: str = "computation",
):
    """
    Decorator that reruns a computation in the approximate backend when the exact
    backend cannot split a polynomial.

    Args:
        convert: Maps the original (*args, **kwargs) to approximate-backend arguments
        label: Name used in the log message

    Example:
        @exact_with_fallback(lambda P: ((P.to_approx(),), {}), "factorization")
        def factor(P):
            ...
    """

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            try:
                return func(*args, **kwargs)
            except NotExactlySplit as e:
                logger.warning(
                    f"{label} in {func.__name__}: {e}; retrying with approx backend"
                )
                new_args, new_kwargs = convert(*args, **kwargs)
                return func(*new_args, **new_kwargs)

        return wrapper

    return decorator
