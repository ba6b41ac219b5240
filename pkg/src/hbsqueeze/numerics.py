"""Scalar root finding, adaptive quadrature and finite differences.

Root finding wraps :func:`scipy.optimize.brentq` (Brent's method, which falls
back to bisection whenever interpolation steps stall) and quadrature wraps
:func:`scipy.integrate.quad` (QUADPACK QAGS, adaptive Gauss-Kronrod with
extrapolation, which copes with integrable endpoint singularities).

Default tolerances can be overridden for a block of code with
:func:`tolerances`; the setting lives in a :mod:`contextvars` variable, so
threads and async tasks each see their own value.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Sequence

from scipy import integrate as _integrate
from scipy import optimize as _optimize

from .errors import BracketError, ConvergenceError, ParameterError, QuadratureError

__all__ = [
    "Tolerance",
    "ROOT_TOL",
    "QUAD_TOL",
    "tolerances",
    "current_root_tol",
    "current_quad_tol",
    "find_root",
    "integrate",
    "derivative",
]


@dataclass(frozen=True)
class Tolerance:
    """Stopping criteria for an iterative method.

    Attributes
    ----------
    abs_tol : float
        Absolute tolerance, strictly positive.
    rel_tol : float
        Relative tolerance, non-negative.
    max_iter : int
        Iteration cap (root finding) or subdivision cap (quadrature).
    """

    abs_tol: float
    rel_tol: float = 0.0
    max_iter: int = 200

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ParameterError(f"abs_tol must be > 0, got {self.abs_tol!r}")
        if not self.rel_tol >= 0:
            raise ParameterError(f"rel_tol must be >= 0, got {self.rel_tol!r}")
        if int(self.max_iter) < 1:
            raise ParameterError(f"max_iter must be >= 1, got {self.max_iter!r}")

    def as_dict(self) -> dict:
        return {"abs_tol": self.abs_tol, "rel_tol": self.rel_tol, "max_iter": self.max_iter}


# brentq rejects rtol below 4 machine epsilons
_RTOL_FLOOR = 4.0 * 2.220446049250313e-16

ROOT_TOL = Tolerance(abs_tol=1e-12, rel_tol=_RTOL_FLOOR, max_iter=200)
QUAD_TOL = Tolerance(abs_tol=1e-13, rel_tol=1e-10, max_iter=200)

_root_tol: contextvars.ContextVar[Tolerance] = contextvars.ContextVar("root_tol", default=ROOT_TOL)
_quad_tol: contextvars.ContextVar[Tolerance] = contextvars.ContextVar("quad_tol", default=QUAD_TOL)


def current_root_tol() -> Tolerance:
    return _root_tol.get()


def current_quad_tol() -> Tolerance:
    return _quad_tol.get()


@contextlib.contextmanager
def tolerances(root: Tolerance | None = None, quad: Tolerance | None = None) -> Iterator[None]:
    """Temporarily replace the default root and/or quadrature tolerances."""
    tokens = []
    if root is not None:
        tokens.append((_root_tol, _root_tol.set(root)))
    if quad is not None:
        tokens.append((_quad_tol, _quad_tol.set(quad)))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance | None = None,
) -> float:
    """Locate a zero of ``f`` inside the sign-change bracket ``[lo, hi]``.

    Parameters
    ----------
    f : callable
        Continuous scalar function.
    lo, hi : float
        Bracket end points with ``f(lo) * f(hi) <= 0``.
    tol : Tolerance, optional
        Defaults to the active root tolerance (``abs_tol`` 1e-12).

    Returns
    -------
    float
        A root inside ``[lo, hi]``.

    Raises
    ------
    BracketError
        No sign change over the bracket.
    ConvergenceError
        ``max_iter`` exhausted; the exception carries the best iterate.
    """
    tol = tol or _root_tol.get()
    if lo > hi:
        lo, hi = hi, lo
    flo = f(lo)
    if flo == 0.0:
        return float(lo)
    fhi = f(hi)
    if fhi == 0.0:
        return float(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise BracketError(f"non-finite end values f({lo!r})={flo!r}, f({hi!r})={fhi!r}")
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}")
    x, info = _optimize.brentq(
        f,
        lo,
        hi,
        xtol=tol.abs_tol,
        rtol=max(tol.rel_tol, _RTOL_FLOOR),
        maxiter=int(tol.max_iter),
        full_output=True,
        disp=False,
    )
    if not info.converged:
        raise ConvergenceError(
            f"root not converged after {info.iterations} iterations on [{lo!r}, {hi!r}]", best=x
        )
    return float(min(max(x, lo), hi))


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance | None = None,
    points: Sequence[float] | None = None,
) -> float:
    """Adaptive quadrature of ``f`` over ``[a, b]``.

    Integrable endpoint singularities such as ``(x - a)**-alpha`` with
    ``alpha < 1`` are resolved by refinement toward the end point. Interior
    kinks (for instance a yield surface) should be passed in ``points``.

    Raises
    ------
    QuadratureError
        The subdivision cap was hit before the tolerance was met. The partial
        estimate and its error bound are attached.
    """
    tol = tol or _quad_tol.get()
    if a == b:
        return 0.0
    kwargs = {}
    if points:
        lo, hi = min(a, b), max(a, b)
        inner = sorted({float(x) for x in points if lo < x < hi})
        if inner:
            kwargs["points"] = inner
    with warnings.catch_warnings():
        warnings.simplefilter("error", _integrate.IntegrationWarning)
        try:
            value, abserr = _integrate.quad(
                f, a, b, epsabs=tol.abs_tol, epsrel=tol.rel_tol, limit=int(tol.max_iter), **kwargs
            )
        except _integrate.IntegrationWarning as exc:
            # rerun silently to recover the partial estimate
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", _integrate.IntegrationWarning)
                value, abserr = _integrate.quad(
                    f, a, b, epsabs=tol.abs_tol, epsrel=tol.rel_tol, limit=int(tol.max_iter), **kwargs
                )
            raise QuadratureError(
                f"quadrature on [{a!r}, {b!r}] did not converge: {exc}", partial=value, abserr=abserr
            ) from None
    return float(value)


def derivative(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    """Central difference ``(f(x+h) - f(x-h)) / (2h)``.

    The default step is ``max(1e-6, 1e-6*|x|)``.
    """
    if h is None:
        h = max(1e-6, 1e-6 * abs(x))
    if not h > 0:
        raise ParameterError(f"step h must be > 0, got {h!r}")
    return (f(x + h) - f(x - h)) / (2.0 * h)


def with_overrides(tol: Tolerance, **changes) -> Tolerance:
    """Copy of ``tol`` with selected fields replaced (None values ignored)."""
    changes = {k: v for k, v in changes.items() if v is not None}
    return replace(tol, **changes)
