"""
Reduced integrals I(p,q,lambda,n), I~(p,q,lambda~,n) and the pointwise Phi, Phi~

Both families are moments of the same kernel integral over s:

    I(p,q,n)  = int_lambda^1 K(p,q,lambda,s) n!/(1+s)^(n+1) ds
    Phi(p,q,r) = int_lambda^1 K(p,q,lambda,s) e^(-r(s-1)) ds

and share the partial-integration recurrence

    V(p,q,m) = [B(m) K(p,q+1,lambda,1) + V(p,q+1,m+1) - (p+1/lambda) V(p-1,q+1,m)] / (q+1-1/lambda)

with B(m) = m!/2^(m+1) for I and r^m for r^m Phi. Applying it d times leaves d+1 integrals
whose endpoint exponent Re(q+d-1/lambda) exceeds the continuation margin.

The recurrence runs on W(m) = V(m)/N(m) with N(m) = m! (radial) or r^m (pointwise), so
deep continuations near threshold never form m! or 2^m:

    W(p,q,m) = [b(m) K(p,q+1,lambda,1) + rho(m) W(p,q+1,m+1) - (p+1/lambda) W(p-1,q+1,m)] / (q+1-1/lambda)

with b(m) = 2^-(m+1), rho(m) = m+1 (radial) and b = 1, rho = r (pointwise).
"""

import cmath
import logging
import math
from contextlib import contextmanager
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from app.core.config import THRESHOLD_GUARD, NumericsSettings
from app.core.errors import DomainError, QuadratureFailure, ResonancePole
from app.core.models import (BranchedLambda, ContinuationReport, Contour,
                             IntegralKind, IntegralSpec, KernelParams)
from app.services.base_service import BaseService
from app.services.kernel_service import KernelService, kernel_service

logger = logging.getLogger(__name__)

# Error estimates this many times above the request are failures, below it warnings
_FAILURE_FACTOR = 1e3
# Imaginary offset of the detour vertex above the straight contour
_DETOUR_OFFSET = 0.1j
# Height of the vertical leg lambda -> lambda + i H
_VERTICAL_RISE = 1.0
# The vertical leg is integrated over this many e-folds of its decay, the rest analytically
_TAIL_SPAN = 36.0
_HALF_PI_I = 0.5j * math.pi


@contextmanager
def _arithmetic_as_failure(omega: float, depth: int) -> Iterator[None]:
    """Report float overflow and friends as a quadrature failure"""
    try:
        yield
    except ArithmeticError as e:
        raise QuadratureFailure(
            f"continuation to depth {depth} failed at omega={omega!r}: {e}",
            abserr=math.inf, requested=0.0,
        ) from e


# ==================================================================================
# MOMENT WEIGHTS
# ==================================================================================

class _RadialMoment:
    """Weight e^(-2r) r^m integrated over r: m!/(1+s)^(m+1), carried without the m!"""

    def norm(self, m: int) -> float:
        return float(math.factorial(m))

    def log_boundary(self, m: int) -> float:
        return -(m + 1) * math.log(2.0)

    def raise_factor(self, m: int) -> float:
        return m + 1.0

    def log_weight(self, m: int, s: complex) -> complex:
        return -(m + 1) * np.log(1.0 + s)

    def plain_scale(self, m: int, lam: complex, gap: complex) -> complex:
        return -(m + 1) * np.log(1.0 + lam)

    def plain_shape(self, m: int, t: float, lam: float, gap: float) -> float:
        return -(m + 1) * math.log1p(t * gap / (1.0 + lam))

    def tilde_scale(self, m: int, gap_tilde: float) -> float:
        return -(m + 1) * math.log(2.0)

    def tilde_shape(self, m: int, t: float, gap_tilde: float) -> float:
        return -(m + 1) * math.log1p(0.5 * t * gap_tilde)


class _PointMoment:
    """Weight e^(-r(s-1)) at a fixed radius; r^m Phi carried as Phi"""

    def __init__(self, r: float):
        if r < 0:
            raise DomainError("radius must be non-negative", r=r)
        self.r = float(r)

    def norm(self, m: int) -> float:
        return 1.0 if m == 0 else self.r ** m

    def log_boundary(self, m: int) -> float:
        return 0.0

    def raise_factor(self, m: int) -> float:
        return self.r

    def log_weight(self, m: int, s: complex) -> complex:
        return -self.r * (s - 1.0)

    def plain_scale(self, m: int, lam: complex, gap: complex) -> complex:
        return self.r * gap

    def plain_shape(self, m: int, t: float, lam: float, gap: float) -> float:
        return -self.r * gap * t

    def tilde_scale(self, m: int, gap_tilde: float) -> float:
        return 0.0

    def tilde_shape(self, m: int, t: float, gap_tilde: float) -> float:
        return -self.r * gap_tilde * t


# ==================================================================================
# SERVICE
# ==================================================================================

class ContinuationService(BaseService):
    """Evaluates the reduced integrals with recurrence-based analytic continuation"""

    def __init__(self, settings: Optional[NumericsSettings] = None, kernels: Optional[KernelService] = None):
        super().__init__(settings)
        self.kernels = kernels or (KernelService(settings) if settings else kernel_service)

    # ------------------------------------------------------------------
    # Resonances
    # ------------------------------------------------------------------

    @staticmethod
    def resonance_locator(n_max: int) -> List[float]:
        """
        Intermediate resonances omega_n = (1 - 1/n^2)/2

        Args:
            n_max: Largest principal quantum number (>= 2)

        Returns:
            Ascending frequencies for n = 2..n_max
        """
        if n_max < 2:
            raise DomainError("n_max must be at least 2", n_max=n_max)
        return [0.5 * (1.0 - 1.0 / (n * n)) for n in range(2, n_max + 1)]

    @staticmethod
    def nearest_resonance(omega: float, guard: float = THRESHOLD_GUARD) -> Tuple[int, float]:
        """
        Closest intermediate resonance

        At or above threshold the series accumulates at 1/2, so omega is clamped to 1/2 - guard
        and the resonance found there is returned.

        Args:
            omega: Photon frequency in Hartree
            guard: Distance below 1/2 used for the clamp

        Returns:
            (n, omega_n)
        """
        omega = min(omega, 0.5 - guard)
        guess = max(2, int(round(1.0 / math.sqrt(1.0 - 2.0 * omega))))
        candidates = [n for n in (guess - 1, guess, guess + 1) if n >= 2]
        n = min(candidates, key=lambda k: abs(omega - 0.5 * (1.0 - 1.0 / (k * k))))
        return n, 0.5 * (1.0 - 1.0 / (n * n))

    def continuation_depth(self, q: int, lam: BranchedLambda) -> int:
        """Smallest d >= 0 with Re(q + d - 1/lambda) > margin"""
        excess = lam.inv_lam.real - q + self.settings.continuation_margin
        return 0 if excess < 0 else int(math.floor(excess)) + 1

    def _check_denominator(self, denominator: complex, omega: float) -> float:
        size = abs(denominator)
        if size < self.settings.pole_guard:
            n, omega_n = self.nearest_resonance(omega, self.settings.threshold_guard)
            raise ResonancePole(omega, n, omega_n, size)
        return size

    def resolve_contour(self, lam: BranchedLambda, contour: Optional[Contour] = None) -> Contour:
        """Explicit choice, else vertical just above threshold and straight everywhere else"""
        if contour is not None:
            return contour
        if lam.is_above and abs(lam.lam) < self.settings.vertical_kappa:
            return Contour.VERTICAL
        return Contour.STRAIGHT

    # ------------------------------------------------------------------
    # Public integrals
    # ------------------------------------------------------------------

    def integral_i(
        self,
        spec: IntegralSpec,
        lam: BranchedLambda,
        contour: Optional[Contour] = None,
        depth: Optional[int] = None,
    ) -> Tuple[complex, ContinuationReport]:
        """
        Reduced integral I(p,q,lambda,n) or I~(p,q,lambda~,n)

        Args:
            spec: (p, q, n) and the sector
            lam: Branch-resolved lambda pair
            contour: Path from lambda to 1; None picks one from lambda
            depth: Force a recurrence depth instead of the automatic one

        Returns:
            (value, ContinuationReport)
        """
        moment = _RadialMoment()
        if spec.kind == IntegralKind.TILDE:
            value = self._tilde_leaf(spec.p, spec.q, spec.n, lam, moment) * moment.norm(spec.n)
            return value, ContinuationReport()
        return self._expand(spec.p, spec.q, spec.n, lam, moment, contour, depth)

    def phi(
        self,
        params: KernelParams,
        lam: BranchedLambda,
        r: float,
        contour: Optional[Contour] = None,
    ) -> Tuple[complex, ContinuationReport]:
        """
        Phi(p,q,lambda,r) = int_lambda^1 K(p,q,lambda,s) e^(-r(s-1)) ds, continued

        Args:
            params: Integer exponents p, q
            lam: Branch-resolved lambda pair
            r: Radius (bohr)
            contour: Path from lambda to 1; None picks one from lambda

        Returns:
            (value, ContinuationReport)
        """
        return self._expand(params.p, params.q, 0, lam, _PointMoment(r), contour, None)

    def phi_tilde(self, params: KernelParams, lam: BranchedLambda, r: float) -> complex:
        """
        Phi~(p,q,lambda~,r) = int_1^lambda~ K~(p,q,lambda~,s) e^(-r(s-1)) ds

        Args:
            params: Integer exponents p, q
            lam: Branch-resolved lambda pair
            r: Radius (bohr)

        Returns:
            Real value (as complex)
        """
        return self._tilde_leaf(params.p, params.q, 0, lam, _PointMoment(r))

    def recurrence_step(
        self,
        spec: IntegralSpec,
        lam: BranchedLambda,
        value_sink: Callable[[IntegralSpec], complex],
    ) -> complex:
        """
        One application of the recurrence to a plain integral

        I(p,q,n) = [n!/2^(n+1) K(p,q+1,lambda,1) + I(p,q+1,n+1) - (p+1/lambda) I(p-1,q+1,n)] / (q+1-1/lambda)

        Args:
            spec: Plain integral to rewrite
            lam: Branch-resolved lambda pair
            value_sink: Supplies the two child integrals

        Returns:
            I(p,q,lambda,n) assembled from the children
        """
        if spec.kind != IntegralKind.PLAIN:
            raise DomainError("the recurrence applies to the plain sector only")
        inv = lam.inv_lam
        denominator = spec.q + 1 - inv
        self._check_denominator(denominator, lam.omega)

        moment = _RadialMoment()
        boundary = moment.norm(spec.n) * math.exp(moment.log_boundary(spec.n))
        k_one = self.kernels.kernel_at_one(spec.p, spec.q + 1, lam.lam, lam.gap)
        raised = value_sink(IntegralSpec(p=spec.p, q=spec.q + 1, n=spec.n + 1, kind=IntegralKind.PLAIN))
        lowered = value_sink(IntegralSpec(p=spec.p - 1, q=spec.q + 1, n=spec.n, kind=IntegralKind.PLAIN))
        return (boundary * k_one + raised - (spec.p + inv) * lowered) / denominator

    # ------------------------------------------------------------------
    # Plain sector
    # ------------------------------------------------------------------

    def _expand(
        self,
        p0: int,
        q0: int,
        m0: int,
        lam: BranchedLambda,
        moment,
        contour: Optional[Contour],
        depth: Optional[int],
    ) -> Tuple[complex, ContinuationReport]:
        inv = lam.inv_lam
        d = self.continuation_depth(q0, lam) if depth is None else depth
        if d < 0 or (q0 + d - inv).real <= -1.0:
            raise DomainError(
                f"depth {d} leaves a divergent endpoint (Re(q-1/lambda) <= -1)",
                q=q0, depth=d,
            )

        sizes = [self._check_denominator(q0 + k + 1 - inv, lam.omega) for k in range(d)]
        min_den = min(sizes) if sizes else math.inf
        report = ContinuationReport(
            depth=d,
            min_denominator=min_den,
            near_resonance=min_den < self.settings.resonance_warn_band,
        )
        if report.near_resonance:
            logger.info("omega=%.12g near resonance: min |q+1-1/lambda|=%.3e", lam.omega, min_den)

        contour = self.resolve_contour(lam, contour)
        with _arithmetic_as_failure(lam.omega, d):
            scaled = self._continued(p0, q0, m0, lam, moment, contour, d)
            if depth is None and d >= self.settings.depth_check:
                self._check_deeper(scaled, p0, q0, m0, lam, moment, contour, d)
            value = complex(scaled * moment.norm(m0))

        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise QuadratureFailure(
                f"continuation to depth {d} overflowed at omega={lam.omega!r}",
                abserr=math.inf, requested=self.settings.epsabs,
            )
        logger.debug("plain integral (p=%d,q=%d,m=%d) omega=%.12g depth=%d", p0, q0, m0, lam.omega, d)
        return value, report

    def _continued(
        self, p0: int, q0: int, m0: int, lam: BranchedLambda, moment, contour: Contour, d: int
    ) -> complex:
        """W(p0,q0,m0) from d+1 leaves; level k holds nodes (p0 - j, q0 + k, m0 + k - j)"""
        inv = lam.inv_lam
        log_one_plus = np.log(1.0 + lam.lam)
        log_gap = np.log(lam.gap)

        level = [self._plain_leaf(p0 - j, q0 + d, m0 + d - j, lam, moment, contour) for j in range(d + 1)]
        for k in range(d - 1, -1, -1):
            denominator = q0 + k + 1 - inv
            level = [
                (np.exp(moment.log_boundary(m0 + k - j) + (p0 - j) * log_one_plus + (q0 + k + 1) * log_gap)
                 + moment.raise_factor(m0 + k - j) * level[j]
                 - (p0 - j + inv) * level[j + 1]) / denominator
                for j in range(k + 1)
            ]
        return complex(level[0])

    def _check_deeper(
        self, value: complex, p0: int, q0: int, m0: int, lam: BranchedLambda, moment, contour: Contour, d: int
    ) -> None:
        """Deep continuations lose digits to cancellation; one more level must not move the result"""
        deeper = self._continued(p0, q0, m0, lam, moment, contour, d + 1)
        spread = abs(deeper - value)
        allowed = self.settings.depth_check_rtol * max(abs(value), abs(deeper))
        if not spread <= allowed:
            raise QuadratureFailure(
                f"continuation to depth {d} is unstable at omega={lam.omega!r}: "
                f"depth {d + 1} moves it by {spread:.3e}",
                abserr=spread, requested=allowed,
            )
        logger.debug("omega=%.12g depth %d cross-checked (spread %.3e)", lam.omega, d, spread)

    def _plain_leaf(self, p: int, q: int, m: int, lam: BranchedLambda, moment, contour: Contour) -> complex:
        """One convergent integral over s in [lambda, 1], normalized by its natural scale"""
        gap = lam.gap
        log_scale = (q + 1) * np.log(gap) + p * np.log(1.0 + lam.lam) + moment.plain_scale(m, lam.lam, gap)
        scale = complex(np.exp(log_scale))

        if not lam.is_above:
            if contour == Contour.DETOUR:
                return scale * self._plain_leaf_contour(p, q, m, lam, moment, contour, log_scale)
            return scale * self._plain_leaf_real(p, q, m, lam, moment)
        if contour == Contour.VERTICAL:
            return scale * self._plain_leaf_vertical(p, q, m, lam, moment, log_scale)
        return scale * self._plain_leaf_contour(p, q, m, lam, moment, contour, log_scale)

    def _plain_leaf_real(self, p: int, q: int, m: int, lam: BranchedLambda, moment) -> float:
        # s = lambda + t (1 - lambda); the t^b endpoint factor goes into the QAWS weight
        lam_r = lam.lam.real
        gap = lam.gap.real
        inv = 1.0 / lam_r
        a, b = p + inv, q - inv
        ratio = gap / (1.0 + lam_r)

        def shape(t: float) -> float:
            return math.exp(a * math.log1p(-(1.0 - t) * ratio) + moment.plain_shape(m, t, lam_r, gap))

        return self._integrate(shape, weight="alg", wvar=(b, 0.0), omega=lam.omega)

    def _plain_leaf_contour(
        self, p: int, q: int, m: int, lam: BranchedLambda, moment, contour: Contour, log_scale: complex
    ) -> complex:
        lam_c = lam.lam
        if contour == Contour.DETOUR:
            vertices = [lam_c, 0.5 * (1.0 + lam_c) + _DETOUR_OFFSET, 1.0 + 0j]
        else:
            vertices = [lam_c, 1.0 + 0j]

        return sum(
            (self._segment(z0, z1, k == 0, p, q, m, lam, moment, log_scale)
             for k, (z0, z1) in enumerate(zip(vertices[:-1], vertices[1:]))),
            0j,
        )

    def _segment(
        self, z0: complex, z1: complex, first: bool, p: int, q: int, m: int,
        lam: BranchedLambda, moment, log_scale: complex,
    ) -> complex:
        """Straight piece z0 -> z1 of the path; the first piece starts at s = lambda"""
        lam_c = lam.lam
        inv = lam.inv_lam
        a, b = p + inv, q - inv
        log_c = self.kernels.log_prefactor(lam_c)
        step = z1 - z0
        log_step = np.log(step)
        # Log-oscillations t^(i Im b) need more subintervals as Im b grows
        limit = max(self.settings.limit, int(50 * abs(b.imag)))

        def integrand(t: float) -> complex:
            if first and t <= 0.0:
                return 0j
            s = z0 + t * step
            # on the first segment s - lambda = t * step exactly
            log_minus = math.log(t) + log_step if first else np.log(s - lam_c)
            log_f = log_c + a * np.log(s + lam_c) + b * log_minus + moment.log_weight(m, s) - log_scale
            return complex(np.exp(log_f)) * step

        re = self._integrate(lambda t: integrand(t).real, omega=lam.omega, limit=limit)
        im = self._integrate(lambda t: integrand(t).imag, omega=lam.omega, limit=limit)
        return complex(re, im)

    def _plain_leaf_vertical(
        self, p: int, q: int, m: int, lam: BranchedLambda, moment, log_scale: complex
    ) -> complex:
        """
        Path lambda -> lambda + iH -> 1 above threshold

        On the rising leg s = lambda + iy, and v = log(y/(y + 2 kappa)) turns the factor
        ((s-lambda)/(s+lambda))^(-1/lambda) into the pure oscillation e^(i v/kappa). QAWO integrates
        that with a Fourier weight; below v_low the envelope is replaced by its exponential asymptote.
        The second leg is an ordinary straight segment.
        """
        lam_c = lam.lam
        inv = lam.inv_lam
        two_kappa = 2.0 * lam_c.imag
        log_two_kappa = math.log(two_kappa)
        log_c = self.kernels.log_prefactor(lam_c)
        nu = -inv.imag
        rate = q + 1 - inv.real

        v_top = math.log(_VERTICAL_RISE / (_VERTICAL_RISE + two_kappa))
        v_low = v_top - _TAIL_SPAN / rate

        def envelope(v: float) -> complex:
            log_y = log_two_kappa - math.log(math.expm1(-v))
            log_y_up = log_y - v
            s = lam_c + 1j * math.exp(log_y)
            # ds/dv = i y (y + 2 kappa) / (2 kappa)
            log_g = (log_c + p * (log_y_up + _HALF_PI_I) + q * (log_y + _HALF_PI_I) - inv.real * v
                     + moment.log_weight(m, s) - log_scale
                     + _HALF_PI_I + log_y + log_y_up - log_two_kappa)
            return complex(np.exp(log_g))

        fourier = dict(omega=lam.omega, lower=v_low, upper=v_top, wvar=nu)
        re_cos = self._integrate(lambda v: envelope(v).real, weight="cos", **fourier)
        re_sin = self._integrate(lambda v: envelope(v).real, weight="sin", **fourier)
        im_cos = self._integrate(lambda v: envelope(v).imag, weight="cos", **fourier)
        im_sin = self._integrate(lambda v: envelope(v).imag, weight="sin", **fourier)
        rising = complex(re_cos - im_sin, re_sin + im_cos)
        rising += envelope(v_low) * cmath.exp(1j * nu * v_low) / (rate + 1j * nu)

        top = lam_c + 1j * _VERTICAL_RISE
        return rising + self._segment(top, 1.0 + 0j, False, p, q, m, lam, moment, log_scale)

    # ------------------------------------------------------------------
    # Tilde sector
    # ------------------------------------------------------------------

    def _tilde_leaf(self, p: int, q: int, m: int, lam: BranchedLambda, moment) -> complex:
        """Integral over s in [1, lambda~] without the moment norm; (1-t)^beta goes into the QAWS weight"""
        lt = lam.lam_tilde
        gt = lam.gap_tilde
        inv = 1.0 / lt
        a, beta = p + inv, q - inv
        if beta <= -1.0:
            raise DomainError(
                f"I~ diverges at s = lambda~ for q={q} (q - 1/lambda~ <= -1)", q=q, lam_tilde=lt
            )
        log_scale = (q + 1) * math.log(gt) + p * math.log(lt + 1.0) + moment.tilde_scale(m, gt)
        ratio = gt / (lt + 1.0)

        def shape(t: float) -> float:
            return math.exp(a * math.log1p(t * ratio) + moment.tilde_shape(m, t, gt))

        value = self._integrate(shape, weight="alg", wvar=(0.0, beta), omega=lam.omega)
        return complex(math.exp(log_scale) * value, 0.0)

    # ------------------------------------------------------------------
    # Quadrature
    # ------------------------------------------------------------------

    def _integrate(
        self,
        func: Callable[[float], float],
        omega: float,
        lower: float = 0.0,
        upper: float = 1.0,
        weight: Optional[str] = None,
        wvar=None,
        limit: Optional[int] = None,
    ) -> float:
        epsabs, epsrel = self.tolerances_for(omega)
        kwargs = dict(epsabs=epsabs, epsrel=epsrel, limit=limit or self.settings.limit, full_output=1)
        if weight is not None:
            kwargs.update(weight=weight, wvar=wvar)
        result = quad(func, lower, upper, **kwargs)
        value, abserr = result[0], result[1]

        if len(result) == 4:
            requested = max(epsabs, epsrel * abs(value))
            if not math.isfinite(value) or abserr > _FAILURE_FACTOR * requested:
                raise QuadratureFailure(
                    f"quadrature at omega={omega!r} stopped at error {abserr:.3e}: {result[3]}",
                    abserr=abserr, requested=requested,
                )
            logger.debug("quadrature warning at omega=%.12g (err %.3e): %s", omega, abserr, result[3])
        return value


continuation_service = ContinuationService()
