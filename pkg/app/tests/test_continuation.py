"""
Tests for the reduced integrals and their analytic continuation
"""

import math

import mpmath
import pytest

from app.core.config import NumericsSettings
from app.core.errors import DomainError, QuadratureFailure, ResonancePole, ResponseError
from app.core.models import Contour, ContinuationReport, IntegralKind, IntegralSpec, KernelParams
from app.services.continuation_service import ContinuationService


def mp_plain(p, q, omega, n):
    """n! int_lambda^1 K(p,q,lambda,s) / (1+s)^(n+1) ds for 0 < omega < 1/2"""
    lam = mpmath.sqrt(1 - 2 * mpmath.mpf(omega))
    pre = ((1 - lam) / (1 + lam)) ** (1 / lam)
    f = lambda s: pre * (s + lam) ** (p + 1 / lam) * (s - lam) ** (q - 1 / lam) / (1 + s) ** (n + 1)
    return mpmath.factorial(n) * mpmath.quad(f, [lam, 1])


def mp_tilde(p, q, omega, n):
    """n! int_1^lambda~ K~(p,q,lambda~,s) / (1+s)^(n+1) ds"""
    lt = mpmath.sqrt(1 + 2 * mpmath.mpf(omega))
    pre = ((lt - 1) / (lt + 1)) ** (1 / lt)
    f = lambda s: pre * (lt + s) ** (p + 1 / lt) * (lt - s) ** (q - 1 / lt) / (1 + s) ** (n + 1)
    return mpmath.factorial(n) * mpmath.quad(f, [1, lt])


def mp_phi(p, q, omega, r):
    """int_lambda^1 K(p,q,lambda,s) e^(-r(s-1)) ds"""
    lam = mpmath.sqrt(1 - 2 * mpmath.mpf(omega))
    pre = ((1 - lam) / (1 + lam)) ** (1 / lam)
    f = lambda s: pre * (s + lam) ** (p + 1 / lam) * (s - lam) ** (q - 1 / lam) * mpmath.exp(-r * (s - 1))
    return mpmath.quad(f, [lam, 1])


def mp_plain_above(p, q, omega, n, rise=1):
    """n! int K(p,q,lambda,s) / (1+s)^(n+1) ds on lambda -> lambda + i rise -> 1, lambda = i sqrt(2 omega - 1)"""
    lam = mpmath.mpc(0, mpmath.sqrt(2 * mpmath.mpf(omega) - 1))
    pre = ((1 - lam) / (1 + lam)) ** (1 / lam)
    f = lambda s: pre * (s + lam) ** (p + 1 / lam) * (s - lam) ** (q - 1 / lam) / (1 + s) ** (n + 1)
    # s = lambda + i e^u; one piece per oscillation of (s - lambda)^(-1/lambda)
    top = mpmath.log(rise)
    rising = mpmath.quad(lambda u: f(lam + 1j * mpmath.exp(u)) * 1j * mpmath.exp(u),
                         mpmath.linspace(top - 20, top, 400))
    return mpmath.factorial(n) * (rising + mpmath.quad(f, [lam + 1j * rise, 1]))


class TestResonances:

    def test_locator(self, continuation):
        """omega_n = (1 - 1/n^2)/2 for n = 2..n_max"""
        assert continuation.resonance_locator(4) == pytest.approx([0.375, 4.0 / 9.0, 15.0 / 32.0])

    def test_locator_needs_two_levels(self, continuation):
        """n_max below 2 is rejected"""
        with pytest.raises(DomainError):
            continuation.resonance_locator(1)

    @pytest.mark.parametrize("omega,n", [(0.3, 2), (0.37, 2), (0.44, 3), (0.46, 4), (0.469, 4), (0.4999, 71)])
    def test_nearest(self, continuation, omega, n):
        """Nearest resonance by frequency"""
        found, omega_n = continuation.nearest_resonance(omega)
        assert found == n
        assert omega_n == pytest.approx(0.5 * (1.0 - 1.0 / n ** 2))

    @pytest.mark.parametrize("omega", [0.5, 0.6, 3.0])
    def test_nearest_at_and_above_threshold(self, continuation, omega):
        """At or above threshold the resonance just below 1/2 is named"""
        n, omega_n = continuation.nearest_resonance(omega)
        assert n >= 700
        assert 0.0 < 0.5 - omega_n < 2e-6

    def test_exact_pole_raises(self, continuation, kernels):
        """omega = 3/8 makes a recurrence denominator vanish"""
        lam = kernels.lambda_pair(0.375)
        with pytest.raises(ResonancePole) as excinfo:
            continuation.integral_i(IntegralSpec(p=1, q=1, n=3), lam)
        assert excinfo.value.context["nearest_n"] == 2
        assert "n=2" in excinfo.value.message


class TestContinuationDepth:

    @pytest.mark.parametrize("omega,depth", [(0.05, 1), (0.2, 1), (0.3, 1), (0.4, 2), (0.46, 3), (0.6, 0), (5.0, 0)])
    def test_depth(self, continuation, kernels, omega, depth):
        """Smallest depth with Re(q + d - 1/lambda) > 0 for q = 1"""
        assert continuation.continuation_depth(1, kernels.lambda_pair(omega)) == depth

    def test_report_flags_near_resonance(self, continuation, kernels):
        """A denominator inside the warn band sets near_resonance"""
        _, report = continuation.integral_i(IntegralSpec(p=1, q=1, n=3), kernels.lambda_pair(0.375 + 1e-6))
        assert report.near_resonance
        assert report.min_denominator < 1e-4

    def test_report_merge(self):
        """Merged reports keep the worst case"""
        a = ContinuationReport(depth=1, min_denominator=0.3)
        b = ContinuationReport(depth=3, min_denominator=1e-5, near_resonance=True)
        merged = a.merge(b)
        assert merged.depth == 3
        assert merged.min_denominator == 1e-5
        assert merged.near_resonance


class TestPlainIntegral:

    @pytest.mark.parametrize("omega,n", [(0.1, 3), (0.1, 4), (0.2, 4), (0.3, 3)])
    def test_matches_direct_integral(self, continuation, kernels, omega, n):
        """Continued integral equals the convergent direct integral"""
        value, _ = continuation.integral_i(IntegralSpec(p=1, q=1, n=n), kernels.lambda_pair(omega))
        assert value == pytest.approx(complex(mp_plain(1, 1, omega, n)), rel=1e-10)

    @pytest.mark.parametrize("depth", [0, 1, 2, 4])
    def test_depth_independent(self, continuation, kernels, depth):
        """Extra recurrence steps leave a convergent integral unchanged"""
        lam = kernels.lambda_pair(0.1)
        reference, _ = continuation.integral_i(IntegralSpec(p=1, q=1, n=4), lam)
        value, report = continuation.integral_i(IntegralSpec(p=1, q=1, n=4), lam, depth=depth)
        assert report.depth == depth
        assert value == pytest.approx(reference, rel=1e-10)

    def test_recurrence_step(self, continuation, kernels):
        """One recurrence application reproduces its parent"""
        lam = kernels.lambda_pair(0.1)
        parent, _ = continuation.integral_i(IntegralSpec(p=1, q=1, n=3), lam, depth=0)

        def children(spec):
            return continuation.integral_i(spec, lam, depth=0)[0]

        assert continuation.recurrence_step(IntegralSpec(p=1, q=1, n=3), lam, children) == pytest.approx(parent, rel=1e-10)

    def test_recurrence_past_first_resonance(self, continuation, kernels):
        """At omega = 0.4 one step over directly integrated children gives the continued value"""
        lam = kernels.lambda_pair(0.4)
        spec = IntegralSpec(p=1, q=1, n=3)
        continued, report = continuation.integral_i(spec, lam)
        assert report.depth == 2

        def children(child):
            value, _ = continuation.integral_i(child, lam, depth=0)
            assert value == pytest.approx(complex(mp_plain(child.p, child.q, 0.4, child.n)), rel=1e-9)
            return value

        assert continuation.recurrence_step(spec, lam, children) == pytest.approx(continued, rel=1e-9)

    def test_depth_past_factorial_overflow(self, continuation, kernels):
        """Moments beyond 170! stay finite and leave the value unchanged"""
        lam = kernels.lambda_pair(0.1)
        reference, _ = continuation.integral_i(IntegralSpec(p=1, q=1, n=3), lam)
        value, report = continuation.integral_i(IntegralSpec(p=1, q=1, n=3), lam, depth=175)
        assert report.depth == 175
        assert value == pytest.approx(reference, rel=1e-8)

    def test_recurrence_plain_only(self, continuation, kernels):
        """The recurrence is not defined for the tilde sector"""
        with pytest.raises(DomainError):
            continuation.recurrence_step(
                IntegralSpec(p=1, q=1, n=3, kind=IntegralKind.TILDE), kernels.lambda_pair(0.1), lambda s: 0j
            )

    def test_divergent_depth_rejected(self, continuation, kernels):
        """Forcing too shallow a depth past the first resonance raises DomainError"""
        with pytest.raises(DomainError):
            continuation.integral_i(IntegralSpec(p=1, q=1, n=3), kernels.lambda_pair(0.45), depth=0)

    def test_below_threshold_is_real(self, continuation, kernels):
        """Plain integrals are real below threshold"""
        value, _ = continuation.integral_i(IntegralSpec(p=1, q=1, n=4), kernels.lambda_pair(0.43))
        assert abs(value.imag) <= 1e-12 * abs(value)

    @pytest.mark.parametrize("omega", [0.6, 2.0, 10.0])
    def test_detour_contour(self, continuation, kernels, omega):
        """The detoured contour gives the same value above threshold"""
        lam = kernels.lambda_pair(omega)
        spec = IntegralSpec(p=1, q=1, n=3)
        straight, _ = continuation.integral_i(spec, lam, contour=Contour.STRAIGHT)
        detour, _ = continuation.integral_i(spec, lam, contour=Contour.DETOUR)
        assert abs(detour - straight) <= 1e-10 * abs(straight)


class TestDeepContinuation:

    @pytest.mark.parametrize("omega", [0.49999, 0.499998])
    def test_near_threshold_finite_or_reported(self, continuation, kernels, omega):
        """Hundreds of recurrence levels give a finite value or a ResponseError, never an overflow"""
        lam = kernels.lambda_pair(omega)
        try:
            value, report = continuation.integral_i(IntegralSpec(p=1, q=1, n=3), lam)
        except ResponseError:
            return
        assert report.depth > 170
        assert math.isfinite(value.real) and math.isfinite(value.imag)

    def test_arithmetic_error_becomes_quadrature_failure(self, settings, kernels, monkeypatch):
        """Float overflow inside the recurrence is reported as QuadratureFailure"""
        service = ContinuationService(settings)

        def overflow(*args, **kwargs):
            raise OverflowError("math range error")

        monkeypatch.setattr(service, "_plain_leaf", overflow)
        with pytest.raises(QuadratureFailure) as excinfo:
            service.integral_i(IntegralSpec(p=1, q=1, n=3), kernels.lambda_pair(0.3))
        assert "depth 1" in excinfo.value.message

    def test_cross_check_passes_when_stable(self, kernels):
        """A cross-checked continuation returns the ordinary value"""
        checked = ContinuationService(NumericsSettings(depth_check=1))
        plain = ContinuationService(NumericsSettings())
        lam = kernels.lambda_pair(0.46)
        spec = IntegralSpec(p=1, q=1, n=4)
        assert checked.integral_i(spec, lam)[0] == pytest.approx(plain.integral_i(spec, lam)[0], rel=1e-12)

    def test_cross_check_rejects_unstable_depth(self, kernels, monkeypatch):
        """Disagreement one level deeper raises QuadratureFailure"""
        service = ContinuationService(NumericsSettings(depth_check=1))
        monkeypatch.setattr(service, "_continued", lambda *args: complex(args[-1]))
        with pytest.raises(QuadratureFailure) as excinfo:
            service.integral_i(IntegralSpec(p=1, q=1, n=3), kernels.lambda_pair(0.46))
        assert "unstable" in excinfo.value.message

    def test_forced_depth_skips_cross_check(self, kernels, monkeypatch):
        """An explicit depth is evaluated once"""
        service = ContinuationService(NumericsSettings(depth_check=1))
        calls = []
        monkeypatch.setattr(service, "_continued", lambda *args: calls.append(args[-1]) or 1.0 + 0j)
        service.integral_i(IntegralSpec(p=1, q=1, n=3), kernels.lambda_pair(0.46), depth=5)
        assert calls == [5]


class TestVerticalContour:

    @pytest.mark.parametrize("omega,contour", [
        (0.3, Contour.STRAIGHT),
        (0.5001, Contour.VERTICAL),
        (0.501, Contour.VERTICAL),
        (0.6, Contour.STRAIGHT),
        (10.0, Contour.STRAIGHT),
    ])
    def test_automatic_choice(self, continuation, kernels, omega, contour):
        """Vertical only while |lambda| is below the configured kappa"""
        assert continuation.resolve_contour(kernels.lambda_pair(omega)) == contour

    def test_explicit_choice_wins(self, continuation, kernels):
        """A requested contour is used as given"""
        assert continuation.resolve_contour(kernels.lambda_pair(0.5001), Contour.DETOUR) == Contour.DETOUR

    @pytest.mark.parametrize("omega", [0.55, 0.6, 1.0])
    def test_agrees_with_straight(self, continuation, kernels, omega):
        """Vertical and straight paths give the same integral where both converge"""
        lam = kernels.lambda_pair(omega)
        spec = IntegralSpec(p=1, q=1, n=3)
        straight, _ = continuation.integral_i(spec, lam, contour=Contour.STRAIGHT)
        vertical, _ = continuation.integral_i(spec, lam, contour=Contour.VERTICAL)
        assert abs(vertical - straight) <= 1e-9 * abs(straight)

    @pytest.mark.parametrize("omega,n", [(0.5001, 3), (0.501, 4)])
    def test_just_above_threshold(self, continuation, kernels, omega, n):
        """Against a 30-digit quadrature resolving every oscillation"""
        value, report = continuation.integral_i(IntegralSpec(p=1, q=1, n=n), kernels.lambda_pair(omega))
        assert report.depth == 0
        assert value == pytest.approx(complex(mp_plain_above(1, 1, omega, n)), rel=1e-9)

    def test_pointwise_phi(self, continuation, kernels):
        """Phi takes the same path"""
        lam = kernels.lambda_pair(0.6)
        straight, _ = continuation.phi(KernelParams(p=1, q=1), lam, 1.5, contour=Contour.STRAIGHT)
        vertical, _ = continuation.phi(KernelParams(p=1, q=1), lam, 1.5, contour=Contour.VERTICAL)
        assert abs(vertical - straight) <= 1e-9 * abs(straight)


class TestTildeIntegral:

    @pytest.mark.parametrize("omega,n", [(0.1, 4), (0.45, 3), (1.0, 4), (20.0, 3)])
    def test_matches_direct_integral(self, continuation, kernels, omega, n):
        """I~ needs no continuation and is real"""
        value, report = continuation.integral_i(
            IntegralSpec(p=1, q=1, n=n, kind=IntegralKind.TILDE), kernels.lambda_pair(omega)
        )
        assert report.depth == 0
        assert value.imag == 0.0
        assert value.real == pytest.approx(float(mp_tilde(1, 1, omega, n)), rel=1e-10)


class TestPhi:

    @pytest.mark.parametrize("r", [0.0, 0.5, 1.5, 6.0])
    def test_phi_matches_direct_integral(self, continuation, kernels, r):
        """Phi(1,1,lambda,r) against a 30-digit quadrature"""
        value, _ = continuation.phi(KernelParams(p=1, q=1), kernels.lambda_pair(0.1), r)
        assert value == pytest.approx(complex(mp_phi(1, 1, 0.1, r)), rel=1e-10)

    def test_negative_radius(self, continuation, kernels):
        """A negative radius is a DomainError"""
        with pytest.raises(DomainError):
            continuation.phi(KernelParams(p=1, q=1), kernels.lambda_pair(0.1), -1.0)

    def test_phi_tilde_at_origin(self, continuation, kernels):
        """Phi~ at r = 0 is int_1^lambda~ K~ ds"""
        lam = kernels.lambda_pair(1.0)
        lt = mpmath.sqrt(3)
        pre = ((lt - 1) / (lt + 1)) ** (1 / lt)
        expected = mpmath.quad(lambda s: pre * (lt + s) ** (1 + 1 / lt) * (lt - s) ** (1 - 1 / lt), [1, lt])
        assert continuation.phi_tilde(KernelParams(p=1, q=1), lam, 0.0).real == pytest.approx(float(expected), rel=1e-10)
