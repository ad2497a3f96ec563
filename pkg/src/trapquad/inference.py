"""Quasi-static noise averaging, lineshape fitting and moment extraction.

Magnetic field noise is modelled as Gaussian across experiments and constant
within one experiment.  A field excursion b shifts both rotating-frame
detunings: Delta -> Delta - k_D*b with k_D = 2*g_D*mu_B/hbar, and
delta -> delta - k_d*b with k_d = (g_D - g_S)*mu_B/(2*hbar).  The averaged
signal is a Gauss-Hermite integral of the transfer probability over b.

The (omega_q, sigma_B) pair is recovered from measured transfer fractions by
a chi^2 fit with per-point binomial variance; parameter errors come from the
covariance at the optimum and are scaled by sqrt(chi2_nu) when chi2_nu > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize
from scipy.special import roots_hermitenorm

from .dynamics import RwaSystem, SpectrumScan, transfer_probabilities
from .errors import FitError, InvalidInputError, QuadratureConvergenceError
from .trap import CODATA2018, TrapConfig

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class NoiseModel:
    """Gaussian quasi-static magnetic field noise and its detuning sensitivities."""

    sigma_b: float                 # tesla, rms deviation about the mean
    mean_b: float = 0.0            # tesla, offset of the mean field
    g_d: float = 6.0 / 5.0
    g_s: float = 2.0025
    include_laser_sensitivity: bool = True

    def __post_init__(self):
        if self.sigma_b < 0:
            raise InvalidInputError("sigma_b must be non-negative")

    @property
    def sensitivity_rf(self) -> float:
        """d(Delta)/d(-b): 2 g_D mu_B / hbar, rad/s per tesla."""
        return 2.0 * self.g_d * CODATA2018.bohr_magneton / CODATA2018.hbar

    @property
    def sensitivity_laser(self) -> float:
        """d(delta)/d(-b): (g_D - g_S) mu_B / (2 hbar), rad/s per tesla."""
        if not self.include_laser_sensitivity:
            return 0.0
        return ((self.g_d - self.g_s) * CODATA2018.bohr_magneton
                / (2.0 * CODATA2018.hbar))


def _averaged_transfer(sys: RwaSystem, noise: NoiseModel,
                       detunings: np.ndarray, tau: float,
                       order: int) -> np.ndarray:
    """Gauss-Hermite average of the transfer probability over field noise."""
    detunings = np.asarray(detunings, dtype=float)
    if noise.sigma_b == 0.0 and noise.mean_b == 0.0:
        return transfer_probabilities(
            sys.omega_q, sys.omega_0,
            np.full_like(detunings, sys.detuning_rf), detunings, tau,
        )
    nodes, weights = roots_hermitenorm(order)
    b = noise.mean_b + noise.sigma_b * nodes           # field samples, tesla
    w = weights / math.sqrt(2.0 * math.pi)             # sum(w) == 1
    d_rf = sys.detuning_rf - noise.sensitivity_rf * b
    d_l = detunings[:, None] - noise.sensitivity_laser * b[None, :]
    probs = transfer_probabilities(
        sys.omega_q, sys.omega_0,
        np.broadcast_to(d_rf[None, :], d_l.shape), d_l, tau,
    )
    return probs @ w


def noise_averaged_signal(sys: RwaSystem, noise: NoiseModel,
                          detunings: np.ndarray, tau: float,
                          order: int = 128,
                          check_convergence: bool = True) -> SpectrumScan:
    """Noise-averaged transfer spectrum with an order-doubling convergence check.

    The default order covers sigma_b up to ~50 nT at kHz-scale couplings;
    stronger smearing needs a higher order (the check reports when it does).
    """
    if order < 8:
        raise InvalidInputError("quadrature order must be at least 8")
    detunings = np.asarray(detunings, dtype=float)
    fine = _averaged_transfer(sys, noise, detunings, tau, 2 * order)
    if check_convergence:
        coarse = _averaged_transfer(sys, noise, detunings, tau, order)
        worst = float(np.max(np.abs(fine - coarse)))
        if worst > 1e-4:
            raise QuadratureConvergenceError(
                f"order {order} -> {2 * order} changes the signal by "
                f"{worst:.2e} (> 1e-4); raise the order"
            )
    return SpectrumScan(detunings=detunings, transfer=fine, tau=tau)


def simulate_counts(sys: RwaSystem, noise: NoiseModel, detunings: np.ndarray,
                    tau: float, shots: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Binomial counts drawn from the noise-averaged transfer probability."""
    scan = noise_averaged_signal(sys, noise, detunings, tau,
                                 check_convergence=False)
    return rng.binomial(shots, np.clip(scan.transfer, 0.0, 1.0))


@dataclass(frozen=True)
class FitConfig:
    """Fixed experimental parameters and optimiser settings for fit_spectrum."""

    tau: float                      # probe time, s
    omega_0: float | None = None    # defaults to the pi-pulse value pi/tau
    detuning_rf: float = 0.0        # mean Delta during the scan
    g_d: float = 6.0 / 5.0
    g_s: float = 2.0025
    include_laser_sensitivity: bool = True
    quadrature_order: int = 40
    grid_omega_q: tuple[float, float, int] | None = None   # rad/s lo, hi, n
    grid_sigma_b: tuple[float, float, int] = (1e-9, 60e-9, 13)
    max_iterations: int = 4000

    def rabi_frequency(self) -> float:
        return self.omega_0 if self.omega_0 is not None else math.pi / self.tau


@dataclass(frozen=True)
class FitResult:
    """Fitted quadrupole coupling and field noise with scaled uncertainties."""

    omega_q: float        # rad/s
    omega_q_err: float
    sigma_b: float        # tesla
    sigma_b_err: float
    chi2_reduced: float
    n_points: int
    shots: int

    def to_dict(self) -> dict:
        return {
            "omega_q_hz": self.omega_q / TWO_PI,
            "omega_q_err_hz": self.omega_q_err / TWO_PI,
            "sigma_b_nt": self.sigma_b * 1e9,
            "sigma_b_err_nt": self.sigma_b_err * 1e9,
            "chi2_reduced": self.chi2_reduced,
            "n_points": self.n_points,
            "shots": self.shots,
        }


def _binomial_variance(p_model: np.ndarray, shots: np.ndarray) -> np.ndarray:
    """Per-point variance max(p(1-p), 1/(4N))/N; the floor avoids zero weights."""
    per_shot = np.maximum(p_model * (1.0 - p_model), 1.0 / (4.0 * shots))
    return per_shot / shots


def fit_spectrum(detunings: np.ndarray, counts: np.ndarray, shots,
                 config: FitConfig) -> FitResult:
    """Chi^2 fit of (omega_q, sigma_B) to measured transfer counts.

    Needs at least 8 points.  The optimum is located by a coarse grid scan
    followed by Nelder-Mead refinement; errors are the square roots of the
    diagonal of 2*H^-1 with H the chi^2 Hessian, multiplied by sqrt(chi2_nu)
    when chi2_nu exceeds 1.
    """
    detunings = np.asarray(detunings, dtype=float)
    counts = np.asarray(counts, dtype=float)
    shots_arr = np.broadcast_to(np.asarray(shots, dtype=float), counts.shape).copy()
    if detunings.shape != counts.shape:
        raise InvalidInputError("detunings and counts must have the same length")
    if len(detunings) < 8:
        raise InvalidInputError("need at least 8 data points")
    if np.any(shots_arr < 1):
        raise InvalidInputError("each point needs at least one shot")
    fractions = counts / shots_arr

    omega_0 = config.rabi_frequency()

    def model(omega_q: float, sigma_b: float) -> np.ndarray:
        sys = RwaSystem(omega_q, omega_0, config.detuning_rf, 0.0)
        noise = NoiseModel(
            sigma_b=sigma_b, g_d=config.g_d, g_s=config.g_s,
            include_laser_sensitivity=config.include_laser_sensitivity,
        )
        return _averaged_transfer(sys, noise, detunings, config.tau,
                                  config.quadrature_order)

    def chi2(params: np.ndarray) -> float:
        omega_q, sigma_b = params
        if omega_q <= 0 or sigma_b < 0:
            return 1e12
        p = model(omega_q, sigma_b)
        var = _binomial_variance(p, shots_arr)
        return float(np.sum((fractions - p) ** 2 / var))

    # coarse grid seeds the simplex away from wrong peak assignments
    if config.grid_omega_q is not None:
        wlo, whi, wn = config.grid_omega_q
    else:
        span = float(detunings.max() - detunings.min())
        wlo, whi, wn = 0.2 * span, 1.2 * span, 13
    slo, shi, sn = config.grid_sigma_b
    grid_w = np.linspace(wlo, whi, int(wn))
    grid_s = np.linspace(slo, shi, int(sn))
    best = None
    for w in grid_w:
        for s in grid_s:
            val = chi2(np.array([w, s]))
            if best is None or val < best[0]:
                best = (val, w, s)
    assert best is not None

    scale = np.array([best[1], max(best[2], 1e-9)])

    def chi2_scaled(x: np.ndarray) -> float:
        return chi2(x * scale)

    res = minimize(
        chi2_scaled, np.array([best[1], best[2]]) / scale,
        method="Nelder-Mead",
        options={
            "xatol": 1e-10, "fatol": 1e-12,
            "maxiter": config.max_iterations, "maxfev": config.max_iterations,
        },
    )
    if not res.success and res.status != 2:  # status 2: maxiter, still usable
        raise FitError(f"simplex refinement failed: {res.message}")
    omega_q, sigma_b = res.x * scale
    sigma_b = abs(sigma_b)
    chi2_min = chi2(np.array([omega_q, sigma_b]))
    ndof = len(detunings) - 2
    chi2_nu = chi2_min / ndof

    cov = _chi2_covariance(chi2, np.array([omega_q, sigma_b]))
    errs = np.sqrt(np.diag(cov))
    if chi2_nu > 1.0:
        errs = errs * math.sqrt(chi2_nu)

    return FitResult(
        omega_q=float(omega_q), omega_q_err=float(errs[0]),
        sigma_b=float(sigma_b), sigma_b_err=float(errs[1]),
        chi2_reduced=float(chi2_nu), n_points=len(detunings),
        shots=int(round(float(np.max(shots_arr)))),
    )


def _chi2_covariance(chi2, optimum: np.ndarray) -> np.ndarray:
    """Covariance 2*H^-1 from a central-difference Hessian of chi^2."""
    steps = np.abs(optimum) * 1e-4 + 1e-15
    n = len(optimum)
    hess = np.zeros((n, n))
    f0 = chi2(optimum)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = steps[i]
        fp = chi2(optimum + ei)
        fm = chi2(optimum - ei)
        hess[i, i] = (fp - 2 * f0 + fm) / steps[i] ** 2
    for i in range(n):
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = steps[i]
            ej[j] = steps[j]
            fpp = chi2(optimum + ei + ej)
            fpm = chi2(optimum + ei - ej)
            fmp = chi2(optimum - ei + ej)
            fmm = chi2(optimum - ei - ej)
            hess[i, j] = hess[j, i] = (fpp - fpm - fmp + fmm) / (
                4 * steps[i] * steps[j]
            )
    try:
        cov = 2.0 * np.linalg.inv(hess)
    except np.linalg.LinAlgError:
        raise FitError("degenerate covariance at the optimum") from None
    if np.any(np.diag(cov) <= 0):
        raise FitError("degenerate covariance at the optimum")
    return cov


@dataclass(frozen=True)
class ThetaEstimate:
    """Quadrupole moment in e*a0^2 with propagated uncertainty."""

    theta: float
    error: float


def extract_theta(omega_q: float, omega_q_err: float,
                  trap: TrapConfig) -> ThetaEstimate:
    """Theta = hbar*omega_q*sqrt(2)*e/(m*Omega_rf*omega_s), in e*a0^2.

    The relative error combines the omega_q and omega_s relative errors in
    quadrature.
    """
    if omega_q <= 0 or omega_q_err < 0:
        raise InvalidInputError("omega_q must be positive")
    if trap.omega_s is None or trap.omega_s <= 0:
        raise InvalidInputError("trap must carry a positive omega_s")
    c = CODATA2018
    theta_si = (c.hbar * omega_q * math.sqrt(2.0) * c.elementary_charge
                / (trap.mass * trap.omega_rf * trap.omega_s))
    theta = theta_si / c.e_a0_squared
    rel = math.hypot(omega_q_err / omega_q, trap.omega_s_unc / trap.omega_s)
    return ThetaEstimate(theta=theta, error=abs(theta) * rel)


def combine_runs(omega_qs: list[float], errors: list[float],
                 drift_error: float = 0.0) -> tuple[float, float]:
    """Mean coupling over runs; the largest fit error combines in quadrature
    with the slow-drift bound."""
    if not omega_qs or len(omega_qs) != len(errors):
        raise InvalidInputError("need one error per fitted value")
    mean = float(np.mean(omega_qs))
    err = math.hypot(max(errors), drift_error)
    return mean, err
