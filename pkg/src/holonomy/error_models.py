"""
Squeezing-control error models for the loop-built Hadamard gate.

A squeezing error delta_r(s) raises or lowers the top edge of a loop, which
changes its holonomy angle:

    XR1:  Sigma_I'  = Sigma_I  + exp(-2 d_x) int (1 - exp(-2 delta_r_x)) dx
    YR1:  Sigma_II' = Sigma_II + exp(+2 d_y) int (exp(2 delta_r_y) - 1) dy

The perturbed gate is the composition of the two rotations and its fidelity
against -i H0 is |cos delta_Sigma_I|, whatever the (y, r1) error is. For
small zero-mean errors the deficit is quartic in the error magnitude:

    f ~ |cos(<delta_r^2> (2 l_x - pi/2))| ~ 1 - <delta_r^2>^2 (l_x sqrt2 - pi/(2 sqrt2))^2

This module provides:
- Error profiles sampled on a uniform grid, with constant, sinusoid,
  uniform and gaussian generators and an exact zero-mean option
- Exact (non-linearised) perturbed angles and gates
- Exact, analytic and approximate fidelities, revival widths
- Monte Carlo statistics, error-order scans and l_x sweeps

All integrals use the trapezoid rule on the profile grid.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .exceptions import DomainError
from .loops import (
    ControlPlane,
    RectLoop,
    check_profile_domain,
    hadamard_dx,
    hadamard_loops,
    surface_sigma,
)
from .su2 import (
    PauliAxis,
    QubitGate,
    axis_rotation,
    basis_fidelity,
    compose,
    from_pauli_coefficients,
    hadamard_target,
)

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 4096

# deficits below this are double-precision noise around f = 1
UNDERFLOW_FLOOR = 1e-15

MAX_SCAN_EPS = 0.2

SQRT2 = math.sqrt(2.0)


class NoiseFamily(enum.Enum):
    CONSTANT = "constant"
    SINUSOID = "sinusoid"
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"

    @property
    def is_random(self) -> bool:
        return self in (NoiseFamily.UNIFORM, NoiseFamily.GAUSSIAN)


@dataclass(frozen=True)
class NoiseSpec:
    """
    Generator of squeezing-error profiles.

    `scale` is the error magnitude epsilon: the constant offset, the
    sinusoid amplitude, the half-width of the uniform distribution or the
    standard deviation of the gaussian one. Sinusoids run over an integer
    number of periods of the interval.
    """

    family: NoiseFamily
    scale: float
    periods: int = 1
    phase: float = 0.0
    zero_mean: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", NoiseFamily(self.family))
        scale = float(self.scale)
        if not (math.isfinite(scale) and scale >= 0):
            raise DomainError(f"Noise scale must be non-negative and finite, got: {self.scale}")
        object.__setattr__(self, "scale", scale)
        if isinstance(self.periods, bool) or int(self.periods) != self.periods or self.periods < 1:
            raise DomainError(f"Sinusoid periods must be a positive integer, got: {self.periods}")
        if not math.isfinite(self.phase):
            raise DomainError(f"Sinusoid phase must be finite, got: {self.phase}")
        if self.family is NoiseFamily.CONSTANT and self.zero_mean:
            raise DomainError("A constant profile cannot be made zero-mean")

    def with_scale(self, scale: float) -> NoiseSpec:
        return replace(self, scale=scale)

    def draw(
        self,
        a: float,
        b: float,
        grid_size: int = DEFAULT_GRID_SIZE,
        rng: np.random.Generator | None = None,
        seed: int | None = None,
    ) -> ErrorProfile:
        """
        Sample a profile on [a, b].

        Random families draw from `rng` when given (so callers can take
        several profiles from one seeded stream), otherwise from a fresh
        generator seeded with `seed`.
        """
        if grid_size < 2:
            raise DomainError(f"Profile grid must have at least 2 points, got: {grid_size}")
        unit = np.linspace(0.0, 1.0, grid_size)
        if self.family is NoiseFamily.CONSTANT:
            samples = np.full(grid_size, self.scale)
        elif self.family is NoiseFamily.SINUSOID:
            samples = self.scale * np.sin(2.0 * math.pi * self.periods * unit + self.phase)
        else:
            if rng is None:
                rng = np.random.default_rng(seed)
            if self.family is NoiseFamily.UNIFORM:
                samples = rng.uniform(-self.scale, self.scale, grid_size)
            else:
                samples = rng.normal(0.0, self.scale, grid_size)
        return ErrorProfile(
            samples,
            a,
            b,
            generator=self,
            seed=seed if self.family.is_random else None,
            zero_mean=self.zero_mean,
        )

    def describe(self) -> dict:
        description = {"family": self.family.value, "scale": self.scale, "zero_mean": self.zero_mean}
        if self.family is NoiseFamily.SINUSOID:
            description.update(periods=self.periods, phase=self.phase)
        return description


def trapezoid_mean(samples: np.ndarray) -> float:
    """Mean of uniformly spaced samples with trapezoid weights."""
    return float(np.trapezoid(samples) / (len(samples) - 1))


@dataclass(frozen=True, eq=False)
class ErrorProfile:
    """
    Squeezing error delta_r(s_k) on the uniform grid s_k over [a, b].

    With `zero_mean` set the trapezoid mean is subtracted from the samples
    on construction, so the linear term of the perturbed-angle integral
    vanishes to rounding. `generator` and `seed` record provenance; a
    profile built from explicit samples has no generator.
    """

    samples: np.ndarray
    a: float
    b: float
    generator: NoiseSpec | None = None
    seed: int | None = None
    zero_mean: bool = False

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 2:
            raise DomainError(f"Profile needs a 1-D grid of at least 2 samples, got shape: {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise DomainError("Profile samples must be finite")
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b) and b > a):
            raise DomainError(f"Profile interval needs finite b > a, got: [{a}, {b}]")
        if self.zero_mean:
            samples = samples - trapezoid_mean(samples)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_function(
        cls,
        function: Callable[[np.ndarray], np.ndarray],
        a: float,
        b: float,
        grid_size: int = DEFAULT_GRID_SIZE,
        zero_mean: bool = False,
    ) -> ErrorProfile:
        """Sample a custom error function on the grid of [a, b]."""
        nodes = np.linspace(a, b, grid_size)
        return cls(np.asarray(function(nodes), dtype=float), a, b, zero_mean=zero_mean)

    @property
    def grid_size(self) -> int:
        return int(self.samples.size)

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.grid_size)

    def values_at(self, s) -> np.ndarray:
        """Linear interpolation of the samples."""
        return np.interp(s, self.nodes, self.samples)

    def on_interval(self, a: float, b: float) -> ErrorProfile:
        """The same samples anchored on a different interval."""
        return replace(self, a=a, b=b)

    def grid_mean(self) -> float:
        return trapezoid_mean(self.samples)

    def describe(self) -> dict:
        if self.generator is None:
            return {"family": "custom", "zero_mean": self.zero_mean}
        return {**self.generator.describe(), "seed": self.seed}


def mean_square(profile: ErrorProfile) -> float:
    """<delta_r^2> = (1/l) int delta_r^2 ds by the trapezoid rule."""
    return float(np.trapezoid(profile.samples**2, profile.nodes) / profile.length)


class PerturbedSigma(NamedTuple):
    sigma_prime: float
    delta_sigma: float


def perturbed_sigma(loop: RectLoop, profile: ErrorProfile) -> PerturbedSigma:
    """
    Holonomy angle of `loop` with its top edge moved to r1 = d + delta_r(s).

    The exact integrand is used, no linearisation in delta_r.

    Raises:
        DomainError: If the profile covers a different interval than the loop
    """
    check_profile_domain(loop, profile)
    errors = profile.samples
    if loop.plane is ControlPlane.XR1:
        delta = math.exp(-2.0 * loop.d) * np.trapezoid(-np.expm1(-2.0 * errors), profile.nodes)
    else:
        delta = math.exp(2.0 * loop.d) * np.trapezoid(np.expm1(2.0 * errors), profile.nodes)
    delta = float(delta)
    return PerturbedSigma(surface_sigma(loop) + delta, delta)


def _hadamard_sigmas(
    l_x: float, l_y: float, profile_x: ErrorProfile, profile_y: ErrorProfile
) -> tuple[PerturbedSigma, PerturbedSigma]:
    loop_i, loop_ii = hadamard_loops(l_x, l_y, profile_x.a, profile_y.a)
    return perturbed_sigma(loop_i, profile_x), perturbed_sigma(loop_ii, profile_y)


def _rotations_gate(sigma_i: float, sigma_ii: float) -> QubitGate:
    return compose(axis_rotation(PauliAxis.X, sigma_ii), axis_rotation(PauliAxis.Y, sigma_i))


def perturbed_hadamard(
    l_x: float, l_y: float, profile_x: ErrorProfile, profile_y: ErrorProfile
) -> QubitGate:
    """
    Composed Hadamard gate (-i H) with squeezing errors on both loops.

    The loops are anchored where the profiles are: C_I on
    [profile_x.a, profile_x.a + l_x], C_II on [profile_y.a, profile_y.a + l_y].
    """
    sigma_i, sigma_ii = _hadamard_sigmas(l_x, l_y, profile_x, profile_y)
    return _rotations_gate(sigma_i.sigma_prime, sigma_ii.sigma_prime)


def expanded_perturbed_gate(delta_sigma_i: float, delta_sigma_ii: float) -> QubitGate:
    """
    Closed expanded form of the perturbed gate -i H:

        -(1/sqrt2)(c - s)(I sin d2 + i sigma_x cos d2)
        -(i/sqrt2)(c + s)(sigma_z cos d2 - sigma_y sin d2)

    with c, s = cos, sin of delta_Sigma_I and d2 = delta_Sigma_II.
    """
    return from_pauli_coefficients(*expanded_pauli_coefficients(delta_sigma_i, delta_sigma_ii))


def expanded_pauli_coefficients(
    delta_sigma_i: float, delta_sigma_ii: float
) -> tuple[complex, complex, complex, complex]:
    """(c_I, c_x, c_y, c_z) of the perturbed gate, read off the expanded form."""
    minus = (math.cos(delta_sigma_i) - math.sin(delta_sigma_i)) / SQRT2
    plus = (math.cos(delta_sigma_i) + math.sin(delta_sigma_i)) / SQRT2
    cos2, sin2 = math.cos(delta_sigma_ii), math.sin(delta_sigma_ii)
    return complex(-minus * sin2), -1j * minus * cos2, 1j * plus * sin2, -1j * plus * cos2


def analytic_fidelity(delta_sigma_i: float) -> float:
    """f = |cos delta_Sigma_I|."""
    if not math.isfinite(delta_sigma_i):
        raise DomainError(f"delta_sigma_I must be finite, got: {delta_sigma_i}")
    return abs(math.cos(delta_sigma_i))


class ApproxFidelity(NamedTuple):
    f_cos: float
    f_quartic: float


def _check_approx_inputs(l_x: float, msq: float) -> None:
    if not (math.isfinite(l_x) and l_x >= math.pi / 4):
        raise DomainError(f"l_x must be at least pi/4, got: {l_x}")
    if not (math.isfinite(msq) and msq >= 0):
        raise DomainError(f"Mean-square error must be non-negative, got: {msq}")


def approx_delta_sigma(l_x: float, msq: float) -> float:
    """Small zero-mean error limit of delta_Sigma_I: -<delta_r^2> (2 l_x - pi/2)."""
    _check_approx_inputs(l_x, msq)
    return -msq * (2.0 * l_x - math.pi / 2)


def approx_fidelity(l_x: float, msq: float) -> ApproxFidelity:
    """
    Cosine and quartic approximations of the fidelity for small zero-mean errors.

    The two forms agree to quartic order in the error; which one is larger
    depends on the argument. The quartic form is clipped into [0, 1].
    """
    _check_approx_inputs(l_x, msq)
    f_cos = abs(math.cos(msq * (2.0 * l_x - math.pi / 2)))
    coefficient = (l_x * SQRT2 - math.pi / (2.0 * SQRT2)) ** 2
    f_quartic = min(1.0, max(0.0, 1.0 - msq**2 * coefficient))
    return ApproxFidelity(f_cos, f_quartic)


def revival_length(n: int, msq: float) -> float:
    """
    Width l_x^(n) = pi/4 + pi n / (2 <delta_r^2>) at which the cosine law returns to 1.

    Raises:
        DomainError: If n < 1 or msq is not positive (no finite revival)
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"Revival index must be a positive integer, got: {n}")
    if not (math.isfinite(msq) and msq > 0):
        raise DomainError(f"Mean-square error must be positive for a finite revival, got: {msq}")
    return math.pi / 4 + math.pi * n / (2.0 * msq)


@dataclass(frozen=True)
class FidelityReport:
    """Exact, analytic and approximate fidelities of one perturbed Hadamard gate."""

    delta_sigma_I: float
    delta_sigma_II: float
    f_exact_j0: float
    f_exact_j1: float
    f_analytic: float
    f_approx_cos: float
    f_approx_quartic: float
    mean_square_error: float
    l_x: float
    l_y: float
    seed: int | None
    grid_size: int

    @property
    def one_minus_f_exact(self) -> float:
        return 1.0 - self.f_exact_j0


def fidelity_report(
    l_x: float, l_y: float, profile_x: ErrorProfile, profile_y: ErrorProfile
) -> FidelityReport:
    sigma_i, sigma_ii = _hadamard_sigmas(l_x, l_y, profile_x, profile_y)
    target = hadamard_target().scaled(-1j)
    actual = _rotations_gate(sigma_i.sigma_prime, sigma_ii.sigma_prime)
    msq = mean_square(profile_x)
    approx = approx_fidelity(l_x, msq)
    return FidelityReport(
        delta_sigma_I=sigma_i.delta_sigma,
        delta_sigma_II=sigma_ii.delta_sigma,
        f_exact_j0=basis_fidelity(target, actual, 0),
        f_exact_j1=basis_fidelity(target, actual, 1),
        f_analytic=analytic_fidelity(sigma_i.delta_sigma),
        f_approx_cos=approx.f_cos,
        f_approx_quartic=approx.f_quartic,
        mean_square_error=msq,
        l_x=l_x,
        l_y=l_y,
        seed=profile_x.seed,
        grid_size=profile_x.grid_size,
    )


def run_slots(function: Callable[[int], object], count: int, workers: int = 1) -> tuple:
    """
    Evaluate function(0..count-1) into pre-allocated slots.

    Each result lands in the slot of its index, so the returned tuple does
    not depend on the worker count or completion order.
    """
    slots = [None] * count
    if workers <= 1:
        for index in range(count):
            slots[index] = function(index)
        return tuple(slots)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(function, index): index for index in range(count)}
        for future in as_completed(futures):
            slots[futures[future]] = future.result()
    return tuple(slots)


def draw_profile_pair(
    noise_x: NoiseSpec,
    noise_y: NoiseSpec,
    x_interval: tuple[float, float],
    y_interval: tuple[float, float],
    grid_size: int,
    seed: int,
) -> tuple[ErrorProfile, ErrorProfile]:
    """Both loops' profiles for one sample, drawn in order from one seeded stream."""
    rng = np.random.default_rng(seed)
    profile_x = noise_x.draw(*x_interval, grid_size=grid_size, rng=rng, seed=seed)
    profile_y = noise_y.draw(*y_interval, grid_size=grid_size, rng=rng, seed=seed)
    return profile_x, profile_y


@dataclass(frozen=True)
class MonteCarloResult:
    reports: tuple[FidelityReport, ...]
    mean_f: float
    std_f: float
    min_f: float
    max_f: float
    mean_delta_sigma_I: float
    mean_one_minus_f: float

    @property
    def samples(self) -> int:
        return len(self.reports)


def monte_carlo_fidelity(
    l_x: float,
    l_y: float,
    noise: NoiseSpec,
    samples: int,
    base_seed: int,
    noise_y: NoiseSpec | None = None,
    grid_size: int = DEFAULT_GRID_SIZE,
    a_x: float = 0.0,
    a_y: float = 0.0,
    workers: int = 1,
) -> MonteCarloResult:
    """
    Fidelity statistics over independent profile draws.

    Sample i uses seed base_seed + i for both of its profiles (x first,
    then y, from one stream), so a run with more samples repeats the
    per-sample values of a shorter run. `noise_y` defaults to `noise`.
    """
    if samples < 1:
        raise DomainError(f"Sample count must be at least 1, got: {samples}")
    noise_y = noise if noise_y is None else noise_y
    hadamard_dx(l_x)

    def evaluate(index: int) -> FidelityReport:
        profile_x, profile_y = draw_profile_pair(
            noise, noise_y, (a_x, a_x + l_x), (a_y, a_y + l_y), grid_size, base_seed + index
        )
        return fidelity_report(l_x, l_y, profile_x, profile_y)

    reports = run_slots(evaluate, samples, workers)
    fidelities = np.array([report.f_exact_j0 for report in reports])
    deficits = np.array([report.one_minus_f_exact for report in reports])
    result = MonteCarloResult(
        reports=reports,
        mean_f=float(np.mean(fidelities)),
        std_f=float(np.std(fidelities)),
        min_f=float(np.min(fidelities)),
        max_f=float(np.max(fidelities)),
        mean_delta_sigma_I=float(np.mean([report.delta_sigma_I for report in reports])),
        mean_one_minus_f=float(np.mean(deficits)),
    )
    logger.debug(
        f"Monte Carlo l_x={l_x} {noise.family.value} eps={noise.scale}: "
        f"{samples} samples, mean 1-f={result.mean_one_minus_f:.3e}"
    )
    return result


@dataclass(frozen=True)
class OrderPoint:
    eps: float
    mean_one_minus_f: float
    mean_f: float
    used: bool


@dataclass(frozen=True)
class OrderScan:
    """
    Log-log fit of the mean fidelity deficit against the error magnitude.

    `slope` and `intercept` are None when fewer than two points rise above
    the double-precision floor; `underflow` is set then.
    """

    slope: float | None
    intercept: float | None
    points: tuple[OrderPoint, ...]
    underflow: bool


def order_scan(
    l_x: float,
    noise: NoiseSpec,
    eps_values: Sequence[float],
    samples_per_eps: int,
    base_seed: int,
    l_y: float = 1.0,
    grid_size: int = DEFAULT_GRID_SIZE,
    workers: int = 1,
) -> OrderScan:
    """
    Fit log(mean 1 - f) against log(eps) by unweighted least squares.

    Every eps reuses the same seeds, so the points differ only through the
    error magnitude. Zero-mean families give a slope near 4, profiles with a
    non-zero mean a slope near 2.

    Raises:
        DomainError: If fewer than 3 eps values are given or any lies outside (0, 0.2]
    """
    eps_values = [float(eps) for eps in eps_values]
    if len(eps_values) < 3:
        raise DomainError(f"An order scan needs at least 3 eps values, got: {len(eps_values)}")
    for eps in eps_values:
        if not (math.isfinite(eps) and 0 < eps <= MAX_SCAN_EPS):
            raise DomainError(f"Scan eps values must lie in (0, {MAX_SCAN_EPS}], got: {eps}")

    points = []
    for eps in eps_values:
        result = monte_carlo_fidelity(
            l_x,
            l_y,
            noise.with_scale(eps),
            samples_per_eps,
            base_seed,
            grid_size=grid_size,
            workers=workers,
        )
        points.append(
            OrderPoint(
                eps=eps,
                mean_one_minus_f=result.mean_one_minus_f,
                mean_f=result.mean_f,
                used=result.mean_one_minus_f >= UNDERFLOW_FLOOR,
            )
        )

    used = [point for point in points if point.used]
    if len(used) < 2:
        logger.warning(
            f"Order scan underflow: {len(used)} of {len(points)} points above {UNDERFLOW_FLOOR:g}"
        )
        return OrderScan(slope=None, intercept=None, points=tuple(points), underflow=True)

    log_eps = np.log([point.eps for point in used])
    log_deficit = np.log([point.mean_one_minus_f for point in used])
    slope, intercept = np.polyfit(log_eps, log_deficit, 1)
    logger.info(f"Order scan slope {slope:.4f} over {len(used)} points")
    return OrderScan(slope=float(slope), intercept=float(intercept), points=tuple(points), underflow=False)


def lx_grid(l_min: float, l_max: float, points: int, spacing: str = "linear") -> np.ndarray:
    """Sweep grid for l_x, strictly above pi/4."""
    if points < 2:
        raise DomainError(f"An l_x sweep needs at least 2 points, got: {points}")
    if not (math.isfinite(l_min) and math.isfinite(l_max) and l_max > l_min):
        raise DomainError(f"l_x range is empty: [{l_min}, {l_max}]")
    hadamard_dx(l_min)
    if spacing == "log":
        return np.geomspace(l_min, l_max, points)
    if spacing == "linear":
        return np.linspace(l_min, l_max, points)
    raise DomainError(f"Spacing must be 'linear' or 'log', got: {spacing}")


def revival_points(msq: float, l_min: float, l_max: float) -> list[float]:
    """Revival widths l_x^(n) inside [l_min, l_max]."""
    if not msq > 0:
        return []
    revivals = []
    n = 1
    while (length := revival_length(n, msq)) <= l_max:
        if length >= l_min:
            revivals.append(length)
        n += 1
    return revivals


@dataclass(frozen=True)
class LxScanPoint:
    l_x: float
    d_x: float
    msq: float
    mean_one_minus_f_exact: float
    f_approx_cos: float
    f_approx_quartic: float
    is_local_max: bool


def scan_lx(
    l_values: Sequence[float],
    l_y: float,
    noise: NoiseSpec,
    samples: int,
    base_seed: int,
    noise_y: NoiseSpec | None = None,
    grid_size: int = DEFAULT_GRID_SIZE,
    a_x: float = 0.0,
    a_y: float = 0.0,
    workers: int = 1,
    include_revivals: bool = False,
) -> tuple[LxScanPoint, ...]:
    """
    Sweep the (x, r1) loop width with fixed profile realisations.

    Sample i draws its profiles once (seed base_seed + i) and the x profile
    is re-anchored on [a_x, a_x + l_x] at every width, so the sweep follows
    one realisation and its revival points are sharp. Local maxima of the
    mean fidelity are flagged on interior points.

    With `include_revivals` the predicted revival widths inside the sweep
    range, computed from the realised mean-square error, join the grid.
    """
    if samples < 1:
        raise DomainError(f"Sample count must be at least 1, got: {samples}")
    noise_y = noise if noise_y is None else noise_y
    l_values = [float(length) for length in l_values]
    profiles = [
        draw_profile_pair(noise, noise_y, (0.0, 1.0), (a_y, a_y + l_y), grid_size, base_seed + index)
        for index in range(samples)
    ]
    msq = float(np.mean([mean_square(profile_x) for profile_x, _ in profiles]))
    if include_revivals and l_values:
        revivals = revival_points(msq, min(l_values), max(l_values))
        l_values = sorted(set(l_values) | set(revivals))

    def evaluate(index: int) -> float:
        length = l_values[index]
        deficits = [
            fidelity_report(length, l_y, profile_x.on_interval(a_x, a_x + length), profile_y).one_minus_f_exact
            for profile_x, profile_y in profiles
        ]
        return float(np.mean(deficits))

    deficits = run_slots(evaluate, len(l_values), workers)
    points = []
    for index, length in enumerate(l_values):
        interior = 0 < index < len(l_values) - 1
        is_local_max = (
            interior and deficits[index] < deficits[index - 1] and deficits[index] <= deficits[index + 1]
        )
        approx = approx_fidelity(length, msq)
        points.append(
            LxScanPoint(
                l_x=length,
                d_x=hadamard_dx(length),
                msq=msq,
                mean_one_minus_f_exact=deficits[index],
                f_approx_cos=approx.f_cos,
                f_approx_quartic=approx.f_quartic,
                is_local_max=bool(is_local_max),
            )
        )
    return tuple(points)
