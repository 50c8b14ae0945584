"""
Brute-force holonomy oracle in a truncated bosonic Fock space.

The mode is truncated to N_F levels; the control unitary is
U(x, y, r1) = D(x + iy) S(r1) with

    S(nu)  = exp(nu a+a+ - conj(nu) a a)
    D(eta) = exp(eta a+ - conj(eta) a)

evaluated with scipy's scaling-and-squaring exponential. The code basis is
the two lowest Fock states |0>, |1>. From U the oracle computes:
- the adiabatic connection A_mu = <phi_m| U+ dU/dlambda_mu |phi_n> by
  central differences
- the field strength F_mu_nu = d_mu A_nu - d_nu A_mu + [A_mu, A_nu]
- path-ordered holonomies over closed polylines, one 2x2 exponential per step
- convergence ladders over truncation, step count and difference step

None of this uses the closed forms of the loops module; the tests compare
the two.
"""

from __future__ import annotations

import enum
import logging
import math
from collections import OrderedDict
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import expm

from .error_models import ErrorProfile
from .exceptions import DomainError
from .loops import ControlPlane, RectLoop, check_profile_domain, hadamard_loops, surface_sigma
from .su2 import PauliAxis, QubitGate, axis_rotation, pauli

logger = logging.getLogger(__name__)

DEFAULT_FOCK_DIM = 64
DEFAULT_STEP = 1e-3
DEFAULT_STEPS_PER_EDGE = 400
MIN_FOCK_DIM = 4
MIN_STEP = 1e-6
MAX_STEP = 1e-2
MIN_STEPS_PER_EDGE = 10
CODE_DIM = 2

# accuracy envelope at the default truncation
MAX_SQUEEZE = 1.5
MAX_DISPLACEMENT = 3.0

LEAKAGE_WARNING = 1e-8
CLOSURE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FockSpace:
    """
    Truncated mode of dimension N_F with cached ladder operators.

    The operators are computed once per instance and never mutated, so one
    space can be shared between worker threads.
    """

    dim: int = DEFAULT_FOCK_DIM

    def __post_init__(self):
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < MIN_FOCK_DIM:
            raise DomainError(f"Fock dimension must be an integer of at least {MIN_FOCK_DIM}, got: {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))

    @cached_property
    def annihilation(self) -> np.ndarray:
        a = np.diag(np.sqrt(np.arange(1, self.dim, dtype=float)), k=1).astype(complex)
        a.setflags(write=False)
        return a

    @cached_property
    def creation(self) -> np.ndarray:
        a_dagger = self.annihilation.conj().T.copy()
        a_dagger.setflags(write=False)
        return a_dagger

    @cached_property
    def creation_squared(self) -> np.ndarray:
        return self.creation @ self.creation

    @cached_property
    def annihilation_squared(self) -> np.ndarray:
        return self.annihilation @ self.annihilation

    def commutator_defect(self) -> float:
        """Max-norm of [a, a+] - I on the leading (N_F - 1) block."""
        commutator = self.annihilation @ self.creation - self.creation @ self.annihilation
        block = self.dim - 1
        return float(np.max(np.abs(commutator[:block, :block] - np.eye(block))))

    def top_leakage(self, unitary: np.ndarray) -> float:
        """Largest population the code states put on the two highest Fock levels."""
        columns = np.asarray(unitary)[-2:, :CODE_DIM]
        return float(np.max(np.sum(np.abs(columns) ** 2, axis=0)))


class ControlDirection(enum.Enum):
    X = "x"
    Y = "y"
    R1 = "r1"

    @property
    def index(self) -> int:
        return ("x", "y", "r1").index(self.value)

    def offset(self, step: float) -> np.ndarray:
        vector = np.zeros(3)
        vector[self.index] = step
        return vector


@dataclass(frozen=True)
class ControlPoint:
    """Point (x, y, r1) of the control manifold at theta1 = 0."""

    x: float
    y: float
    r1: float
    theta1: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "r1", "theta1"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"Control coordinate {name} must be finite, got: {value}")
            object.__setattr__(self, name, value)
        if self.r1 < 0:
            raise DomainError(f"Squeezing r1 must be non-negative, got: {self.r1}")
        if self.theta1 != 0.0:
            raise DomainError(f"Only theta1 = 0 is supported, got: {self.theta1}")

    @property
    def eta(self) -> complex:
        return complex(self.x, self.y)

    @property
    def nu(self) -> complex:
        return complex(self.r1 * math.cos(self.theta1), self.r1 * math.sin(self.theta1))

    def coordinates(self) -> np.ndarray:
        return np.array([self.x, self.y, self.r1])


def squeeze(nu: complex, space: FockSpace) -> np.ndarray:
    """S(nu) = exp(nu a+a+ - conj(nu) a a)."""
    nu = complex(nu)
    if abs(nu) > MAX_SQUEEZE:
        logger.warning(f"Squeezing |nu|={abs(nu):.3f} is outside the accuracy envelope {MAX_SQUEEZE}")
    return expm(nu * space.creation_squared - nu.conjugate() * space.annihilation_squared)


def displace(eta: complex, space: FockSpace) -> np.ndarray:
    """D(eta) = exp(eta a+ - conj(eta) a)."""
    eta = complex(eta)
    if abs(eta) > MAX_DISPLACEMENT:
        logger.warning(f"Displacement |eta|={abs(eta):.3f} is outside the accuracy envelope {MAX_DISPLACEMENT}")
    return expm(eta * space.creation - eta.conjugate() * space.annihilation)


def control_unitary(point: ControlPoint, space: FockSpace) -> np.ndarray:
    """U = D(x + iy) S(r1), displacement applied after squeezing."""
    return displace(point.eta, space) @ squeeze(point.nu, space)


class _UnitaryCache:
    """
    Memoised D and S factors for one oracle run, least recently used first out.

    Coordinates are raw (x, y, r1) triples: finite differences step below
    r1 = 0, which ControlPoint does not allow.
    """

    size = 64

    def __init__(self, space: FockSpace):
        self.space = space
        self._squeezes: OrderedDict[float, np.ndarray] = OrderedDict()
        self._displacements: OrderedDict[tuple[float, float], np.ndarray] = OrderedDict()

    def _lookup(self, store: OrderedDict, key, build):
        if key in store:
            store.move_to_end(key)
            return store[key]
        value = store[key] = build()
        if len(store) > self.size:
            store.popitem(last=False)
        return value

    def unitary(self, coordinates: np.ndarray) -> np.ndarray:
        x, y, r1 = (float(value) for value in coordinates)
        squeezing = self._lookup(self._squeezes, r1, lambda: squeeze(r1, self.space))
        displacement = self._lookup(
            self._displacements, (x, y), lambda: displace(complex(x, y), self.space)
        )
        return displacement @ squeezing


@dataclass(frozen=True)
class ConnectionMatrix:
    direction: ControlDirection
    matrix: np.ndarray
    skew_defect: float


def _check_step(step: float) -> None:
    if not (math.isfinite(step) and MIN_STEP <= step <= MAX_STEP):
        raise DomainError(f"Difference step must lie in [{MIN_STEP:g}, {MAX_STEP:g}], got: {step}")


def _connection_at(
    coordinates: np.ndarray, direction: ControlDirection, step: float, cache: _UnitaryCache
) -> np.ndarray:
    here = cache.unitary(coordinates)
    forward = cache.unitary(coordinates + direction.offset(step))
    backward = cache.unitary(coordinates - direction.offset(step))
    derivative = (forward[:, :CODE_DIM] - backward[:, :CODE_DIM]) / (2.0 * step)
    return here[:, :CODE_DIM].conj().T @ derivative


def _skew_defect(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix + matrix.conj().T)))


def connection(
    point: ControlPoint,
    direction: ControlDirection,
    step: float = DEFAULT_STEP,
    space: FockSpace | None = None,
) -> ConnectionMatrix:
    """
    Adiabatic connection A_mu at `point` by central differences of U.

    Raises:
        DomainError: If step is outside [1e-6, 1e-2]
    """
    _check_step(step)
    space = space or FockSpace()
    direction = ControlDirection(direction)
    matrix = _connection_at(point.coordinates(), direction, step, _UnitaryCache(space))
    return ConnectionMatrix(direction, matrix, _skew_defect(matrix))


def _field_strength_at(
    coordinates: np.ndarray,
    mu: ControlDirection,
    nu: ControlDirection,
    step: float,
    cache: _UnitaryCache,
) -> np.ndarray:
    a_mu = _connection_at(coordinates, mu, step, cache)
    a_nu = _connection_at(coordinates, nu, step, cache)
    d_mu_a_nu = (
        _connection_at(coordinates + mu.offset(step), nu, step, cache)
        - _connection_at(coordinates - mu.offset(step), nu, step, cache)
    ) / (2.0 * step)
    d_nu_a_mu = (
        _connection_at(coordinates + nu.offset(step), mu, step, cache)
        - _connection_at(coordinates - nu.offset(step), mu, step, cache)
    ) / (2.0 * step)
    return d_mu_a_nu - d_nu_a_mu + a_mu @ a_nu - a_nu @ a_mu


def field_strength(
    point: ControlPoint,
    mu: ControlDirection,
    nu: ControlDirection,
    step: float = DEFAULT_STEP,
    space: FockSpace | None = None,
) -> np.ndarray:
    """
    Numerical field strength F_mu_nu at `point`.

    Derivatives of the connection are central differences of connections
    computed with the same step.
    """
    _check_step(step)
    space = space or FockSpace()
    return _field_strength_at(
        point.coordinates(), ControlDirection(mu), ControlDirection(nu), step, _UnitaryCache(space)
    )


_SIGMA_X = pauli(PauliAxis.X).entries
_SIGMA_Y = pauli(PauliAxis.Y).entries


def analytic_field_strength(mu: ControlDirection, nu: ControlDirection, r1: float) -> np.ndarray:
    """
    Closed-form field strength in the displacement-squeezing planes at theta1 = 0:

        F_x_r1 = -2i sigma_y exp(-2 r1)
        F_y_r1 = -2i sigma_x exp(+2 r1)

    Raises:
        DomainError: For the (x, y) plane, which has no reference value here
    """
    mu, nu = ControlDirection(mu), ControlDirection(nu)
    if mu is nu:
        return np.zeros((2, 2), dtype=complex)
    components = {
        (ControlDirection.X, ControlDirection.R1): -2j * _SIGMA_Y * math.exp(-2.0 * r1),
        (ControlDirection.Y, ControlDirection.R1): -2j * _SIGMA_X * math.exp(2.0 * r1),
    }
    if (mu, nu) in components:
        return components[(mu, nu)]
    if (nu, mu) in components:
        return -components[(nu, mu)]
    raise DomainError(f"No reference field strength for the ({mu.value}, {nu.value}) plane")


def _plane_point(plane: ControlPlane, s: float, r1: float) -> ControlPoint:
    if plane is ControlPlane.XR1:
        return ControlPoint(x=s, y=0.0, r1=r1)
    return ControlPoint(x=0.0, y=s, r1=r1)


def rect_loop_path(loop: RectLoop) -> tuple[ControlPoint, ...]:
    """Corners of a rectangular loop as a closed polyline, other coordinate at 0."""
    return tuple(_plane_point(loop.plane, s, r1) for s, r1 in loop.corners())


def perturbed_loop_path(
    loop: RectLoop, profile: ErrorProfile, top_nodes: int | None = None
) -> tuple[ControlPoint, ...]:
    """
    Closed polyline of `loop` with its top edge at r1 = d + delta_r(s).

    The top edge is sampled at `top_nodes` evenly spaced points (default:
    the profile grid, so the samples are used as they are) and traversed
    from b back to a.
    """
    check_profile_domain(loop, profile)
    top_nodes = profile.grid_size if top_nodes is None else top_nodes
    if top_nodes < 2:
        raise DomainError(f"Top edge needs at least 2 nodes, got: {top_nodes}")
    nodes = np.linspace(loop.a, loop.b, top_nodes)
    heights = loop.d + profile.values_at(nodes)
    if np.any(heights < 0):
        raise DomainError("Perturbed top edge dips below r1 = 0")
    top = [_plane_point(loop.plane, float(s), float(r1)) for s, r1 in zip(nodes[::-1], heights[::-1])]
    return (_plane_point(loop.plane, loop.a, 0.0), _plane_point(loop.plane, loop.b, 0.0), *top,
            _plane_point(loop.plane, loop.a, 0.0))


class OracleHolonomy(NamedTuple):
    gate: QubitGate
    unitarity_defect: float
    max_skew_defect: float
    max_leakage: float


def path_ordered_holonomy(
    path: RectLoop | Sequence[ControlPoint],
    steps_per_edge: int = DEFAULT_STEPS_PER_EDGE,
    space: FockSpace | None = None,
    step: float = DEFAULT_STEP,
) -> OracleHolonomy:
    """
    Path-ordered product of exp(A . dlambda) along a closed polyline.

    Each polyline edge is split into `steps_per_edge` equal steps; the
    connection is taken at the step midpoint and exponentiated as a 2x2
    matrix, and later steps multiply from the left. The product is not
    re-unitarised: its defect is reported alongside the gate.

    Raises:
        DomainError: If the path is open, has fewer than 2 points or
            steps_per_edge < 10
    """
    if isinstance(path, RectLoop):
        path = rect_loop_path(path)
    points = list(path)
    if len(points) < 2:
        raise DomainError(f"A path needs at least 2 points, got: {len(points)}")
    if steps_per_edge < MIN_STEPS_PER_EDGE:
        raise DomainError(f"steps_per_edge must be at least {MIN_STEPS_PER_EDGE}, got: {steps_per_edge}")
    _check_step(step)
    start, end = points[0].coordinates(), points[-1].coordinates()
    if np.max(np.abs(start - end)) > CLOSURE_TOLERANCE:
        raise DomainError(f"Path is not closed: starts at {start.tolist()}, ends at {end.tolist()}")

    space = space or FockSpace()
    cache = _UnitaryCache(space)
    product = np.eye(CODE_DIM, dtype=complex)
    max_skew = 0.0
    max_leakage = 0.0
    for origin, target in zip(points[:-1], points[1:]):
        origin, target = origin.coordinates(), target.coordinates()
        increment = (target - origin) / steps_per_edge
        moving = [direction for direction in ControlDirection if increment[direction.index] != 0.0]
        if not moving:
            continue
        for k in range(steps_per_edge):
            midpoint = origin + (k + 0.5) * increment
            generator = np.zeros((CODE_DIM, CODE_DIM), dtype=complex)
            for direction in moving:
                matrix = _connection_at(midpoint, direction, step, cache)
                max_skew = max(max_skew, _skew_defect(matrix))
                generator += matrix * increment[direction.index]
            max_leakage = max(max_leakage, space.top_leakage(cache.unitary(midpoint)))
            product = expm(generator) @ product

    gate = QubitGate(product)
    if max_leakage > LEAKAGE_WARNING:
        logger.warning(f"Fock leakage {max_leakage:.2e} at N_F={space.dim}; the truncation is too small")
    logger.debug(
        f"Oracle holonomy over {len(points) - 1} edges at N_F={space.dim}: "
        f"unitarity defect {gate.unitarity_defect():.2e}, skew {max_skew:.2e}"
    )
    return OracleHolonomy(gate, gate.unitarity_defect(), max_skew, max_leakage)


def centered_hadamard_loops(l_x: float, l_y: float) -> tuple[RectLoop, RectLoop]:
    """Hadamard loops centred on zero displacement, keeping |eta| <= l/2."""
    return hadamard_loops(l_x, l_y, -l_x / 2.0, -l_y / 2.0)


class ConvergenceTarget(enum.Enum):
    FIELD_STRENGTH_XR1 = "field-strength-x-r1"
    FIELD_STRENGTH_YR1 = "field-strength-y-r1"
    HOLONOMY_C1 = "holonomy-c1"
    HOLONOMY_C2 = "holonomy-c2"


class LadderRung(NamedTuple):
    dim: int
    steps_per_edge: int = DEFAULT_STEPS_PER_EDGE
    step: float = DEFAULT_STEP


class LadderRow(NamedTuple):
    rung: LadderRung
    error: float


@dataclass(frozen=True)
class ConvergenceTable:
    target: ConvergenceTarget
    rows: tuple[LadderRow, ...]
    monotone: bool

    @property
    def errors(self) -> list[float]:
        return [row.error for row in self.rows]


# a rung may exceed its predecessor by this share of the ladder's largest error
LADDER_NOISE_ALLOWANCE = 0.1


def _rung_error(
    target: ConvergenceTarget, rung: LadderRung, r1: float, length: float
) -> float:
    space = FockSpace(rung.dim)
    if target is ConvergenceTarget.FIELD_STRENGTH_XR1:
        point, direction = ControlPoint(0.0, 0.0, r1), ControlDirection.X
    elif target is ConvergenceTarget.FIELD_STRENGTH_YR1:
        point, direction = ControlPoint(0.0, 0.0, r1), ControlDirection.Y
    else:
        loop_i, loop_ii = centered_hadamard_loops(length, length)
        loop = loop_i if target is ConvergenceTarget.HOLONOMY_C1 else loop_ii
        oracle = path_ordered_holonomy(loop, rung.steps_per_edge, space, rung.step)
        reference = axis_rotation(loop.plane.rotation_axis, surface_sigma(loop))
        return oracle.gate.distance(reference)
    numerical = field_strength(point, direction, ControlDirection.R1, rung.step, space)
    reference = analytic_field_strength(direction, ControlDirection.R1, r1)
    return float(np.max(np.abs(numerical - reference)) / np.max(np.abs(reference)))


def is_non_increasing(errors: Sequence[float], allowance: float = LADDER_NOISE_ALLOWANCE) -> bool:
    slack = allowance * max(errors)
    return all(later <= earlier + slack for earlier, later in zip(errors[:-1], errors[1:]))


def convergence_check(
    target: ConvergenceTarget,
    ladder: Sequence[LadderRung],
    r1: float = 0.5,
    length: float = math.pi / 2,
) -> ConvergenceTable:
    """
    Error against the closed form on every rung of a refinement ladder.

    Field-strength targets are evaluated at (0, 0, r1) and report the
    relative max-norm error; holonomy targets use the centred Hadamard loop
    of side `length` and report the max-norm gate distance.

    Raises:
        DomainError: If the ladder has fewer than 3 rungs
    """
    target = ConvergenceTarget(target)
    ladder = [LadderRung(*rung) for rung in ladder]
    if len(ladder) < 3:
        raise DomainError(f"A convergence ladder needs at least 3 rungs, got: {len(ladder)}")
    rows = tuple(LadderRow(rung, _rung_error(target, rung, r1, length)) for rung in ladder)
    table = ConvergenceTable(target, rows, is_non_increasing([row.error for row in rows]))
    if not table.monotone:
        logger.warning(f"Convergence ladder for {target.value} is not non-increasing: {table.errors}")
    return table

