"""
Rectangular control loops in the (x, r1) and (y, r1) planes at theta1 = 0.

A loop is anchored on r1 = 0 (no squeezing), spans the displacement interval
[a, b] and rises to squeezing height d. Traversal is
(a, 0) -> (b, 0) -> (b, d) -> (a, d) -> (a, 0), for which the holonomy is

    XR1:  exp(-i sigma_y Sigma),  Sigma = int dx dr1 2 exp(-2 r1) = l (1 - exp(-2d))
    YR1:  exp(-i sigma_x Sigma),  Sigma = int dy dr1 2 exp(+2 r1) = l (exp(2d) - 1)

The Hadamard gate -i H0 is the XR1 loop with Sigma = pi/4 followed by the
YR1 loop with Sigma = pi/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, ClassVar

import numpy as np

from .exceptions import DomainError
from .su2 import PauliAxis, QubitGate, axis_rotation, compose

if TYPE_CHECKING:
    from .error_models import ErrorProfile

HADAMARD_SIGMA_I = math.pi / 4
HADAMARD_SIGMA_II = math.pi / 2

# hadamard_dx diverges at l_x = pi/4
HADAMARD_LX_MARGIN = 1e-9

DEFAULT_QUADRATURE_GRID = 4096


class ControlPlane(enum.Enum):
    """Control plane of a loop: displacement coordinate paired with r1."""

    XR1 = "x-r1"
    YR1 = "y-r1"

    @property
    def rotation_axis(self) -> PauliAxis:
        return PauliAxis.Y if self is ControlPlane.XR1 else PauliAxis.X

    @property
    def displacement_coordinate(self) -> str:
        return "x" if self is ControlPlane.XR1 else "y"

    def column_integral(self, height):
        """
        Integral of the field-strength density 2 exp(-+2 r1) over r1 in [0, height].

        Accepts scalars or arrays; expm1 keeps the result accurate for the
        small heights of wide loops.
        """
        if self is ControlPlane.XR1:
            return -np.expm1(-2.0 * np.asarray(height, dtype=float))
        return np.expm1(2.0 * np.asarray(height, dtype=float))


@dataclass(frozen=True)
class RectLoop:
    """
    Rectangle [a, b] x [0, d] in one control plane.

    theta1 is not a field: every loop lives at theta1 = 0.
    """

    plane: ControlPlane
    a: float
    b: float
    d: float

    THETA1: ClassVar[float] = 0.0

    def __post_init__(self):
        for name in ("a", "b", "d"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"Loop bound {name} must be finite, got: {value}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "plane", ControlPlane(self.plane))
        if self.b <= self.a:
            raise DomainError(f"Loop needs b > a, got: a={self.a}, b={self.b}")
        if self.d <= 0:
            raise DomainError(f"Loop height d must be positive, got: {self.d}")

    @property
    def side_length(self) -> float:
        return self.b - self.a

    def corners(self) -> tuple[tuple[float, float], ...]:
        """(s, r1) corners in traversal order, closed (first corner repeated)."""
        return (
            (self.a, 0.0),
            (self.b, 0.0),
            (self.b, self.d),
            (self.a, self.d),
            (self.a, 0.0),
        )

    def translated(self, shift: float) -> RectLoop:
        return replace(self, a=self.a + shift, b=self.b + shift)


def side_length(loop: RectLoop) -> float:
    return loop.side_length


def surface_sigma(loop: RectLoop) -> float:
    """Closed-form holonomy angle of a rectangular loop."""
    return float(loop.side_length * loop.plane.column_integral(loop.d))


def surface_sigma_quadrature(
    loop: RectLoop,
    top_edge: ErrorProfile | None = None,
    grid: int = DEFAULT_QUADRATURE_GRID,
) -> float:
    """
    Holonomy angle by quadrature over the region under r1 = d + delta_r(s).

    Composite trapezoid rule on a uniform grid in the displacement
    coordinate; the r1 integral of each column is done exactly. Without a
    top edge the integrand is constant and the rule is exact. A top-edge
    profile is linearly interpolated onto the quadrature grid, so with
    grid == profile.grid_size its samples are used as they are.

    Raises:
        DomainError: If grid < 2 or the profile covers a different interval
    """
    if grid < 2:
        raise DomainError(f"Quadrature grid must have at least 2 points, got: {grid}")
    nodes = np.linspace(loop.a, loop.b, grid)
    heights = np.full(grid, loop.d)
    if top_edge is not None:
        check_profile_domain(loop, top_edge)
        heights = heights + top_edge.values_at(nodes)
    return float(np.trapezoid(loop.plane.column_integral(heights), nodes))


def check_profile_domain(loop: RectLoop, profile: ErrorProfile) -> None:
    if not (
        math.isclose(profile.a, loop.a, rel_tol=1e-12, abs_tol=1e-12)
        and math.isclose(profile.b, loop.b, rel_tol=1e-12, abs_tol=1e-12)
    ):
        raise DomainError(
            f"Profile interval [{profile.a}, {profile.b}] does not match "
            f"loop interval [{loop.a}, {loop.b}]"
        )


def loop_height(plane: ControlPlane, sigma: float, length: float) -> float:
    """
    Squeezing height d at which a loop of side `length` encloses angle `sigma`.

    XR1: d = -ln(1 - sigma/l)/2, reachable only for sigma < l.
    YR1: d = ln(1 + sigma/l)/2, reachable for any sigma > 0.

    Raises:
        DomainError: If the angle is not reachable for this side length
    """
    plane = ControlPlane(plane)
    if not (math.isfinite(sigma) and sigma > 0):
        raise DomainError(f"Target angle must be positive and finite, got: {sigma}")
    if not (math.isfinite(length) and length > 0):
        raise DomainError(f"Side length must be positive and finite, got: {length}")
    if plane is ControlPlane.XR1:
        if sigma >= length:
            raise DomainError(
                f"An (x, r1) loop of side {length} cannot enclose angle {sigma}: needs l > sigma"
            )
        return -0.5 * math.log1p(-sigma / length)
    return 0.5 * math.log1p(sigma / length)


def loop_for_angle(plane: ControlPlane, sigma: float, length: float, a: float = 0.0) -> RectLoop:
    """Rectangular loop on [a, a + length] whose holonomy is a rotation by `sigma`."""
    return RectLoop(plane, a, a + length, loop_height(plane, sigma, length))


def hadamard_dx(l_x: float) -> float:
    """
    Height of the (x, r1) loop giving Sigma_I = pi/4: d_x = -ln(1 - pi/(4 l_x))/2.

    Raises:
        DomainError: If l_x <= pi/4 (the logarithm diverges there)
    """
    if not (math.isfinite(l_x) and l_x > HADAMARD_SIGMA_I + HADAMARD_LX_MARGIN):
        raise DomainError(
            f"l_x must exceed pi/4 ~ {HADAMARD_SIGMA_I:.6f} "
            f"(d_x = -ln(1 - pi/(4 l_x))/2 diverges), got: {l_x}"
        )
    return loop_height(ControlPlane.XR1, HADAMARD_SIGMA_I, l_x)


def hadamard_dy(l_y: float) -> float:
    """
    Height of the (y, r1) loop giving Sigma_II = pi/2: d_y = ln(1 + pi/(2 l_y))/2.

    Raises:
        DomainError: If l_y <= 0
    """
    if not (math.isfinite(l_y) and l_y > 0):
        raise DomainError(f"l_y must be positive, got: {l_y}")
    return loop_height(ControlPlane.YR1, HADAMARD_SIGMA_II, l_y)


def hadamard_loops(l_x: float, l_y: float, a_x: float = 0.0, a_y: float = 0.0) -> tuple[RectLoop, RectLoop]:
    """Return (C_I, C_II): the (x, r1) pi/4 loop and the (y, r1) pi/2 loop."""
    loop_i = RectLoop(ControlPlane.XR1, a_x, a_x + l_x, hadamard_dx(l_x))
    loop_ii = RectLoop(ControlPlane.YR1, a_y, a_y + l_y, hadamard_dy(l_y))
    return loop_i, loop_ii


def holonomy(loop: RectLoop) -> QubitGate:
    """Analytic holonomy exp(-i sigma_axis Sigma) of a rectangular loop."""
    return axis_rotation(loop.plane.rotation_axis, surface_sigma(loop))


def hadamard_gate(l_x: float, l_y: float) -> QubitGate:
    """Compose the two loop holonomies; equals -i H0 for every valid (l_x, l_y)."""
    loop_i, loop_ii = hadamard_loops(l_x, l_y)
    return compose(holonomy(loop_ii), holonomy(loop_i))
