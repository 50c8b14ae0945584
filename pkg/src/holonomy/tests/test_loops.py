import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import quad

from holonomy.error_models import ErrorProfile
from holonomy.exceptions import DomainError
from holonomy.loops import (
    ControlPlane,
    RectLoop,
    hadamard_dx,
    hadamard_dy,
    hadamard_gate,
    hadamard_loops,
    holonomy,
    loop_for_angle,
    loop_height,
    side_length,
    surface_sigma,
    surface_sigma_quadrature,
)
from holonomy.su2 import PauliAxis, QubitGate, axis_rotation, hadamard_target


class RectLoopTests(SimpleTestCase):
    def test_side_length(self):
        self.assertEqual(side_length(RectLoop(ControlPlane.XR1, 0.0, 1.0, 0.2)), 1.0)
        self.assertEqual(side_length(RectLoop(ControlPlane.XR1, -0.5, 0.5, 0.2)), 1.0)
        self.assertEqual(side_length(RectLoop(ControlPlane.YR1, 0.0, math.pi / 2, 0.2)), math.pi / 2)

    def test_invalid_bounds_are_rejected(self):
        with self.assertRaises(DomainError):
            RectLoop(ControlPlane.XR1, 1.0, 1.0, 0.2)
        with self.assertRaises(DomainError):
            RectLoop(ControlPlane.XR1, 0.0, 1.0, 0.0)
        with self.assertRaises(DomainError):
            RectLoop(ControlPlane.YR1, 0.0, math.inf, 0.3)

    def test_corners_are_closed_and_counterclockwise(self):
        corners = RectLoop(ControlPlane.XR1, 0.0, 2.0, 0.5).corners()
        self.assertEqual(corners, ((0.0, 0.0), (2.0, 0.0), (2.0, 0.5), (0.0, 0.5), (0.0, 0.0)))


class SurfaceSigmaTests(SimpleTestCase):
    def test_hadamard_heights(self):
        self.assertAlmostEqual(hadamard_dx(1.0), 0.7694854, places=6)
        self.assertAlmostEqual(hadamard_dx(math.pi / 2), math.log(2.0) / 2, delta=1e-15)
        self.assertAlmostEqual(hadamard_dy(math.pi / 2), math.log(2.0) / 2, delta=1e-15)
        self.assertAlmostEqual(hadamard_dy(1.0), 0.4721079, places=6)

    def test_wide_loops_flatten(self):
        self.assertLess(hadamard_dy(1e12), 1e-12)
        self.assertGreater(hadamard_dy(1e12), 0.0)

    def test_singular_widths_are_rejected(self):
        for l_x in (math.pi / 4, 0.7, -1.0, math.nan):
            with self.assertRaises(DomainError):
                hadamard_dx(l_x)
        for l_y in (0.0, -2.0):
            with self.assertRaises(DomainError):
                hadamard_dy(l_y)

    def test_domain_error_names_the_constraint(self):
        with self.assertRaisesMessage(DomainError, "l_x must exceed pi/4"):
            hadamard_dx(0.7)

    def test_inversion_across_log_grid(self):
        for l_x in np.geomspace(math.pi / 4 + 1e-6, 1e6, 50):
            loop = RectLoop(ControlPlane.XR1, 0.0, l_x, hadamard_dx(l_x))
            self.assertAlmostEqual(surface_sigma(loop), math.pi / 4, delta=1e-12)
        for l_y in np.geomspace(1e-3, 1e6, 50):
            loop = RectLoop(ControlPlane.YR1, 0.0, l_y, hadamard_dy(l_y))
            self.assertAlmostEqual(surface_sigma(loop), math.pi / 2, delta=1e-12)

    def test_zero_height_limit(self):
        self.assertLess(surface_sigma(RectLoop(ControlPlane.XR1, 0.0, 1.0, 1e-14)), 1e-13)

    def test_translation_invariance(self):
        loop = RectLoop(ControlPlane.XR1, 0.0, 1.0, 0.4)
        for shift in (-5.0, 0.25, 7.0, 1e3):
            self.assertAlmostEqual(surface_sigma(loop.translated(shift)), surface_sigma(loop), delta=1e-12)

    def test_monotone_in_height_and_length(self):
        for plane in ControlPlane:
            heights = [surface_sigma(RectLoop(plane, 0.0, 1.0, d)) for d in (0.1, 0.2, 0.4, 0.8)]
            lengths = [surface_sigma(RectLoop(plane, 0.0, l, 0.3)) for l in (0.5, 1.0, 2.0, 4.0)]
            self.assertEqual(heights, sorted(heights))
            self.assertEqual(len(set(heights)), 4)
            self.assertEqual(lengths, sorted(lengths))
            self.assertEqual(len(set(lengths)), 4)

    def test_two_dimensional_quadrature_cross_check(self):
        loop = RectLoop(ControlPlane.YR1, 0.0, math.pi / 2, math.log(2.0) / 2)
        column, _ = quad(lambda r1: 2.0 * math.exp(2.0 * r1), 0.0, loop.d)
        self.assertAlmostEqual(loop.side_length * column, math.pi / 2, delta=1e-12)
        self.assertAlmostEqual(surface_sigma(loop), math.pi / 2, delta=1e-12)


class QuadratureTests(SimpleTestCase):
    def setUp(self):
        self.loop = RectLoop(ControlPlane.XR1, 0.0, 1.0, hadamard_dx(1.0))

    def test_unperturbed_quadrature(self):
        self.assertAlmostEqual(surface_sigma_quadrature(self.loop, grid=4096), math.pi / 4, delta=1e-8)

    def test_zero_profile_matches_unperturbed(self):
        profile = ErrorProfile(np.zeros(4096), 0.0, 1.0)
        self.assertAlmostEqual(
            surface_sigma_quadrature(self.loop, profile), surface_sigma_quadrature(self.loop), delta=1e-12
        )

    def test_constant_profile_shifts_top_edge(self):
        eps = 0.03
        profile = ErrorProfile(np.full(4096, eps), 0.0, 1.0)
        expected = -math.expm1(-2.0 * (self.loop.d + eps))
        self.assertAlmostEqual(surface_sigma_quadrature(self.loop, profile), expected, delta=1e-12)

    def test_convergence_order_against_adaptive_quadrature(self):
        def top_edge(s):
            return 0.2 * s**2

        reference, _ = quad(lambda s: -math.expm1(-2.0 * (self.loop.d + top_edge(s))), 0.0, 1.0, epsabs=1e-14)
        grids = [33, 65, 129, 257]
        errors = [
            abs(surface_sigma_quadrature(self.loop, ErrorProfile.from_function(top_edge, 0.0, 1.0, n), n) - reference)
            for n in grids
        ]
        orders = [math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1)]
        for order in orders:
            self.assertGreater(order, 1.9)

    def test_grid_too_small(self):
        with self.assertRaises(DomainError):
            surface_sigma_quadrature(self.loop, grid=1)

    def test_profile_on_other_interval_is_rejected(self):
        with self.assertRaises(DomainError):
            surface_sigma_quadrature(self.loop, ErrorProfile(np.zeros(16), 1.0, 2.0))


class HadamardConstructionTests(SimpleTestCase):
    def test_loops_enclose_hadamard_angles(self):
        for a_x, a_y in ((0.0, 0.0), (-5.0, 7.0)):
            loop_i, loop_ii = hadamard_loops(1.0, 1.0, a_x, a_y)
            self.assertIs(loop_i.plane, ControlPlane.XR1)
            self.assertIs(loop_ii.plane, ControlPlane.YR1)
            self.assertAlmostEqual(surface_sigma(loop_i), math.pi / 4, delta=1e-12)
            self.assertAlmostEqual(surface_sigma(loop_ii), math.pi / 2, delta=1e-12)

    def test_width_at_pi_over_four_is_rejected(self):
        with self.assertRaises(DomainError):
            hadamard_loops(math.pi / 4, 1.0)

    def test_loop_holonomies(self):
        loop_i, loop_ii = hadamard_loops(1.0, 1.0)
        self.assertLess(holonomy(loop_i).distance(axis_rotation(PauliAxis.Y, math.pi / 4)), 1e-12)
        expected = QubitGate(np.array([[0, -1j], [-1j, 0]]))
        self.assertLess(holonomy(loop_ii).distance(expected), 1e-12)

    def test_degenerate_loop_is_identity(self):
        loop = RectLoop(ControlPlane.YR1, 0.0, 1.0, 1e-15)
        self.assertTrue(holonomy(loop).allclose(QubitGate.identity()))

    def test_hadamard_gate_independent_of_widths(self):
        target = hadamard_target().scaled(-1j)
        self.assertLess(hadamard_gate(1.0, 1.0).distance(target), 1e-12)
        self.assertLess(hadamard_gate(2.0, 0.5).distance(target), 1e-12)
        self.assertLess(hadamard_gate(1.0, 1.0).scaled(1j).distance(hadamard_target()), 1e-12)
        rng = np.random.default_rng(11)
        for _ in range(20):
            l_x = rng.uniform(math.pi / 4 + 1e-3, 50.0)
            l_y = rng.uniform(1e-2, 50.0)
            self.assertLess(hadamard_gate(l_x, l_y).distance(target), 1e-12)


class LoopForAngleTests(SimpleTestCase):
    def test_round_trip_angles(self):
        for plane in ControlPlane:
            for sigma in (0.1, 0.5, 0.9):
                loop = loop_for_angle(plane, sigma, 1.0, a=2.0)
                self.assertAlmostEqual(surface_sigma(loop), sigma, delta=1e-13)
                self.assertTrue(holonomy(loop).allclose(axis_rotation(plane.rotation_axis, sigma)))

    def test_unreachable_angle_in_x_plane(self):
        with self.assertRaises(DomainError):
            loop_height(ControlPlane.XR1, 1.0, 1.0)
        self.assertGreater(loop_height(ControlPlane.YR1, 10.0, 1.0), 0.0)
