# -*- coding: utf-8 -*-

'''
Tests for the vector reconstruction: magnitude and polar angle of a
resonance pair, azimuths, cone intersection, the full reconstruction and
the current response.
'''

import math
import unittest

import numpy as np

from nvmag.errors import (FrameError, IntersectionError, NumericalError,
                          ValidationError)
from nvmag.inversion import (LOWER, MIRROR, PRINTED, SEARCH,
                             TETRAHEDRAL_ANGLE_DEG, TOWARD, ConeConstraint,
                             azimuthal_alternates, azimuthal_angles,
                             b_magnitude, b_magnitude_sigma,
                             cone_from_measurement, crystal_to_lab,
                             current_field_vector,
                             field_from_projections, fit_current_response,
                             intersect_cones, lab_to_crystal, polar_angle,
                             polar_angle_sigma, reconstruct_vector,
                             vector_difference)
from nvmag.sources import WireSource, wire_field
from nvmag.spin import (CRYSTAL, LAB, CrystalGeometry, FieldVector,
                        ResonancePair, SpinParams, nv_axes_for_facet,
                        resonance_lines, resonance_pair_polar)
from nvmag.util import angle_deg, unit_vector

# Magnitude (mT) and polar angle (deg) of three orientations without and
# with 30 mA through the wire
FIELD_0MA = [(10.15, 25.4), (9.75, 74.36), (9.95, 85.61)]
FIELD_30MA = [(10.18, 24.6), (10.03, 75.69), (10.26, 86.15)]


def polar_pairs(rows, params):
    # Azimuth 45 deg around each axis, where strain does not bias the angle
    return [resonance_pair_polar(m * 1e-3, t, params, 45.0).tagged(i)
            for i, (m, t) in enumerate(rows)]


def exact_cones(u, geom, indices=(0, 1, 2)):
    cones = []
    for i in indices:
        c = float(np.dot(u, geom.axis(i)))
        axis = geom.axis(i) if c >= 0 else -geom.axis(i)
        cones.append(ConeConstraint(axis, math.degrees(math.acos(abs(c))),
                                    index=i))
    return cones


class TestSequenceFunctions(unittest.TestCase):

    def setUp(self):
        self.geom = nv_axes_for_facet('(110)')
        self.params = SpinParams()
        self.no_strain = SpinParams(e_hz=0.0)

    def test_magnitude_zero_field(self):
        d, e = self.params.d_hz, self.params.e_hz
        assert b_magnitude(ResonancePair(d - e, d + e), self.params) < 1e-9

    def test_magnitude_table(self):
        for rows in FIELD_0MA, FIELD_30MA:
            for pair, (m, _) in zip(polar_pairs(rows, self.params), rows):
                self.assertAlmostEqual(b_magnitude(pair, self.params) * 1e3,
                                       m, delta=0.02 * m)

    def test_magnitude_symmetric(self):
        pair = resonance_pair_polar(7e-3, 40.0, self.params)
        swapped = ResonancePair(pair.nu2_hz, pair.nu1_hz)
        self.assertEqual(b_magnitude(pair, self.params),
                         b_magnitude(swapped, self.params))

    def test_magnitude_inconsistent(self):
        self.assertRaises(NumericalError, b_magnitude,
                          ResonancePair(2.0e9, 2.01e9), self.params)

    def test_magnitude_sigma(self):
        pair = resonance_pair_polar(10e-3, 30.0, self.params)
        assert b_magnitude_sigma(pair, self.params) == 0
        noisy = ResonancePair(pair.nu1_hz, pair.nu2_hz, 1e5, 0.0)
        step = 1e3
        up = ResonancePair(pair.nu1_hz + step, pair.nu2_hz)
        down = ResonancePair(pair.nu1_hz - step, pair.nu2_hz)
        deriv = (b_magnitude(up, self.params) -
                 b_magnitude(down, self.params)) / (2 * step)
        self.assertAlmostEqual(b_magnitude_sigma(noisy, self.params),
                               abs(deriv) * 1e5,
                               delta=0.01 * abs(deriv) * 1e5)

    def test_polar_angle_axial(self):
        b = FieldVector.from_array(5e-3 * self.geom.axis(0))
        pair = resonance_lines(b, self.geom, self.no_strain)[0]
        self.assertAlmostEqual(polar_angle(pair, self.no_strain), 0.0,
                               delta=0.5)

    def test_polar_angle_table(self):
        for rows in FIELD_0MA, FIELD_30MA:
            for pair, (_, t) in zip(polar_pairs(rows, self.params), rows):
                self.assertAlmostEqual(polar_angle(pair, self.params), t,
                                       delta=1.0)

    def test_polar_angle_exact_without_strain(self):
        for theta in range(10, 85, 5):
            pair = resonance_pair_polar(10e-3, theta, self.no_strain)
            self.assertAlmostEqual(polar_angle(pair, self.no_strain), theta,
                                   delta=1e-6)
            self.assertAlmostEqual(
                    polar_angle(pair, self.no_strain, PRINTED),
                    polar_angle(pair, self.no_strain), delta=1e-9)

    def test_polar_angle_strain_bias(self):
        for theta in range(10, 61, 5):
            pair = resonance_pair_polar(10e-3, theta, self.params, 0.0)
            self.assertAlmostEqual(polar_angle(pair, self.params), theta,
                                   delta=0.25)

    def test_polar_angle_errors(self):
        d, e = self.params.d_hz, self.params.e_hz
        zero = ResonancePair(d - e, d + e)
        self.assertRaises(NumericalError, polar_angle, zero, self.params)
        pair = resonance_pair_polar(10e-3, 30.0, self.params)
        self.assertRaises(ValidationError, polar_angle, pair, self.params,
                          'quadratic')

    def test_polar_angle_sigma(self):
        pair = resonance_pair_polar(10e-3, 30.0, self.params)
        assert polar_angle_sigma(pair, self.params) == 0
        noisy = ResonancePair(pair.nu1_hz, pair.nu2_hz, 1e5, 1e5)
        sigma = polar_angle_sigma(noisy, self.params)
        assert 0 < sigma < 1
        inf = ResonancePair(pair.nu1_hz, pair.nu2_hz, float('inf'), 1e5)
        assert math.isinf(polar_angle_sigma(inf, self.params))

    def test_azimuth(self):
        phi1, phi2 = azimuthal_angles(2.62e-3, 0.726e-3)
        self.assertAlmostEqual(phi1, 33.0, delta=1.0)
        self.assertAlmostEqual(phi2, 77.0, delta=1.0)
        self.assertAlmostEqual(phi1 + phi2, TETRAHEDRAL_ANGLE_DEG)
        phi1, phi2 = azimuthal_angles(1e-3, 1e-3)
        self.assertAlmostEqual(phi1, 54.7356, places=3)
        self.assertAlmostEqual(phi2, 54.7356, places=3)
        phi1, phi2 = azimuthal_angles(0.0, 1e-3)
        self.assertAlmostEqual(phi1, 90.0)
        self.assertAlmostEqual(phi2, 19.47, places=2)
        phi1, phi2 = azimuthal_angles(1e-3, 0.0)
        self.assertAlmostEqual(phi2, 90.0)
        self.assertRaises(ValidationError, azimuthal_angles, 0.0, 0.0)
        alt = azimuthal_alternates(33.0)
        self.assertAlmostEqual(alt[0], -147.0)
        self.assertAlmostEqual(alt[0] + alt[1], TETRAHEDRAL_ANGLE_DEG)

    def test_azimuth_branch(self):
        # Opposite projections put the line outside [0, 90]
        phi1, phi2 = azimuthal_angles(1e-3, -1e-3)
        self.assertAlmostEqual(phi1, 144.735, delta=0.01)
        self.assertAlmostEqual(phi2, -35.265, delta=0.01)
        values = [-2e-3, -0.5e-3, 0.7e-3, 1.5e-3]
        for p2 in values:
            for p3 in values:
                phi1, phi2 = azimuthal_angles(p2, p3)
                assert 0 <= phi1 < 180
                assert TETRAHEDRAL_ANGLE_DEG - 180 < phi2 <= \
                    TETRAHEDRAL_ANGLE_DEG
                self.assertAlmostEqual(phi1 + phi2, TETRAHEDRAL_ANGLE_DEG)
                flipped = azimuthal_angles(-p2, -p3)
                self.assertAlmostEqual(flipped[0], phi1, places=9)

    def test_cone_from_measurement(self):
        n = self.geom.axis(1)
        cone = cone_from_measurement(n, 25.4)
        assert not cone.mirrored
        assert np.allclose(cone.axis, n)
        cone = cone_from_measurement(n, 74.36, index=1)
        assert cone.mirrored
        assert np.allclose(cone.axis, -n)
        assert cone.half_angle_deg == 74.36
        assert cone.index == 1
        assert not cone_from_measurement(n, 54.0).mirrored
        cone = cone_from_measurement(n, 120.0)
        assert cone.mirrored
        self.assertAlmostEqual(cone.half_angle_deg, 60.0)
        flipped = cone.flipped()
        assert not flipped.mirrored
        assert np.allclose(flipped.axis, n)
        self.assertRaises(ValidationError, cone_from_measurement, n, 200.0)

    def test_cone_constraint(self):
        n = self.geom.axis(0)
        self.assertRaises(ValidationError, ConeConstraint, 2 * n, 30.0)
        self.assertRaises(ValidationError, ConeConstraint, n, 95.0)
        self.assertRaises(ValidationError, ConeConstraint, n, 30.0, -1.0)

    def test_intersect_exact(self):
        u = unit_vector(-self.geom.axis(3) + np.array([0.05, 0.02, 0.0]))
        inter = intersect_cones(exact_cones(u, self.geom))
        assert inter.triangle_diameter_deg < 1e-6
        assert angle_deg(inter.direction, u) < 1e-6
        for p in inter.triangle:
            self.assertAlmostEqual(float(np.linalg.norm(p)), 1.0)

    def test_intersect_perturbed(self):
        u = unit_vector(-self.geom.axis(3) + np.array([0.05, 0.02, 0.0]))
        diameters = []
        for delta in (0.0, 1.0, 2.0):
            cones = exact_cones(u, self.geom)
            c = cones[0]
            cones[0] = ConeConstraint(c.axis, c.half_angle_deg + delta,
                                      index=c.index)
            inter = intersect_cones(cones)
            diameters.append(inter.triangle_diameter_deg)
            if delta == 1.0:
                assert angle_deg(inter.direction, u) < 2.0
        assert diameters[0] < diameters[1] < diameters[2]

    def test_intersect_disjoint(self):
        cones = [ConeConstraint(self.geom.axis(i), 10.0, index=i)
                 for i in range(3)]
        try:
            intersect_cones(cones)
        except IntersectionError as e:
            assert e.pair == (0, 1)
            self.assertAlmostEqual(e.deficit_deg,
                                   TETRAHEDRAL_ANGLE_DEG - 20.0)
        else:
            assert False
        self.assertRaises(ValidationError, intersect_cones, cones[:2])

    def test_intersect_table(self):
        cones = [cone_from_measurement(self.geom.axis(i), t, index=i)
                 for i, (_, t) in enumerate(FIELD_0MA)]
        assert [c.mirrored for c in cones] == [False, True, True]
        inter = intersect_cones(cones)
        assert inter.triangle_diameter_deg < 10.0
        tolerance = math.radians(inter.triangle_diameter_deg)
        magnitude = np.mean([m for m, _ in FIELD_0MA])
        for cone, (m, t) in zip(cones, FIELD_0MA):
            c = float(inter.direction.dot(cone.axis))
            assert abs(c - math.cos(math.radians(t))) <= tolerance
            self.assertAlmostEqual(magnitude * c,
                                   m * math.cos(math.radians(t)), delta=0.5)

    def test_reconstruct_table(self):
        b = {}
        for name, rows in ('0', FIELD_0MA), ('30', FIELD_30MA):
            pairs = polar_pairs(rows, self.params)
            result = reconstruct_vector(pairs, self.geom, self.params,
                                        TOWARD, selection=MIRROR)
            mean = np.mean([m for m, _ in rows]) * 1e-3
            self.assertAlmostEqual(result.magnitude_t, mean, delta=1e-7)
            assert [c.mirrored for c in result.cones] == [False, True, True]
            assert result.b_crystal.bz < 0
            assert result.triangle_diameter_deg < 10.0
            assert not result.low_confidence
            assert result.hint == TOWARD
            assert len(result.residuals_t) == 3
            self.assertAlmostEqual(result.azimuth_deg[0] +
                                   result.azimuth_deg[1],
                                   TETRAHEDRAL_ANGLE_DEG)
            b[name] = result
        self.assertAlmostEqual(b['0'].magnitude_t, 9.95e-3, delta=0.2e-3)
        self.assertAlmostEqual(b['30'].magnitude_t, 10.16e-3, delta=0.01e-3)
        self.assertAlmostEqual(b['0'].azimuth_deg[0], 33.0, delta=1.0)

        diff = vector_difference(b['30'], b['0'])
        self.assertAlmostEqual(diff.magnitude_t, 0.21e-3, delta=0.16e-3)
        assert diff.sigma_t > 0
        # Linear solve of the projection differences on the signed axes
        axes = [self.geom.axis(0), -self.geom.axis(1), -self.geom.axis(2)]
        oracle = field_from_projections(axes, [0.06e-3, -0.14e-3,
                                               -0.049e-3])
        self.assertAlmostEqual(diff.magnitude_t, oracle.magnitude(),
                               delta=0.05e-3)

    def test_reconstruct_search(self):
        pairs = polar_pairs(FIELD_0MA, self.params)
        mirror = reconstruct_vector(pairs, self.geom, self.params,
                                    selection=MIRROR)
        search = reconstruct_vector(pairs, self.geom, self.params,
                                    selection=SEARCH)
        assert search.triangle_diameter_deg <= \
            mirror.triangle_diameter_deg + 1e-9
        assert search.b_crystal.bz <= 0
        self.assertAlmostEqual(search.magnitude_t, mirror.magnitude_t)

    def test_reconstruct_exact(self):
        fields = [(2e-3, 8e-3, -5e-3), (-3e-3, 4e-3, -9e-3),
                  (6e-3, -1e-3, -4e-3), (1e-3, -7e-3, -6e-3)]
        for vec in fields:
            b = FieldVector(*vec)
            pairs = resonance_lines(b, self.geom, self.no_strain)[:3]
            result = reconstruct_vector(pairs, self.geom, self.no_strain)
            self.assertAlmostEqual(result.magnitude_t, b.magnitude(),
                                   delta=1e-9)
            assert angle_deg(result.b_crystal.vector, b.vector) < 1e-3
            assert result.triangle_diameter_deg < 1e-3
            assert np.allclose(result.residuals_t, 0, atol=1e-8)
            # B and -B give the same lines, the hint picks the hemisphere
            away = reconstruct_vector(pairs, self.geom, self.no_strain,
                                      hint='away')
            assert angle_deg(away.b_crystal.vector, -b.vector) < 1e-3

    def test_reconstruct_errors(self):
        pairs = polar_pairs(FIELD_0MA, self.params)
        self.assertRaises(ValidationError, reconstruct_vector, pairs[:2],
                          self.geom, self.params)
        same = [pairs[0], pairs[1].tagged(0), pairs[2]]
        self.assertRaises(ValidationError, reconstruct_vector, same,
                          self.geom, self.params)
        untagged = [pairs[0], pairs[1], ResonancePair(pairs[2].nu1_hz,
                                                      pairs[2].nu2_hz)]
        self.assertRaises(ValidationError, reconstruct_vector, untagged,
                          self.geom, self.params)
        self.assertRaises(ValidationError, reconstruct_vector, pairs,
                          self.geom, self.params, 'sideways')
        self.assertRaises(ValidationError, reconstruct_vector, pairs,
                          self.geom, self.params, selection='closest')
        narrow = [resonance_pair_polar(10e-3, 5.0, self.no_strain).tagged(i)
                  for i in range(3)]
        self.assertRaises(IntersectionError, reconstruct_vector, narrow,
                          self.geom, self.no_strain)
        d, e = self.params.d_hz, self.params.e_hz
        zero = [ResonancePair(d - e, d + e).tagged(i) for i in range(3)]
        self.assertRaises(NumericalError, reconstruct_vector, zero,
                          self.geom, self.params)

    def test_reconstruct_infinite_sigmas(self):
        # A rank-deficient fit reports infinite frequency uncertainties
        inf = float('inf')
        pairs = [ResonancePair(p.nu1_hz, p.nu2_hz, inf, inf, p.axis_index)
                 for p in polar_pairs(FIELD_0MA, self.params)]
        result = reconstruct_vector(pairs, self.geom, self.params,
                                    selection=MIRROR)
        mags = [b_magnitude(p, self.params) for p in pairs]
        self.assertAlmostEqual(result.magnitude_t, np.mean(mags),
                               delta=1e-12)
        assert math.isfinite(result.magnitude_sigma_t)
        assert math.isinf(result.direction_sigma_deg)
        exact = reconstruct_vector(polar_pairs(FIELD_0MA, self.params),
                                   self.geom, self.params, selection=MIRROR)
        assert angle_deg(result.b_crystal.vector,
                         exact.b_crystal.vector) < 1e-9

    def test_reconstruct_lab_frame(self):
        pairs = polar_pairs(FIELD_0MA, self.params)
        result = reconstruct_vector(pairs, self.geom, self.params)
        assert result.b_lab is None
        self.assertRaises(FrameError, result.field, LAB)
        assert result.field(CRYSTAL) is result.b_crystal
        result = reconstruct_vector(pairs, self.geom, self.params,
                                    polarization_reference_deg=0.0)
        assert result.b_lab.frame == LAB
        assert np.allclose(result.b_lab.vector, result.b_crystal.vector)

    def test_vector_difference(self):
        pairs = polar_pairs(FIELD_0MA, self.params)
        result = reconstruct_vector(pairs, self.geom, self.params)
        diff = vector_difference(result, result)
        assert diff.magnitude_t == 0
        assert diff.vector.frame == CRYSTAL
        self.assertRaises(FrameError, vector_difference, result, result, LAB)

    def test_current_response(self):
        currents = [0.0, 0.03, 0.06, 0.09]
        for slope, field in (-68e6, 2.4286e-3), (74e6, 2.6429e-3):
            nu = [2.8e9 + slope * i for i in currents]
            resp = fit_current_response(currents, nu, self.params)
            self.assertAlmostEqual(resp.slope_hz_per_a, slope, delta=1e-3)
            self.assertAlmostEqual(resp.field_per_current_t_per_a, field,
                                   delta=1e-7)
            assert np.allclose(resp.residuals_hz, 0, atol=1e-3)
            assert resp.slope_sigma_hz_per_a < 1e-3
        noisy = fit_current_response(currents, [2.8e9, 2.798e9, 2.7961e9,
                                                2.7939e9], self.params)
        assert noisy.slope_sigma_hz_per_a > 0
        self.assertRaises(ValidationError, fit_current_response,
                          [0.03, 0.03], [2.8e9, 2.79e9], self.params)
        self.assertRaises(ValidationError, fit_current_response, [0.03],
                          [2.8e9], self.params)
        self.assertRaises(ValidationError, fit_current_response,
                          [0.0, 0.03], [2.8e9], self.params)

    def test_current_field_vector(self):
        w = np.array([0.0, 7.4e-3, -1e-3])
        currents = [0.0, 0.03, 0.06]
        lower, upper = [], []
        for i in range(3):
            proj = float(w.dot(self.geom.axis(i)))
            g = self.params.gamma_hz_per_t
            lower.append(fit_current_response(
                    currents, [2.8e9 - g * proj * c for c in currents],
                    self.params))
            upper.append(fit_current_response(
                    currents, [2.9e9 + g * proj * c for c in currents],
                    self.params))
        v = current_field_vector(lower, self.geom, [0, 1, 2], self.params,
                                 LOWER)
        assert np.allclose(v.vector, w, atol=1e-9)
        v = current_field_vector(upper, self.geom, [0, 1, 2], self.params,
                                 'upper')
        assert np.allclose(v.vector, w, atol=1e-9)
        self.assertRaises(ValidationError, current_field_vector, lower,
                          self.geom, [0, 1, 2], self.params, 'middle')

    def test_field_from_projections(self):
        b = np.array([1e-3, -2e-3, 3e-3])
        axes = [self.geom.axis(i) for i in (0, 1, 2)]
        v = field_from_projections(axes, [b.dot(a) for a in axes])
        assert np.allclose(v.vector, b)
        self.assertRaises(NumericalError, field_from_projections,
                          [axes[0], axes[0], axes[1]], [0, 0, 0])
        self.assertRaises(ValidationError, field_from_projections,
                          axes[:2], [0, 0])

    def test_frames(self):
        v = FieldVector(1e-3, -2e-3, 5e-3)
        lab = crystal_to_lab(v, self.geom)
        assert lab.frame == LAB
        assert np.allclose(lab.vector, v.vector, atol=1e-15)
        rotated = crystal_to_lab(v, self.geom, 30.0)
        self.assertAlmostEqual(rotated.magnitude(), v.magnitude(), places=12)
        back = lab_to_crystal(rotated, self.geom, 30.0)
        assert np.allclose(back.vector, v.vector, atol=1e-15)
        x = crystal_to_lab(FieldVector(1.0, 0, 0), self.geom, 90.0)
        assert np.allclose(x.vector, [0, 1, 0], atol=1e-12)
        in_plane = FieldVector.from_array(self.geom.axis(1))
        self.assertAlmostEqual(crystal_to_lab(in_plane, self.geom).bz, 0.0,
                               delta=1e-9)
        self.assertRaises(FrameError, crystal_to_lab, lab, self.geom)
        self.assertRaises(FrameError, lab_to_crystal, v, self.geom)
        other = CrystalGeometry(self.geom.axes, self.geom.labels, '(100)')
        self.assertRaises(ValidationError, crystal_to_lab, v, other)

    def test_wire_field_lab_frame(self):
        # Beside and below the wire its field points into the facet
        truth = wire_field(WireSource(current_a=1.0), (0.0, -20e-6, -10e-6))
        b = lab_to_crystal(truth, self.geom)
        pairs = resonance_lines(b, self.geom, self.no_strain)[:3]
        result = reconstruct_vector(pairs, self.geom, self.no_strain,
                                    polarization_reference_deg=0.0)
        lab = result.b_lab
        assert lab.frame == LAB
        assert lab.bz < 0
        assert abs(lab.bz) > abs(lab.by) > abs(lab.bx)
        assert angle_deg(lab.vector, truth.vector) < 1e-3
        self.assertAlmostEqual(lab.magnitude(), truth.magnitude(),
                               delta=1e-9)
