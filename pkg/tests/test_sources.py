# -*- coding: utf-8 -*-

'''
Tests for the wire field model, superposition and field maps
'''

import math
import unittest

import numpy as np

from nvmag.errors import FrameError, ValidationError
from nvmag.sources import (INFINITE, MODE_AREA_M2, SEGMENT, FieldMap,
                           WireSource, field_map, field_map_csv,
                           footprint_spread, superpose, wire_field,
                           wire_field_array)
from nvmag.spin import CRYSTAL, LAB, FieldVector


class TestSequenceFunctions(unittest.TestCase):

    def setUp(self):
        self.wire = WireSource(current_a=1e-3)
        self.probe = (0.0, 0.0, -27e-6)

    def test_filament(self):
        b = wire_field(self.wire, self.probe)
        assert b.frame == LAB
        self.assertAlmostEqual(b.magnitude(), 7.407e-6, delta=1e-9)
        b = wire_field(self.wire.with_current(0.03), self.probe)
        self.assertAlmostEqual(b.magnitude(), 0.2222e-3, delta=1e-7)
        # Below the wire the field points along +y
        assert np.allclose(b.vector / b.magnitude(), [0, 1, 0])
        b = wire_field(self.wire.with_current(-0.03), self.probe)
        assert b.by < 0

    def test_distance_scaling(self):
        near = wire_field(self.wire, (0, 10e-6, 0)).magnitude()
        far = wire_field(self.wire, (0, 20e-6, 0)).magnitude()
        self.assertAlmostEqual(near / far, 2.0)

    def test_on_axis(self):
        self.assertRaises(ValidationError, wire_field, self.wire, (0, 0, 0))
        thick = WireSource(radius_m=40e-6, current_a=1e-3)
        assert wire_field(thick, (0, 0, 0)).magnitude() == 0
        surface = wire_field(thick, (0, 0, -40e-6)).magnitude()
        inside = wire_field(thick, (0, 0, -20e-6)).magnitude()
        self.assertAlmostEqual(inside / surface, 0.5)
        outside = wire_field(thick, self.probe + np.array([0, 0, -33e-6]))
        self.assertAlmostEqual(outside.magnitude(),
                               2e-7 * 1e-3 / 60e-6, delta=1e-12)

    def test_segment(self):
        segment = WireSource(current_a=1e-3, length_m=10e-3)
        assert segment.model == SEGMENT
        assert self.wire.model == INFINITE
        b = wire_field(segment, self.probe)
        ref = wire_field(self.wire, self.probe)
        self.assertAlmostEqual(b.magnitude(), ref.magnitude(),
                               delta=0.005 * ref.magnitude())
        assert np.allclose(b.vector / b.magnitude(), [0, 1, 0], atol=1e-6)
        thick = WireSource(radius_m=40e-6, current_a=1e-3, length_m=10e-3)
        inside = wire_field(thick, (0, 0, -20e-6)).magnitude()
        ref = wire_field(WireSource(radius_m=40e-6, current_a=1e-3),
                         (0, 0, -20e-6)).magnitude()
        self.assertAlmostEqual(inside, ref, delta=0.01 * ref)
        self.assertRaises(ValidationError, wire_field, segment, (0, 0, 0))

    def test_wire_validation(self):
        self.assertRaises(ValidationError, WireSource, direction=(1, 1, 0))
        self.assertRaises(ValidationError, WireSource, radius_m=-1e-6)
        self.assertRaises(ValidationError, WireSource, length_m=0.0)
        self.assertRaises(ValidationError, WireSource,
                          current_a=float('nan'))

    def test_array(self):
        points = [(0, 0, -27e-6), (0, 27e-6, 0), (1e-3, 0, 27e-6)]
        out = wire_field_array(self.wire, points)
        assert out.shape == (3, 3)
        mags = np.linalg.norm(out, axis=1)
        assert np.allclose(mags, 7.407e-6, atol=1e-9)
        assert np.allclose(out[2], -out[0])

    def test_superpose(self):
        a = FieldVector(0, 8e-3, -3e-3, LAB)
        b = wire_field(self.wire.with_current(0.03), self.probe)
        total = superpose([a, b])
        assert total.frame == LAB
        self.assertAlmostEqual(total.by, 8e-3 + 0.2222e-3, delta=1e-7)
        self.assertRaises(FrameError, superpose,
                          [a, FieldVector(0, 0, 1e-3, CRYSTAL)])
        self.assertRaises(ValidationError, superpose, [])

    def test_field_map(self):
        ys = np.linspace(-50e-6, 50e-6, 5)
        zs = np.linspace(-50e-6, -10e-6, 3)
        fmap = field_map(self.wire, ys, zs)
        assert fmap.vectors.shape == (5, 3, 3)
        node = fmap.at(1, 2)
        ref = wire_field(self.wire, (0, ys[1], zs[2]))
        assert np.allclose(node.vector, ref.vector)
        assert fmap.magnitudes().shape == (5, 3)
        lines = field_map_csv(fmap).splitlines()
        assert lines[0] == 'y_m,z_m,bx_t,by_t,bz_t'
        assert len(lines) == 16
        self.assertRaises(ValidationError, FieldMap, ys[::-1], zs,
                          fmap.vectors)
        self.assertRaises(ValidationError, FieldMap, ys, zs,
                          fmap.vectors[:2])

    def test_footprint(self):
        spread = footprint_spread(self.wire, 0.0, -27e-6)
        self.assertAlmostEqual(spread.radius_m,
                               math.sqrt(MODE_AREA_M2 / math.pi))
        center = spread.center.magnitude()
        assert spread.min_t < center < spread.max_t
        assert spread.min_t < spread.mean_t < spread.max_t
        assert spread.std_t > 0
        self.assertRaises(ValidationError, footprint_spread, self.wire, 0.0,
                          -27e-6, 0.0)

    def test_azimuthal(self):
        points = [(0, 0, -27e-6), (2e-6, 15e-6, 31e-6), (-5e-6, -8e-6, 3e-6)]
        for direction in (1.0, 0.0, 0.0), (0.6, 0.8, 0.0):
            wire = WireSource(direction, current_a=0.03)
            out = wire_field_array(wire, points)
            for b in out:
                assert abs(b.dot(wire.direction)) <= \
                    1e-12 * np.linalg.norm(b)

    def test_surface_continuity(self):
        radius = 40e-6
        thick = WireSource(radius_m=radius, current_a=0.03)
        below = wire_field(thick, (0, 0, -radius * (1 - 1e-12)))
        above = wire_field(thick, (0, 0, -radius * (1 + 1e-12)))
        surface = wire_field(thick, (0, 0, -radius)).magnitude()
        self.assertAlmostEqual(surface, 2e-7 * 0.03 / radius,
                               delta=1e-12 * surface)
        self.assertAlmostEqual(below.magnitude() / surface, 1.0,
                               delta=1e-11)
        self.assertAlmostEqual(above.magnitude() / surface, 1.0,
                               delta=1e-11)

    def test_field_map_symmetry(self):
        ys = np.linspace(-50e-6, 50e-6, 11)
        zs = np.linspace(-50e-6, -5e-6, 10)
        fmap = field_map(self.wire, ys, zs)
        mirrored = fmap.vectors[::-1]
        assert np.allclose(fmap.magnitudes(), fmap.magnitudes()[::-1],
                           rtol=1e-9, atol=0)
        # Reflection y -> -y keeps by and reverses bz
        assert np.allclose(fmap.vectors[..., 1], mirrored[..., 1],
                           rtol=1e-9, atol=1e-20)
        assert np.allclose(fmap.vectors[..., 2], -mirrored[..., 2],
                           rtol=1e-9, atol=1e-20)

    def test_field_map_linear(self):
        ys = np.linspace(-50e-6, 50e-6, 5)
        zs = np.linspace(-50e-6, -10e-6, 3)
        one = field_map(self.wire, ys, zs).vectors
        two = field_map(self.wire.with_current(2e-3), ys, zs).vectors
        assert np.allclose(two, 2 * one, rtol=1e-12, atol=0)
        other = field_map(self.wire.with_current(-7e-3), ys, zs).vectors
        both = field_map(self.wire.with_current(-6e-3), ys, zs).vectors
        assert np.allclose(both, one + other, rtol=1e-12, atol=1e-24)
