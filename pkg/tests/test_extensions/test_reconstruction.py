# -*- coding: utf-8 -*-

'''
Tests for the reconstruction report section
'''

import math
import unittest

import numpy as np

from nvmag.errors import ValidationError
from nvmag.ext.reconstruction import read_difference, read_reconstruction
from nvmag.inversion import reconstruct_vector, vector_difference
from nvmag.report import ReportGenerator
from nvmag.spin import (CRYSTAL, LAB, FieldVector, SpinParams,
                        nv_axes_for_facet, resonance_lines)
from nvmag.util import xml_fromstring


class TestSequenceFunctions(unittest.TestCase):

    def setUp(self):
        geom = nv_axes_for_facet('(110)')
        params = SpinParams(e_hz=0.0)
        results = []
        for scale in 1.0, 1.1:
            b = FieldVector(2e-3, 8e-3, -5e-3).scaled(scale)
            pairs = resonance_lines(b, geom, params)[:3]
            results.append(reconstruct_vector(
                    pairs, geom, params, polarization_reference_deg=0.0))
        self.ref, self.result = results
        self.diff = vector_difference(self.result, self.ref, LAB)

        rg = ReportGenerator()
        rg.command('reconstruct')
        rg.load_extension('reconstruction')
        rg.reconstruction.settings(hint='toward', d_hz=params.d_hz)
        rec = rg.add_record()
        rec.id('p0_i000')
        rec.reconstruction.result(self.ref)
        rec = rg.add_record()
        rec.id('p0_i001')
        rec.reconstruction.result(self.result)
        rec.reconstruction.difference(self.diff, 'p0_i000')
        self.rg = rg

    def records(self):
        return xml_fromstring(self.rg.report_str()).findall('record')

    def test_settings(self):
        root = xml_fromstring(self.rg.report_str())
        settings = root.find('reconstruction_settings')
        assert settings.get('hint') == 'toward'
        assert float(settings.findtext('d_hz')) == 2.872e9
        assert self.rg.reconstruction.settings()['hint'] == 'toward'

    def test_read_back(self):
        ref, rec = self.records()
        back = read_reconstruction(rec)
        assert back.magnitude_t == self.result.magnitude_t
        assert back.b_crystal.frame == CRYSTAL
        assert np.array_equal(back.b_crystal.vector,
                              self.result.b_crystal.vector)
        assert np.array_equal(back.b_lab.vector, self.result.b_lab.vector)
        assert back.triangle_diameter_deg == \
            self.result.triangle_diameter_deg
        assert back.azimuth_deg == self.result.azimuth_deg
        assert back.magnitudes_t == self.result.magnitudes_t
        assert back.polar_angles_deg == self.result.polar_angles_deg
        assert back.residuals_t == self.result.residuals_t
        assert back.hint == 'toward'
        assert not back.low_confidence
        axes = rec.findall('reconstruction/axis')
        assert [a.get('index') for a in axes] == ['0', '1', '2']

    def test_difference(self):
        ref, rec = self.records()
        assert read_difference(ref) is None
        diff = read_difference(rec)
        assert diff.vector.frame == LAB
        self.assertAlmostEqual(diff.magnitude_t, 0.1 * math.sqrt(93) * 1e-3,
                               delta=2e-6)
        assert diff.magnitude_t == self.diff.magnitude_t
        assert rec.find('reconstruction/difference').get('reference') == \
            'p0_i000'

    def test_missing_section(self):
        rec = self.rg.add_record()
        rec.id('empty')
        empty = self.records()[-1]
        assert empty.find('reconstruction') is None
        self.assertRaises(ValidationError, read_reconstruction, empty)
        self.assertRaises(ValidationError, rec.reconstruction.result, 'x')
