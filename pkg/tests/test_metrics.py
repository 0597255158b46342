# -*- coding: utf-8 -*-

'''
Tests for the sensitivity estimates
'''

import math
import unittest

from nvmag.errors import ValidationError
from nvmag.metrics import (CONFOCAL_AREA_UM2, WAVEGUIDE_MODE_AREA_UM2,
                           SensitivityInputs, cw_sensitivity, ensemble_scale,
                           linewidth_from_t2star, nv_count)


class TestSequenceFunctions(unittest.TestCase):

    def test_sensitivity(self):
        eta = cw_sensitivity(SensitivityInputs(1e6, 0.02, 1e6))
        self.assertAlmostEqual(eta, 2.1877e-7, delta=1e-10)
        eta = cw_sensitivity(SensitivityInputs(10e6, 0.015, 2e8))
        self.assertAlmostEqual(eta, 206e-9, delta=1e-9)

    def test_scaling(self):
        base = cw_sensitivity(SensitivityInputs(1e6, 0.02, 1e6))
        self.assertAlmostEqual(
                cw_sensitivity(SensitivityInputs(1e6, 0.02, 4e6)) / base, 0.5,
                delta=1e-12)
        self.assertAlmostEqual(
                cw_sensitivity(SensitivityInputs(1e6, 0.04, 1e6)) / base, 0.5,
                delta=1e-12)
        self.assertAlmostEqual(
                cw_sensitivity(SensitivityInputs(3e6, 0.02, 1e6)) / base, 3.0,
                delta=1e-12)

    def test_inputs(self):
        self.assertRaises(ValidationError, SensitivityInputs, 0, 0.02, 1e6)
        self.assertRaises(ValidationError, SensitivityInputs, 1e6, 1.2, 1e6)
        self.assertRaises(ValidationError, SensitivityInputs, 1e6, 0.02, -1)
        self.assertRaises(ValidationError, SensitivityInputs, 1e6, 0.02,
                          float('inf'))

    def test_linewidth(self):
        self.assertAlmostEqual(linewidth_from_t2star(60.4e-9),
                               1 / (math.pi * 60.4e-9))
        self.assertAlmostEqual(linewidth_from_t2star(60.4e-9) / 1e6, 5.27,
                               delta=0.01)
        self.assertRaises(ValidationError, linewidth_from_t2star, 0)

    def test_sensitivity_dephasing(self):
        etas = [cw_sensitivity(SensitivityInputs(linewidth_from_t2star(t2),
                                                 0.02, 1e6))
                for t2 in (20e-9, 40e-9, 60.4e-9, 100e-9, 1e-6)]
        for a, b in zip(etas, etas[1:]):
            assert b < a
        self.assertAlmostEqual(linewidth_from_t2star(1 / math.pi), 1.0,
                               delta=1e-12)
        self.assertAlmostEqual(linewidth_from_t2star(120.8e-9) /
                               linewidth_from_t2star(60.4e-9), 0.5,
                               delta=1e-12)

    def test_ensemble(self):
        ratio = ensemble_scale()
        self.assertAlmostEqual(ratio,
                               WAVEGUIDE_MODE_AREA_UM2 / CONFOCAL_AREA_UM2)
        assert ratio > 1000
        self.assertAlmostEqual(ensemble_scale(2.0, 1.0, 2e13, 1e13), 4.0)
        self.assertRaises(ValidationError, ensemble_scale, 2.0, 1.0, 2e13)
        self.assertRaises(ValidationError, ensemble_scale, 0.0)

    def test_ensemble_dose(self):
        base = ensemble_scale(WAVEGUIDE_MODE_AREA_UM2, CONFOCAL_AREA_UM2)
        for dose, factor in (2e12, 1.0), (4e12, 2.0), (5e12, 2.5):
            ratio = ensemble_scale(WAVEGUIDE_MODE_AREA_UM2,
                                   CONFOCAL_AREA_UM2, dose, 2e12)
            self.assertAlmostEqual(ratio / base, factor, delta=1e-12)
        self.assertAlmostEqual(ensemble_scale(1.0, 1.0), 1.0, delta=1e-12)

    def test_nv_count(self):
        self.assertAlmostEqual(nv_count(100.0, 1e13, 0.01), 1e5,
                               delta=1e-3)
        self.assertRaises(ValidationError, nv_count, 100.0, 1e13, 0.0)
        self.assertRaises(ValidationError, nv_count, 100.0, 1e13, 1.5)
