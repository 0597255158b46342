# -*- coding: utf-8 -*-

'''
Tests for the run configuration and its XML file format
'''

import os
import tempfile
import unittest

from nvmag.config import RunConfig, load_config
from nvmag.errors import ValidationError
from nvmag.inversion import MIRROR, SEARCH, TOWARD
from nvmag.spin import LAB


class TestSequenceFunctions(unittest.TestCase):

    def setUp(self):
        self.cfg = RunConfig()
        self.files = []

    def tearDown(self):
        for filename in self.files:
            os.remove(filename)

    def write(self, text):
        fh, filename = tempfile.mkstemp('.xml')
        with os.fdopen(fh, 'w') as f:
            f.write(text)
        self.files.append(filename)
        return filename

    def test_defaults(self):
        assert self.cfg.noise()['seed'] == 0
        assert self.cfg.reconstruction()['hint'] == TOWARD
        assert self.cfg.reconstruction()['selection'] == SEARCH
        order = self.cfg.reconstruction()['axis_order']
        assert order == [3, 1, 0]
        # Only one of the two in-plane axes
        geom = self.cfg.crystal_geometry()
        assert len(set(order) & set(geom.in_plane())) == 1
        assert self.cfg.probe() == []
        assert self.cfg.current() == []
        grid = self.cfg.scan_grid()
        assert len(grid) == 1501
        self.assertAlmostEqual(grid[-1], 3.25e9)
        self.assertAlmostEqual(self.cfg.spin_params().d_hz, 2.872e9)

    def test_set_section(self):
        assert self.cfg.noise(seed=7)['seed'] == 7
        assert self.cfg.noise()['seed'] == 7
        assert self.cfg.noise()['enabled']
        self.cfg.noise({'enabled': 'false'})
        assert not self.cfg.noise()['enabled']
        assert self.cfg.noise()['seed'] == 7
        line = self.cfg.line(contrast='0.03 0.02 0.03 0.02')
        assert line['contrast'] == [0.03, 0.02, 0.03, 0.02]
        assert len(self.cfg.line_shape().contrast) == 4
        order = self.cfg.reconstruction(axis_order='3 1 0',
                                        selection=MIRROR)
        assert order['axis_order'] == [3, 1, 0]
        assert order['selection'] == MIRROR

    def test_invalid_values(self):
        self.assertRaises(ValidationError, self.cfg.noise, seed='abc')
        self.assertRaises(ValidationError, self.cfg.noise, seed=-1)
        self.assertRaises(ValidationError, self.cfg.noise, enabled='maybe')
        self.assertRaises(ValidationError, self.cfg.noise, colour='red')
        self.assertRaises(ValidationError, self.cfg.scan, stop_hz=1e9)
        self.assertRaises(ValidationError, self.cfg.line, fwhm_hz=-1)
        self.assertRaises(ValidationError, self.cfg.line, contrast='0.1 0.2')
        self.assertRaises(ValidationError, self.cfg.fit, weights='poisson')
        self.assertRaises(ValidationError, self.cfg.wire, model='segment')
        self.assertRaises(ValidationError, self.cfg.reconstruction,
                          axis_order='0 0 1')
        self.assertRaises(ValidationError, self.cfg.reconstruction,
                          hint='up')
        self.assertRaises(ValidationError, self.cfg.spin, e_hz=3e9)
        self.assertRaises(ValidationError, self.cfg.geometry, facet='(100)')
        # Failed updates leave the section untouched
        assert self.cfg.noise()['seed'] == 0
        assert self.cfg.scan()['stop_hz'] == 3.25e9

    def test_probes_and_currents(self):
        self.cfg.probe(name='p0', y_m=0.0, z_m=-27e-6)
        self.cfg.probe({'name': 'p1', 'y_m': '10e-6', 'z_m': '-27e-6'})
        probes = self.cfg.probe()
        assert [p['name'] for p in probes] == ['p0', 'p1']
        assert probes[1]['y_m'] == 10e-6
        assert probes[0]['x_m'] == 0.0
        self.assertRaises(ValidationError, self.cfg.probe, name='p0',
                          y_m=0.0, z_m=0.0)
        self.assertRaises(ValidationError, self.cfg.probe, name='p2')
        assert len(self.cfg.probe({'name': 'p9', 'y_m': 0, 'z_m': 0},
                                  replace=True)) == 1
        self.cfg.current([{'value_a': 0}, {'value_a': 0.03}])
        assert [c['value_a'] for c in self.cfg.current()] == [0.0, 0.03]
        self.cfg.current(value_a=0.09, replace=True)
        assert len(self.cfg.current()) == 1

    def test_derived_objects(self):
        self.cfg.bias(by_t=8e-3, bz_t=-3e-3)
        bias = self.cfg.bias_field()
        assert bias.frame == LAB
        assert bias.by == 8e-3
        self.cfg.wire(radius_m=10e-6, z_m=1e-6)
        src = self.cfg.wire_source(0.03)
        assert src.current_a == 0.03
        assert src.radius_m == 10e-6
        self.cfg.wire(model='segment', length_m=5e-3)
        assert self.cfg.wire_source().length_m == 5e-3
        assert self.cfg.crystal_geometry().facet == '(110)'

    def test_load_config(self):
        filename = self.write(
            '<nvmag>\n'
            '  <!-- campaign -->\n'
            '  <noise seed="7" integration_s="2"/>\n'
            '  <bias by_t="8e-3" bz_t="-3e-3" frame="lab"/>\n'
            '  <probe name="p0" y_m="0" z_m="-27e-6"/>\n'
            '  <current value_a="0"/>\n'
            '  <current value_a="0.03"/>\n'
            '  <reconstruction axis_order="3 1 0" hint="away"/>\n'
            '</nvmag>\n')
        cfg = load_config(filename)
        assert cfg.noise()['seed'] == 7
        assert cfg.noise()['integration_s'] == 2.0
        assert cfg.bias()['bz_t'] == -3e-3
        assert len(cfg.probe()) == 1
        assert len(cfg.current()) == 2
        assert cfg.reconstruction()['hint'] == 'away'
        assert cfg.reconstruction()['axis_order'] == [3, 1, 0]

    def test_load_config_errors(self):
        cases = (
            '<config><noise seed="7"/></config>',
            '<nvmag><colour value="red"/></nvmag>',
            '<nvmag><noise seed="7"/><noise seed="8"/></nvmag>',
            '<nvmag><noise seed="7" colour="red"/></nvmag>',
            '<nvmag><noise seed="7"></nvmag>',
            '<nvmag><probe name="p0"/></nvmag>',
        )
        for text in cases:
            self.assertRaises(ValidationError, load_config, self.write(text))
