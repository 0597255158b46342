# -*- coding: utf-8 -*-
'''
    nvmag.config
    ~~~~~~~~~~~~

    Run configuration of the command line. Each section is a dictionary
    that can be read and updated through a method of the same name, in the
    same way as every other get-or-set field in the package::

        >>> cfg = RunConfig()
        >>> cfg.noise(seed=7)
        {'seed': 7, 'integration_s': 1.0, 'enabled': True}
        >>> cfg.probe(name='p0', y_m=0.0, z_m=-27e-6)

    A configuration file is an XML document with root ``<nvmag>``, one
    element per section and the values as attributes. ``probe`` and
    ``current`` may be repeated::

        <nvmag>
          <noise seed="7"/>
          <bias by_t="8e-3" bz_t="-3e-3" frame="lab"/>
          <probe name="p0" y_m="0" z_m="-27e-6"/>
          <current value_a="0"/>
          <current value_a="0.03"/>
        </nvmag>

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import lxml.etree
import numpy as np

from nvmag.errors import ValidationError
from nvmag.fit import SHOT_NOISE, UNIFORM
from nvmag.inversion import (CUBIC, FORMULAS, HINTS, SEARCH, SELECTIONS,
                             TOWARD)
from nvmag.metrics import CONFOCAL_AREA_UM2, WAVEGUIDE_MODE_AREA_UM2
from nvmag.metrics import linewidth_from_t2star
from nvmag.sources import INFINITE, SEGMENT, WireSource
from nvmag.spin import (D_HZ, E_HZ, FRAMES, GAMMA_HZ_PER_T,
                        FieldVector, LineShapeParams, SpinParams,
                        nv_axes_for_facet)
from nvmag.util import ensure_format, parse_bool, xml_parse

CONFIG_E = 'config'
FIT_E = 'fit'


def _optional_float(value):
    if value is None or value == '':
        return None
    return float(value)


def _float_list(value):
    if isinstance(value, str):
        value = value.split()
    return [float(v) for v in np.atleast_1d(value)]


def _int_list(value):
    if isinstance(value, str):
        value = value.split()
    return [int(v) for v in value]


# section -> (converters, required keys, allowed values, defaults)
_SECTIONS = {
    'spin': ({'d_hz': float, 'e_hz': float, 'gamma_hz_per_t': float},
             set(), {},
             {'d_hz': D_HZ, 'e_hz': E_HZ, 'gamma_hz_per_t': GAMMA_HZ_PER_T}),
    'geometry': ({'facet': str}, set(), {'facet': set(['(110)'])},
                 {'facet': '(110)'}),
    'line': ({'fwhm_hz': float, 'contrast': _float_list,
              'baseline_counts_per_s': float},
             set(), {},
             {'fwhm_hz': linewidth_from_t2star(60.4e-9), 'contrast': [0.03],
              'baseline_counts_per_s': 1e5}),
    'scan': ({'start_hz': float, 'stop_hz': float, 'step_hz': float},
             set(), {},
             {'start_hz': 2.5e9, 'stop_hz': 3.25e9, 'step_hz': 0.5e6}),
    'noise': ({'seed': int, 'integration_s': float, 'enabled': parse_bool},
              set(), {}, {'seed': 0, 'integration_s': 1.0, 'enabled': True}),
    'bias': ({'bx_t': float, 'by_t': float, 'bz_t': float, 'frame': str},
             set(), {'frame': set(FRAMES)},
             {'bx_t': 0.0, 'by_t': 0.0, 'bz_t': 0.0, 'frame': 'lab'}),
    'wire': ({'model': str, 'radius_m': float, 'y_m': float, 'z_m': float,
              'length_m': _optional_float, 'segments': int},
             set(), {'model': set([INFINITE, SEGMENT])},
             {'model': INFINITE, 'radius_m': 0.0, 'y_m': 0.0, 'z_m': 0.0,
              'length_m': None, 'segments': 4000}),
    'fit': ({'n_dips': int, 'weights': str, 'min_prominence': float,
             'max_iterations': int, 'pair_tolerance_hz': float},
            set(), {'weights': set([UNIFORM, SHOT_NOISE])},
            {'n_dips': 6, 'weights': UNIFORM, 'min_prominence': 0.005,
             'max_iterations': 500, 'pair_tolerance_hz': 50e6}),
    'reconstruction': ({'hint': str, 'axis_order': _int_list,
                        'polar_formula': str,
                        'polarization_reference_deg': float,
                        'e_source': str, 'selection': str},
                       set(),
                       {'hint': set(HINTS), 'polar_formula': set(FORMULAS),
                        'e_source': set([CONFIG_E, FIT_E]),
                        'selection': set(SELECTIONS)},
                       {'hint': TOWARD, 'axis_order': [3, 1, 0],
                        'polar_formula': CUBIC, 'selection': SEARCH,
                        'polarization_reference_deg': 0.0,
                        'e_source': CONFIG_E}),
    'map': ({'y_min_m': float, 'y_max_m': float, 'z_min_m': float,
             'z_max_m': float, 'step_m': float, 'x_m': float,
             'current_a': float},
            set(), {},
            {'y_min_m': -50e-6, 'y_max_m': 50e-6, 'z_min_m': -50e-6,
             'z_max_m': -5e-6, 'step_m': 5e-6, 'x_m': 0.0,
             'current_a': 0.03}),
    'sensitivity': ({'linewidth_hz': _optional_float,
                     'contrast': _optional_float,
                     'count_rate_per_s': _optional_float,
                     't2_star_s': _optional_float,
                     'mode_area_um2': float, 'reference_area_um2': float},
                    set(), {},
                    {'linewidth_hz': None, 'contrast': None,
                     'count_rate_per_s': None, 't2_star_s': None,
                     'mode_area_um2': WAVEGUIDE_MODE_AREA_UM2,
                     'reference_area_um2': CONFOCAL_AREA_UM2}),
    'output': ({'dir': str, 'pretty': parse_bool}, set(), {},
               {'dir': '.', 'pretty': True}),
}

_LISTS = {
    'probe': ({'name': str, 'y_m': float, 'z_m': float, 'x_m': float},
              set(['name', 'y_m', 'z_m']), {}, {'x_m': 0.0}),
    'current': ({'value_a': float}, set(['value_a']), {}, {}),
}

_POSITIVE = {
    'spin': ('d_hz', 'gamma_hz_per_t'),
    'line': ('fwhm_hz', 'baseline_counts_per_s'),
    'scan': ('start_hz', 'stop_hz', 'step_hz'),
    'noise': ('integration_s',),
    'wire': ('segments',),
    'fit': ('n_dips', 'max_iterations', 'min_prominence',
            'pair_tolerance_hz'),
    'map': ('step_m',),
    'sensitivity': ('mode_area_um2', 'reference_area_um2'),
}


def _convert(name, data, schema):
    converters, required, allowed_values, defaults = schema
    checked = dict(defaults)
    checked.update(data)
    if not checked:
        raise ValidationError('Data contains not all required keys (%s)'
                              % ', '.join(sorted(required)))
    ensure_format(checked, set(converters), required)
    out = {}
    for key, value in checked.items():
        try:
            out[key] = converters[key](value) if value is not None else None
        except (TypeError, ValueError) as e:
            raise ValidationError('Invalid value for %s.%s (%s): %s'
                                  % (name, key, value, e))
    ensure_format(out, set(converters), required, allowed_values)
    for key in _POSITIVE.get(name, ()):
        if out.get(key) is not None and not out[key] > 0:
            raise ValidationError('%s.%s must be positive (%s)'
                                  % (name, key, out[key]))
    return out


class RunConfig(object):
    '''Validated settings of one command line run.
    '''

    def __init__(self):
        self.__sections = {}
        for name, schema in _SECTIONS.items():
            self.__sections[name] = _convert(name, {}, schema)
        self.__probes = []
        self.__currents = []

    def _section(self, name, data, kwargs):
        if data is None and kwargs:
            data = kwargs
        if data is not None:
            merged = dict(self.__sections[name])
            merged.update(data)
            section = _convert(name, merged, _SECTIONS[name])
            self._check(name, section)
            self.__sections[name] = section
        return dict(self.__sections[name])

    def _check(self, name, section):
        if name == 'scan' and section['stop_hz'] <= section['start_hz']:
            raise ValidationError('scan.stop_hz must exceed scan.start_hz')
        if name == 'noise' and section['seed'] < 0:
            raise ValidationError('noise.seed must not be negative (%s)'
                                  % section['seed'])
        if name == 'spin' and not 0 <= section['e_hz'] < section['d_hz']:
            raise ValidationError('spin.e_hz must lie in [0, d_hz)')
        if name == 'line':
            LineShapeParams(section['fwhm_hz'], section['contrast'],
                            section['baseline_counts_per_s'])
        if name == 'wire':
            if section['radius_m'] < 0:
                raise ValidationError('wire.radius_m must not be negative')
            if section['model'] == SEGMENT and section['length_m'] is None:
                raise ValidationError('wire.length_m required for a segment')
        if name == 'reconstruction':
            order = section['axis_order']
            if len(order) != 3 or len(set(order)) != 3 or \
                    not all(0 <= i < 4 for i in order):
                raise ValidationError('reconstruction.axis_order needs three '
                                      'distinct axes in 0..3 (%s)' % order)
        if name == 'map':
            if section['y_max_m'] <= section['y_min_m'] or \
                    section['z_max_m'] <= section['z_min_m']:
                raise ValidationError('Empty field map range')

    def spin(self, spin=None, **kwargs):
        '''Get or set the spin parameters (`d_hz`, `e_hz`,
        `gamma_hz_per_t`).
        '''
        return self._section('spin', spin, kwargs)

    def geometry(self, geometry=None, **kwargs):
        return self._section('geometry', geometry, kwargs)

    def line(self, line=None, **kwargs):
        '''Get or set the line shape: `fwhm_hz`, `contrast` (one value or
        one per orientation) and `baseline_counts_per_s`.
        '''
        return self._section('line', line, kwargs)

    def scan(self, scan=None, **kwargs):
        '''Get or set the microwave scan grid (`start_hz`, `stop_hz`,
        `step_hz`). Both ends are included when the range is a multiple of
        the step.
        '''
        return self._section('scan', scan, kwargs)

    def noise(self, noise=None, **kwargs):
        '''Get or set the shot noise: `seed`, `integration_s` and
        `enabled`.
        '''
        return self._section('noise', noise, kwargs)

    def bias(self, bias=None, **kwargs):
        '''Get or set the static bias field (`bx_t`, `by_t`, `bz_t` and its
        `frame`).
        '''
        return self._section('bias', bias, kwargs)

    def wire(self, wire=None, **kwargs):
        '''Get or set the wire: `model` (``infinite`` or ``segment``),
        conductor `radius_m`, the position of its axis (`y_m`, `z_m`), the
        `length_m` of a segment and its number of `segments`. The wire runs
        along the lab x axis.
        '''
        return self._section('wire', wire, kwargs)

    def fit(self, fit=None, **kwargs):
        return self._section('fit', fit, kwargs)

    def reconstruction(self, reconstruction=None, **kwargs):
        '''Get or set the reconstruction options: hemisphere `hint`,
        `axis_order` (the geometry axis of each resonance pair, pairs ordered
        by decreasing splitting), `polar_formula`,
        `polarization_reference_deg` and `e_source` (``config`` or ``fit``,
        the latter taking D and E from two-dip zero-field records) and the
        cone `selection` (``search`` or ``mirror``).
        '''
        return self._section('reconstruction', reconstruction, kwargs)

    def map(self, map=None, **kwargs):
        return self._section('map', map, kwargs)

    def sensitivity(self, sensitivity=None, **kwargs):
        '''Get or set sensitivity inputs. Missing values are taken from the
        line section, a `t2_star_s` replaces the linewidth.
        '''
        return self._section('sensitivity', sensitivity, kwargs)

    def output(self, output=None, **kwargs):
        return self._section('output', output, kwargs)

    def probe(self, probe=None, replace=False, **kwargs):
        '''Get or add probe positions. A probe is a dictionary with `name`,
        `y_m`, `z_m` and optionally `x_m`.

        :param probe: Dictionary or list of dictionaries.
        :param replace: Add or replace old data.
        :returns: List of probes.
        '''
        if probe is None and kwargs:
            probe = kwargs
        if probe is not None:
            if not isinstance(probe, list):
                probe = [probe]
            probes = [] if replace else list(self.__probes)
            for p in probe:
                p = _convert('probe', p, _LISTS['probe'])
                if p['name'] in [q['name'] for q in probes]:
                    raise ValidationError('Duplicate probe name %s'
                                          % p['name'])
                probes.append(p)
            self.__probes = probes
        return list(self.__probes)

    def current(self, current=None, replace=False, **kwargs):
        '''Get or add wire currents (`value_a`).
        '''
        if current is None and kwargs:
            current = kwargs
        if current is not None:
            if not isinstance(current, list):
                current = [current]
            if replace:
                self.__currents = []
            self.__currents += [_convert('current', c, _LISTS['current'])
                                for c in current]
        return list(self.__currents)

    def spin_params(self):
        s = self.spin()
        return SpinParams(s['d_hz'], s['e_hz'], s['gamma_hz_per_t'])

    def crystal_geometry(self):
        return nv_axes_for_facet(self.geometry()['facet'])

    def line_shape(self):
        s = self.line()
        return LineShapeParams(s['fwhm_hz'], s['contrast'],
                               s['baseline_counts_per_s'])

    def scan_grid(self):
        s = self.scan()
        n = int(round((s['stop_hz'] - s['start_hz']) / s['step_hz'])) + 1
        return s['start_hz'] + s['step_hz'] * np.arange(n)

    def bias_field(self):
        s = self.bias()
        return FieldVector(s['bx_t'], s['by_t'], s['bz_t'], s['frame'])

    def wire_source(self, current_a=0.0):
        s = self.wire()
        return WireSource(center=(0.0, s['y_m'], s['z_m']),
                          radius_m=s['radius_m'], current_a=current_a,
                          length_m=s['length_m'], segments=s['segments'])


def _attributes(elem):
    return dict((str(k), v) for k, v in elem.attrib.items())


def load_config(filename):
    '''Read a configuration file.

    :param filename: Path of the XML file.
    :returns: RunConfig
    :raises ValidationError: for unknown elements or attributes and invalid
        values.
    '''
    try:
        root = xml_parse(filename)
    except lxml.etree.XMLSyntaxError as e:
        raise ValidationError('Cannot parse configuration %s (%s)'
                              % (filename, e))
    if root.tag != 'nvmag':
        raise ValidationError('Configuration root must be <nvmag> (%s)'
                              % root.tag)
    cfg = RunConfig()
    seen = set()
    for elem in root:
        if not isinstance(elem.tag, str):
            continue
        if elem.tag in _LISTS:
            getattr(cfg, elem.tag)(_attributes(elem))
        elif elem.tag in _SECTIONS:
            if elem.tag in seen:
                raise ValidationError('Section %s given twice' % elem.tag)
            seen.add(elem.tag)
            getattr(cfg, elem.tag)(_attributes(elem))
        else:
            raise ValidationError('Unknown configuration element %s'
                                  % elem.tag)
    return cfg
