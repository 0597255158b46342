# -*- coding: utf-8 -*-
'''
    nvmag.ext.truth
    ~~~~~~~~~~~~~~~

    Ground truth of simulated spectra. The manifest written by ``simulate``
    is a report whose records carry this section.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

from nvmag.errors import ValidationError
from nvmag.ext.base import BaseExtension, BaseRecordExtension
from nvmag.spin import CRYSTAL, LAB, FieldVector, ResonancePair
from nvmag.util import (xml_elem, xml_float, xml_read_vector, xml_value,
                        xml_vector)


class TruthExtension(BaseExtension):
    '''Simulation settings: seed and spin parameters.'''

    def __init__(self):
        self.__seed = None
        self.__spin = None

    def extend_report(self, report):
        sim = xml_elem('simulation', report)
        if self.__seed is not None:
            sim.attrib['seed'] = str(self.__seed)
        if self.__spin is not None:
            xml_value(sim, 'd_hz', self.__spin.d_hz)
            xml_value(sim, 'e_hz', self.__spin.e_hz)
            xml_value(sim, 'gamma_hz_per_t', self.__spin.gamma_hz_per_t)
        return report

    def seed(self, seed=None):
        if seed is not None:
            self.__seed = int(seed)
        return self.__seed

    def spin(self, spin=None):
        '''Get or set the SpinParams the spectra were simulated with.'''
        if spin is not None:
            self.__spin = spin
        return self.__spin


class TruthRecordExtension(BaseRecordExtension):
    '''Field and resonance lines a spectrum file was simulated with.'''

    def __init__(self):
        self.__position = None
        self.__b_lab = None
        self.__b_crystal = None
        self.__pairs = []

    def extend_record(self, record):
        truth = xml_elem('truth', record)
        if self.__position is not None:
            pos = xml_elem('position', truth)
            for name, value in zip(('x_m', 'y_m', 'z_m'), self.__position):
                xml_value(pos, name, float(value))
        if self.__b_lab is not None:
            xml_vector(truth, 'b_lab', self.__b_lab.vector, LAB)
        if self.__b_crystal is not None:
            xml_vector(truth, 'b_crystal', self.__b_crystal.vector, CRYSTAL)
        for p in self.__pairs:
            pair = xml_elem('pair', truth, axis=str(p.axis_index))
            xml_value(pair, 'nu1_hz', p.nu1_hz)
            xml_value(pair, 'nu2_hz', p.nu2_hz)
        return record

    def position(self, position=None):
        '''Get or set the lab-frame probe position (x, y, z) in meters.'''
        if position is not None:
            if len(position) != 3:
                raise ValidationError('Position needs three coordinates')
            self.__position = tuple(float(v) for v in position)
        return self.__position

    def field(self, b_lab=None, b_crystal=None):
        '''Get or set the total field in both frames.

        :returns: Tuple (b_lab, b_crystal).
        '''
        if b_lab is not None:
            self.__b_lab = b_lab.require_frame(LAB)
        if b_crystal is not None:
            self.__b_crystal = b_crystal.require_frame(CRYSTAL)
        return self.__b_lab, self.__b_crystal

    def pairs(self, pairs=None):
        '''Get or set the axis-tagged resonance pairs.'''
        if pairs is not None:
            self.__pairs = list(pairs)
        return self.__pairs


def read_truth(record):
    '''Read the truth section of a manifest record.

    :returns: Dictionary with `position`, `b_lab`, `b_crystal` and `pairs`.
    '''
    truth = record.find('truth')
    if truth is None:
        raise ValidationError('Record %s has no truth section'
                              % record.get('id'))
    out = {'position': None, 'b_lab': None, 'b_crystal': None, 'pairs': []}
    pos = truth.find('position')
    if pos is not None:
        out['position'] = tuple(xml_float(pos, n) for n in ('x_m', 'y_m',
                                                            'z_m'))
    for name in ('b_lab', 'b_crystal'):
        found = xml_read_vector(truth, name)
        if found is not None:
            out[name] = FieldVector.from_array(*found)
    for p in truth.findall('pair'):
        out['pairs'].append(ResonancePair(xml_float(p, 'nu1_hz'),
                                          xml_float(p, 'nu2_hz'),
                                          axis_index=int(p.get('axis'))))
    return out
