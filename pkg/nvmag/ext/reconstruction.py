# -*- coding: utf-8 -*-
'''
    nvmag.ext.reconstruction
    ~~~~~~~~~~~~~~~~~~~~~~~~

    Report section for reconstructed field vectors and their difference to
    a reference record.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

from nvmag.errors import ValidationError
from nvmag.ext.base import BaseExtension, BaseRecordExtension
from nvmag.inversion import FieldDifference, ReconstructionResult
from nvmag.spin import CRYSTAL, LAB, FieldVector
from nvmag.util import (parse_bool, xml_elem, xml_float, xml_read_vector,
                        xml_value, xml_vector)


class ReconstructionExtension(BaseExtension):
    '''Settings of the reconstruction: hint, polar angle formula and the
    zero-field splittings used.
    '''

    def __init__(self):
        self.__settings = {}

    def extend_report(self, report):
        if not self.__settings:
            return report
        settings = xml_elem('reconstruction_settings', report)
        for key in sorted(self.__settings):
            value = self.__settings[key]
            if isinstance(value, str):
                settings.attrib[key] = value
            else:
                xml_value(settings, key, value)
        return report

    def settings(self, settings=None, **kwargs):
        '''Get or update the settings. String values become attributes,
        numbers (named with their unit) child elements.
        '''
        if settings is None and kwargs:
            settings = kwargs
        if settings is not None:
            self.__settings.update(settings)
        return dict(self.__settings)


class ReconstructionRecordExtension(BaseRecordExtension):
    '''Reconstruction of one fit record.'''

    def __init__(self):
        self.__result = None
        self.__difference = None
        self.__reference = None

    def extend_record(self, record):
        r = self.__result
        if r is None:
            return record
        rec = xml_elem('reconstruction', record,
                       hint=r.hint or '',
                       low_confidence='true' if r.low_confidence
                       else 'false')
        xml_value(rec, 'magnitude_t', r.magnitude_t)
        xml_value(rec, 'magnitude_sigma_t', r.magnitude_sigma_t)
        xml_vector(rec, 'b_crystal', r.b_crystal.vector, CRYSTAL)
        if r.b_lab is not None:
            xml_vector(rec, 'b_lab', r.b_lab.vector, LAB)
        xml_value(rec, 'triangle_diameter_deg', r.triangle_diameter_deg)
        xml_value(rec, 'direction_sigma_deg', r.direction_sigma_deg)
        if r.azimuth_deg is not None:
            az = xml_elem('azimuth', rec)
            xml_value(az, 'phi1_deg', r.azimuth_deg[0])
            xml_value(az, 'phi2_deg', r.azimuth_deg[1])
        for k, cone in enumerate(r.cones or []):
            axis = xml_elem('axis', rec, index=str(cone.index),
                            mirrored='true' if cone.mirrored else 'false')
            if r.magnitudes_t is not None:
                xml_value(axis, 'magnitude_t', r.magnitudes_t[k])
            if r.polar_angles_deg is not None:
                xml_value(axis, 'polar_deg', r.polar_angles_deg[k])
            xml_value(axis, 'residual_t', r.residuals_t[k])
        if self.__difference is not None:
            diff = xml_elem('difference', rec)
            if self.__reference is not None:
                diff.attrib['reference'] = self.__reference
            d = self.__difference
            xml_vector(diff, 'delta', d.vector.vector, d.vector.frame)
            xml_value(diff, 'magnitude_t', d.magnitude_t)
            xml_value(diff, 'sigma_t', d.sigma_t)
        return record

    def result(self, result=None):
        '''Get or set the ReconstructionResult.'''
        if result is not None:
            if not isinstance(result, ReconstructionResult):
                raise ValidationError('Expected a ReconstructionResult')
            self.__result = result
        return self.__result

    def difference(self, difference=None, reference=None):
        '''Get or set the FieldDifference to a reference record.

        :param reference: Id of the reference record.
        '''
        if difference is not None:
            self.__difference = difference
            self.__reference = reference
        return self.__difference


def read_reconstruction(record):
    '''Read a reconstruction back. Triangle and cones are not stored, the
    returned result carries None for them.
    '''
    rec = record.find('reconstruction')
    if rec is None:
        raise ValidationError('Record %s has no reconstruction section'
                              % record.get('id'))
    b_crystal = FieldVector.from_array(*xml_read_vector(rec, 'b_crystal'))
    b_lab = xml_read_vector(rec, 'b_lab')
    if b_lab is not None:
        b_lab = FieldVector.from_array(*b_lab)
    azimuth = None
    az = rec.find('azimuth')
    if az is not None:
        azimuth = (xml_float(az, 'phi1_deg'), xml_float(az, 'phi2_deg'))
    axes = rec.findall('axis')
    return ReconstructionResult(
            b_crystal, xml_float(rec, 'magnitude_t'),
            xml_float(rec, 'magnitude_sigma_t'), None,
            xml_float(rec, 'triangle_diameter_deg'),
            [xml_float(a, 'residual_t') for a in axes], None, b_lab,
            xml_float(rec, 'direction_sigma_deg'),
            parse_bool(rec.get('low_confidence', 'false')), azimuth,
            magnitudes_t=[xml_float(a, 'magnitude_t') for a in axes],
            polar_angles_deg=[xml_float(a, 'polar_deg') for a in axes],
            hint=rec.get('hint') or None)


def read_difference(record):
    '''The difference section of a record as FieldDifference, or None.'''
    diff = record.find('reconstruction/difference')
    if diff is None:
        return None
    vec = FieldVector.from_array(*xml_read_vector(diff, 'delta'))
    return FieldDifference(vec, xml_float(diff, 'magnitude_t'),
                           xml_float(diff, 'sigma_t'))
