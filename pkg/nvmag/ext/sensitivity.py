# -*- coding: utf-8 -*-
'''
    nvmag.ext.sensitivity
    ~~~~~~~~~~~~~~~~~~~~~

    Report section for shot-noise limited sensitivities.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

from nvmag.errors import ValidationError
from nvmag.ext.base import BaseExtension, BaseRecordExtension
from nvmag.metrics import SensitivityInputs, cw_sensitivity
from nvmag.util import xml_elem, xml_float, xml_value


def _write(parent, inputs):
    elem = xml_elem('sensitivity', parent)
    xml_value(elem, 'linewidth_hz', inputs.linewidth_hz)
    xml_value(elem, 'contrast', inputs.contrast)
    xml_value(elem, 'count_rate_per_s', inputs.count_rate_per_s)
    xml_value(elem, 'gamma_hz_per_t', inputs.gamma_hz_per_t)
    xml_value(elem, 'eta_t_per_sqrt_hz', cw_sensitivity(inputs))
    return elem


class SensitivityExtension(BaseExtension):
    '''Sensitivity of the configured line shape and the ensemble size ratio
    of waveguide and reference excitation.
    '''

    def __init__(self):
        self.__inputs = None
        self.__ensemble_scale = None

    def extend_report(self, report):
        if self.__inputs is not None:
            elem = _write(report, self.__inputs)
            if self.__ensemble_scale is not None:
                xml_value(elem, 'ensemble_scale', self.__ensemble_scale)
        return report

    def inputs(self, inputs=None):
        if inputs is not None:
            if not isinstance(inputs, SensitivityInputs):
                raise ValidationError('Expected SensitivityInputs')
            self.__inputs = inputs
        return self.__inputs

    def ensemble_scale(self, scale=None):
        if scale is not None:
            self.__ensemble_scale = float(scale)
        return self.__ensemble_scale


class SensitivityRecordExtension(BaseRecordExtension):
    '''Sensitivity derived from the fitted dips of one spectrum.'''

    def __init__(self):
        self.__inputs = None

    def extend_record(self, record):
        if self.__inputs is not None:
            _write(record, self.__inputs)
        return record

    def inputs(self, inputs=None):
        if inputs is not None:
            if not isinstance(inputs, SensitivityInputs):
                raise ValidationError('Expected SensitivityInputs')
            self.__inputs = inputs
        return self.__inputs


def read_sensitivity(elem):
    '''Sensitivity value in T/sqrt(Hz) below a report or record element.'''
    sens = elem.find('sensitivity')
    if sens is None:
        raise ValidationError('No sensitivity section')
    return xml_float(sens, 'eta_t_per_sqrt_hz')
