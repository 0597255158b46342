# -*- coding: utf-8 -*-
'''
    nvmag.ext.fit
    ~~~~~~~~~~~~~

    Report section holding multi-Lorentzian fit results and the resonance
    pairs derived from them.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

from nvmag.errors import ValidationError
from nvmag.ext.base import BaseExtension, BaseRecordExtension
from nvmag.fit import DipFit, FitReport, WEIGHTS
from nvmag.spin import ResonancePair
from nvmag.util import parse_bool, xml_elem, xml_float, xml_value

_DIP_FIELDS = ('center_hz', 'center_sigma_hz', 'fwhm_hz', 'fwhm_sigma_hz',
               'contrast', 'contrast_sigma')

OK = 'ok'
FAILED = 'failed'


class FitExtension(BaseExtension):
    '''Fit settings shared by all records.
    '''

    def __init__(self):
        self.__n_dips = None
        self.__weights = None

    def extend_report(self, report):
        if self.__n_dips is not None or self.__weights is not None:
            settings = xml_elem('fit_settings', report)
            if self.__n_dips is not None:
                settings.attrib['n_dips'] = str(self.__n_dips)
            if self.__weights is not None:
                settings.attrib['weights'] = self.__weights
        return report

    def n_dips(self, n_dips=None):
        if n_dips is not None:
            if int(n_dips) < 1:
                raise ValidationError('Invalid number of dips (%s)' % n_dips)
            self.__n_dips = int(n_dips)
        return self.__n_dips

    def weights(self, weights=None):
        if weights is not None:
            if weights not in WEIGHTS:
                raise ValidationError('Unknown weighting %s' % weights)
            self.__weights = weights
        return self.__weights


class FitRecordExtension(BaseRecordExtension):
    '''Fit result of one spectrum file. A record whose fit failed keeps the
    error message instead of the result.
    '''

    def __init__(self):
        self.__result = None
        self.__pairs = []
        self.__error = None

    def extend_record(self, record):
        if self.__result is None and self.__error is None:
            return record
        fit = xml_elem('fit', record)
        if self.__error is not None:
            fit.attrib['status'] = FAILED
            message = xml_elem('message', fit)
            message.text = self.__error
            return record
        r = self.__result
        fit.attrib['status'] = OK
        fit.attrib['converged'] = 'true' if r.converged else 'false'
        fit.attrib['degenerate'] = 'true' if r.degenerate else 'false'
        fit.attrib['weights'] = r.weights
        xml_value(fit, 'baseline', r.baseline)
        xml_value(fit, 'baseline_sigma', r.baseline_sigma)
        xml_value(fit, 'cost', r.cost)
        xml_value(fit, 'evaluations', r.evaluations)
        for d in r.dips:
            dip = xml_elem('dip', fit)
            for name in _DIP_FIELDS:
                xml_value(dip, name, getattr(d, name))
        for p in self.__pairs:
            pair = xml_elem('pair', fit,
                            asymmetric='true' if p.asymmetric else 'false')
            xml_value(pair, 'nu1_hz', p.nu1_hz)
            xml_value(pair, 'nu2_hz', p.nu2_hz)
            xml_value(pair, 'sigma1_hz', p.sigma1_hz)
            xml_value(pair, 'sigma2_hz', p.sigma2_hz)
            xml_value(pair, 'splitting_hz', p.splitting_hz)
        return record

    def result(self, result=None):
        '''Get or set the FitReport of the record.'''
        if result is not None:
            if not isinstance(result, FitReport):
                raise ValidationError('Fit result must be a FitReport')
            self.__result = result
        return self.__result

    def pairs(self, pairs=None):
        '''Get or set the resonance pairs, largest splitting first.'''
        if pairs is not None:
            self.__pairs = list(pairs)
        return self.__pairs

    def error(self, error=None):
        '''Get or set the message of a failed fit.'''
        if error is not None:
            self.__error = str(error)
        return self.__error


def fit_status(record):
    '''``ok``, ``failed`` or None if the record has no fit section.'''
    fit = record.find('fit')
    return fit.get('status') if fit is not None else None


def read_fit(record):
    '''Turn the fit section of a record element back into a FitReport.

    :raises ValidationError: if the section is missing or the fit failed.
    '''
    fit = record.find('fit')
    if fit is None:
        raise ValidationError('Record %s has no fit section'
                              % record.get('id'))
    if fit.get('status') == FAILED:
        raise ValidationError('Fit of record %s failed (%s)'
                              % (record.get('id'), fit.findtext('message')))
    dips = [DipFit(**dict((name, xml_float(d, name)) for name in _DIP_FIELDS))
            for d in fit.findall('dip')]
    return FitReport(dips, xml_float(fit, 'baseline'),
                     xml_float(fit, 'baseline_sigma'),
                     xml_float(fit, 'cost'),
                     int(xml_float(fit, 'evaluations')),
                     parse_bool(fit.get('converged', 'true')),
                     parse_bool(fit.get('degenerate', 'false')),
                     weights=fit.get('weights'))


def read_pairs(record):
    '''Resonance pairs of a record's fit section, in document order.
    '''
    fit = record.find('fit')
    if fit is None:
        return []
    pairs = []
    for p in fit.findall('pair'):
        pairs.append(ResonancePair(
                xml_float(p, 'nu1_hz'), xml_float(p, 'nu2_hz'),
                xml_float(p, 'sigma1_hz'), xml_float(p, 'sigma2_hz'),
                asymmetric=parse_bool(p.get('asymmetric', 'false'))))
    return pairs
