# -*- coding: utf-8 -*-
'''
    nvmag.metrics
    ~~~~~~~~~~~~~

    Figures of merit: shot-noise limited CW-ODMR sensitivity, the linewidth
    limit set by the dephasing time and the bookkeeping comparing excitation
    areas of waveguide and confocal addressing.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import math

from nvmag.errors import ValidationError
from nvmag.spin import GAMMA_HZ_PER_T
from nvmag.util import ensure_positive

# Lorentzian line shape prefactor 4/(3*sqrt(3))
LORENTZIAN_PREFACTOR = 4 / (3 * math.sqrt(3))

WAVEGUIDE_MODE_AREA_UM2 = 456.0
CONFOCAL_AREA_UM2 = 0.366


class SensitivityInputs(object):
    '''Linewidth, contrast and photon count rate entering the sensitivity.
    '''

    def __init__(self, linewidth_hz, contrast, count_rate_per_s,
                 gamma_hz_per_t=GAMMA_HZ_PER_T):
        self.linewidth_hz = ensure_positive('linewidth_hz', linewidth_hz)
        self.contrast = ensure_positive('contrast', contrast)
        if self.contrast >= 1:
            raise ValidationError('contrast must be below 1 (%s)' % contrast)
        self.count_rate_per_s = ensure_positive('count_rate_per_s',
                                                count_rate_per_s)
        self.gamma_hz_per_t = ensure_positive('gamma_hz_per_t',
                                              gamma_hz_per_t)


def cw_sensitivity(inp):
    '''Photon shot-noise limited sensitivity in T/sqrt(Hz).

    The gyromagnetic ratio enters as angular frequency per tesla,
    2*pi*gamma, while the linewidth stays in Hz.

    :param inp: SensitivityInputs
    '''
    gamma = 2 * math.pi * inp.gamma_hz_per_t
    return LORENTZIAN_PREFACTOR * inp.linewidth_hz / (
            gamma * inp.contrast * math.sqrt(inp.count_rate_per_s))


def linewidth_from_t2star(t2_star_s):
    '''Dephasing-limited ODMR linewidth 1/(pi*T2*) in Hz.'''
    return 1 / (math.pi * ensure_positive('t2_star_s', t2_star_s))


def ensemble_scale(mode_area_um2=WAVEGUIDE_MODE_AREA_UM2,
                   reference_area_um2=CONFOCAL_AREA_UM2,
                   dose_per_cm2=None, reference_dose_per_cm2=None):
    '''Ratio of addressed NV numbers for two excitation areas at uniform
    areal density. When both implantation doses are given the ratio also
    scales with their quotient.
    '''
    ratio = ensure_positive('mode_area_um2', mode_area_um2) / \
        ensure_positive('reference_area_um2', reference_area_um2)
    if (dose_per_cm2 is None) != (reference_dose_per_cm2 is None):
        raise ValidationError('Both doses or none are required')
    if dose_per_cm2 is not None:
        ratio *= ensure_positive('dose_per_cm2', dose_per_cm2) / \
            ensure_positive('reference_dose_per_cm2', reference_dose_per_cm2)
    return ratio


def nv_count(area_um2, dose_per_cm2, conversion_yield):
    '''Number of NV centers addressed in an area for an implantation dose
    and an ion-to-NV conversion yield.
    '''
    if not 0 < conversion_yield <= 1:
        raise ValidationError('conversion_yield must lie in (0, 1] (%s)'
                              % conversion_yield)
    area_cm2 = ensure_positive('area_um2', area_um2) * 1e-8
    return area_cm2 * ensure_positive('dose_per_cm2', dose_per_cm2) * \
        conversion_yield
