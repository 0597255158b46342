# -*- coding: utf-8 -*-
'''
    nvmag.spin
    ~~~~~~~~~~

    Forward model of the NV ground-state spin: resonance frequencies of the
    spin-1 Hamiltonian for an arbitrary field, CW-ODMR spectra of a four-
    orientation ensemble and Rabi/Ramsey time traces, all with optional
    seeded shot noise.

    All frequencies are ordinary frequencies in Hz and fields are in tesla.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import math

import numpy as np
from scipy import linalg

from nvmag.errors import FrameError, ValidationError
from nvmag.spectrum import OdmrSpectrum
from nvmag.util import ensure_finite, ensure_positive, unit_vector

CRYSTAL = 'crystal'
LAB = 'lab'
FRAMES = (CRYSTAL, LAB)

IN_PLANE = 'InPlane'
OUT_OF_PLANE_INWARD = 'OutOfPlaneInward'
OUT_OF_PLANE_OUTWARD = 'OutOfPlaneOutward'

D_HZ = 2.872e9
E_HZ = 8.15e6
GAMMA_HZ_PER_T = 28e9

GAUSSIAN = 'gaussian'
EXPONENTIAL = 'exponential'

# Spin-1 operators in the |+1>, |0>, |-1> basis
SX = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / math.sqrt(2)
SY = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / math.sqrt(2)
SZ = np.diag([1.0, 0.0, -1.0]).astype(complex)

# Lab-aligned basis of the (110) facet expressed in cubic coordinates:
# x along [1-10] (wire), y along [00-1] (waveguide polarization), z along
# [110] (facet normal, out of the diamond).
_FACET_110_BASIS = np.array([
    [1.0, -1.0, 0.0],
    [0.0, 0.0, -1.0],
    [1.0, 1.0, 0.0]]) / np.array([[math.sqrt(2)], [1.0], [math.sqrt(2)]])

_CUBIC_AXES = (
    ('[-1-11]', (-1.0, -1.0, 1.0)),
    ('[1-1-1]', (1.0, -1.0, -1.0)),
    ('[-11-1]', (-1.0, 1.0, -1.0)),
    ('[111]', (1.0, 1.0, 1.0)))


class SpinParams(object):
    '''Zero-field splittings and gyromagnetic ratio.
    '''

    def __init__(self, d_hz=D_HZ, e_hz=E_HZ, gamma_hz_per_t=GAMMA_HZ_PER_T):
        self.d_hz = ensure_positive('d_hz', d_hz)
        self.gamma_hz_per_t = ensure_positive('gamma_hz_per_t',
                                              gamma_hz_per_t)
        e_hz = float(e_hz)
        if not 0 <= e_hz < self.d_hz:
            raise ValidationError('e_hz must lie in [0, d_hz) (%s)' % e_hz)
        self.e_hz = e_hz

    def __repr__(self):
        return 'SpinParams(d_hz=%r, e_hz=%r, gamma_hz_per_t=%r)' % (
                self.d_hz, self.e_hz, self.gamma_hz_per_t)


class FieldVector(object):
    '''Magnetic field in tesla, tagged with its reference frame.
    '''

    def __init__(self, bx, by, bz, frame=CRYSTAL):
        if frame not in FRAMES:
            raise ValidationError('Unknown frame %s' % frame)
        ensure_finite('field', bx, by, bz)
        self.__vec = np.array([bx, by, bz], dtype=float)
        self.__frame = frame

    @classmethod
    def from_array(cls, vec, frame=CRYSTAL):
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (3,):
            raise ValidationError('Field needs three components (%s)'
                                  % (vec.shape,))
        return cls(vec[0], vec[1], vec[2], frame)

    @classmethod
    def zero(cls, frame=CRYSTAL):
        return cls(0.0, 0.0, 0.0, frame)

    @property
    def bx(self):
        return self.__vec[0]

    @property
    def by(self):
        return self.__vec[1]

    @property
    def bz(self):
        return self.__vec[2]

    @property
    def frame(self):
        return self.__frame

    @property
    def vector(self):
        return self.__vec.copy()

    def magnitude(self):
        return float(np.linalg.norm(self.__vec))

    def require_frame(self, frame):
        if self.__frame != frame:
            raise FrameError('Expected a %s-frame field, got %s'
                             % (frame, self.__frame))
        return self

    def scaled(self, factor):
        return FieldVector.from_array(self.__vec * factor, self.__frame)

    def __neg__(self):
        return self.scaled(-1.0)

    def __add__(self, other):
        if other.frame != self.__frame:
            raise FrameError('Cannot add %s-frame and %s-frame fields'
                             % (self.__frame, other.frame))
        return FieldVector.from_array(self.__vec + other.vector, self.__frame)

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return 'FieldVector(%r, %r, %r, frame=%r)' % (
                self.bx, self.by, self.bz, self.__frame)


class CrystalGeometry(object):
    '''The four NV symmetry axes of a facet in its lab-aligned basis.
    '''

    def __init__(self, axes, labels, facet, miller=None, normal=(0, 0, 1)):
        axes = np.asarray(axes, dtype=float)
        if axes.shape != (4, 3):
            raise ValidationError('Four axes required (%s)' % (axes.shape,))
        if np.any(np.abs(np.linalg.norm(axes, axis=1) - 1) > 1e-12):
            raise ValidationError('Axes must have unit norm')
        self.axes = axes
        self.labels = list(labels)
        self.facet = facet
        self.miller = list(miller or [])
        self.normal = unit_vector(normal)

    def axis(self, index):
        return self.axes[index].copy()

    def in_plane(self):
        return [i for i, l in enumerate(self.labels) if l == IN_PLANE]

    def out_of_plane(self):
        return [i for i, l in enumerate(self.labels) if l != IN_PLANE]

    def __len__(self):
        return len(self.axes)

    def __repr__(self):
        return 'CrystalGeometry(facet=%r, labels=%r)' % (self.facet,
                                                         self.labels)


class ResonancePair(object):
    '''The two spin transition frequencies of one NV orientation.

    :param nu1_hz: First transition frequency.
    :param nu2_hz: Second transition frequency. The pair is stored ordered.
    :param sigma1_hz: Optional uncertainty of the lower frequency.
    :param sigma2_hz: Optional uncertainty of the upper frequency.
    :param axis_index: Orientation this pair belongs to, if known.
    :param asymmetric: Set by dip pairing when the pair center is far from D.
    '''

    def __init__(self, nu1_hz, nu2_hz, sigma1_hz=0.0, sigma2_hz=0.0,
                 axis_index=None, asymmetric=False):
        ensure_finite('resonance', nu1_hz, nu2_hz)
        if nu1_hz > nu2_hz:
            nu1_hz, nu2_hz = nu2_hz, nu1_hz
            sigma1_hz, sigma2_hz = sigma2_hz, sigma1_hz
        if nu1_hz <= 0:
            raise ValidationError('Resonance frequencies must be positive '
                                  '(%s)' % nu1_hz)
        if not (sigma1_hz >= 0 and sigma2_hz >= 0):
            raise ValidationError('Invalid frequency uncertainty (%s, %s)'
                                  % (sigma1_hz, sigma2_hz))
        self.nu1_hz = float(nu1_hz)
        self.nu2_hz = float(nu2_hz)
        self.sigma1_hz = float(sigma1_hz)
        self.sigma2_hz = float(sigma2_hz)
        self.axis_index = axis_index
        self.asymmetric = asymmetric

    @property
    def splitting_hz(self):
        return self.nu2_hz - self.nu1_hz

    @property
    def center_hz(self):
        return 0.5 * (self.nu1_hz + self.nu2_hz)

    def tagged(self, axis_index):
        return ResonancePair(self.nu1_hz, self.nu2_hz, self.sigma1_hz,
                             self.sigma2_hz, axis_index, self.asymmetric)

    def __repr__(self):
        return 'ResonancePair(%r, %r, axis_index=%r)' % (
                self.nu1_hz, self.nu2_hz, self.axis_index)


class LineShapeParams(object):
    '''Lorentzian dip shape of the ODMR lines.

    `contrast` is either one value for all orientations or four values,
    one per axis of the geometry.
    '''

    def __init__(self, fwhm_hz, contrast, baseline_counts_per_s=1e5):
        self.fwhm_hz = ensure_positive('fwhm_hz', fwhm_hz)
        contrast = np.atleast_1d(np.asarray(contrast, dtype=float))
        if contrast.shape not in ((1,), (4,)):
            raise ValidationError('Contrast needs one or four values')
        if np.any(contrast <= 0) or np.any(contrast >= 1):
            raise ValidationError('Contrast must lie in (0, 1) (%s)'
                                  % contrast)
        self.contrast = contrast
        self.baseline_counts_per_s = ensure_positive('baseline_counts_per_s',
                                                     baseline_counts_per_s)

    def contrast_for(self, index):
        if len(self.contrast) == 1:
            return float(self.contrast[0])
        return float(self.contrast[index])


class CoherenceParams(object):
    '''Coherent-drive parameters for Rabi and Ramsey traces.
    `rabi_decay_s` may be infinite for an undamped oscillation.
    '''

    def __init__(self, t2_star_s, rabi_freq_hz, rabi_decay_s, rabi_contrast):
        self.t2_star_s = ensure_positive('t2_star_s', t2_star_s)
        self.rabi_freq_hz = ensure_positive('rabi_freq_hz', rabi_freq_hz)
        self.rabi_decay_s = ensure_positive('rabi_decay_s', rabi_decay_s,
                                            allow_inf=True)
        if not 0 < rabi_contrast < 1:
            raise ValidationError('rabi_contrast must lie in (0, 1) (%s)'
                                  % rabi_contrast)
        self.rabi_contrast = float(rabi_contrast)


class PoissonNoise(object):
    '''Photon shot noise with a fixed seed.

    :param seed: Integer seed or :class:`numpy.random.SeedSequence`.
    :param integration_s: Integration time per sample.
    '''

    def __init__(self, seed, integration_s=1.0):
        self.seed = seed
        self.integration_s = ensure_positive('integration_s', integration_s)

    def rng(self):
        return np.random.default_rng(self.seed)


def nv_axes_for_facet(facet='(110)'):
    '''Return the four <111> axes in the lab-aligned basis of a facet.

    :param facet: Facet identifier. Only ``(110)`` is supported.
    :returns: CrystalGeometry
    '''
    if facet != '(110)':
        raise ValidationError('Unsupported facet %s (only (110))' % facet)
    miller, axes = [], []
    for name, vec in _CUBIC_AXES:
        miller.append(name)
        axes.append(_FACET_110_BASIS.dot(unit_vector(vec)))
    axes = np.array(axes)
    # Exact zeros for the in-plane components
    axes[np.abs(axes) < 1e-15] = 0.0
    labels = []
    for n in axes:
        if abs(n[2]) < 1e-9:
            labels.append(IN_PLANE)
        elif n[2] < 0:
            labels.append(OUT_OF_PLANE_INWARD)
        else:
            labels.append(OUT_OF_PLANE_OUTWARD)
    return CrystalGeometry(axes, labels, facet, miller)


def _transverse_basis(axis):
    ref = np.array([1.0, 0.0, 0.0])
    if abs(axis[0]) > 0.9:
        ref = np.array([0.0, 1.0, 0.0])
    e1 = unit_vector(ref - ref.dot(axis) * axis)
    e2 = np.cross(axis, e1)
    return e1, e2


def hamiltonian(b, axis, params):
    '''Spin Hamiltonian in Hz quantized along `axis`.

    :param b: Field in tesla (crystal frame) as FieldVector or array.
    :param axis: Unit vector of the NV axis.
    :param params: SpinParams
    :returns: Hermitian 3x3 matrix.
    '''
    if isinstance(b, FieldVector):
        b = b.require_frame(CRYSTAL).vector
    b = np.asarray(b, dtype=float)
    ensure_finite('field', b)
    axis = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(axis) - 1) > 1e-9:
        raise ValidationError('NV axis must have unit norm (%s)'
                              % np.linalg.norm(axis))
    e1, e2 = _transverse_basis(axis)
    bx, by, bz = b.dot(e1), b.dot(e2), b.dot(axis)
    g = params.gamma_hz_per_t
    return (params.d_hz * SZ.dot(SZ) +
            params.e_hz * (SX.dot(SX) - SY.dot(SY)) +
            g * (bx * SX + by * SY + bz * SZ))


def energy_levels(b, axis, params):
    '''Ascending eigenvalues of :func:`hamiltonian` in Hz.
    '''
    return linalg.eigvalsh(hamiltonian(b, axis, params))


def resonance_frequencies(b, axis, params):
    '''Transition frequencies from the lowest level to the upper two.

    :returns: ResonancePair
    '''
    levels = energy_levels(b, axis, params)
    return ResonancePair(levels[1] - levels[0], levels[2] - levels[0])


def resonance_pair_polar(magnitude_t, theta_deg, params, phi_deg=0.0):
    '''Resonance pair of a field given by magnitude and angles relative to
    the NV axis.

    :param magnitude_t: Field magnitude in tesla.
    :param theta_deg: Polar angle between field and NV axis.
    :param phi_deg: Azimuth around the axis (matters only for E > 0).
    '''
    theta = math.radians(theta_deg)
    phi = math.radians(phi_deg)
    axis = np.array([0.0, 0.0, 1.0])
    e1, e2 = _transverse_basis(axis)
    b = magnitude_t * (math.sin(theta) * (math.cos(phi) * e1 +
                                          math.sin(phi) * e2) +
                       math.cos(theta) * axis)
    return resonance_frequencies(b, axis, params)


def resonance_lines(b, geom, params):
    '''Resonance pairs of all orientations, tagged with their axis index.
    '''
    return [resonance_frequencies(b, geom.axis(i), params).tagged(i)
            for i in range(len(geom))]


def lorentzian(freqs_hz, center_hz, fwhm_hz):
    '''Unit-peak Lorentzian.
    '''
    half = 0.5 * fwhm_hz
    return half ** 2 / ((np.asarray(freqs_hz) - center_hz) ** 2 + half ** 2)


def odmr_spectrum(b, geom, params, line, freqs_hz, noise=None):
    '''Synthesize a CW-ODMR spectrum of an ensemble with all four
    orientations.

    :param b: FieldVector in the crystal frame.
    :param geom: CrystalGeometry
    :param params: SpinParams
    :param line: LineShapeParams
    :param freqs_hz: Strictly increasing frequency grid.
    :param noise: None or PoissonNoise.
    :returns: OdmrSpectrum
    '''
    b.require_frame(CRYSTAL)
    freqs_hz = np.asarray(freqs_hz, dtype=float)
    if freqs_hz.ndim != 1 or len(freqs_hz) < 2:
        raise ValidationError('Scan grid needs at least 2 points')
    if np.any(np.diff(freqs_hz) <= 0):
        raise ValidationError('Scan grid is not strictly increasing')
    pl = np.ones_like(freqs_hz)
    for pair in resonance_lines(b, geom, params):
        c = line.contrast_for(pair.axis_index)
        for nu in (pair.nu1_hz, pair.nu2_hz):
            pl -= c * lorentzian(freqs_hz, nu, line.fwhm_hz)
    rate = line.baseline_counts_per_s * pl
    if noise is None:
        return OdmrSpectrum(freqs_hz, pl, rate)
    expected = np.clip(rate * noise.integration_s, 0, None)
    rate = noise.rng().poisson(expected) / noise.integration_s
    return OdmrSpectrum(freqs_hz, rate / line.baseline_counts_per_s, rate)


def poisson_trace(signal, counts, seed):
    '''Apply seeded shot noise to a normalized trace.

    :param signal: Normalized signal (off resonance is 1).
    :param counts: Expected photon counts at signal 1.
    :param seed: Seed of the generator.
    '''
    signal = np.asarray(signal, dtype=float)
    counts = ensure_positive('counts', counts)
    rng = np.random.default_rng(seed)
    return rng.poisson(np.clip(signal * counts, 0, None)) / counts


def _times(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValidationError('Negative evolution time')
    return t


def rabi_signal(t, coh):
    '''Normalized PL after a drive pulse of length t (seconds).
    '''
    t = _times(t)
    decay = np.exp(-t / coh.rabi_decay_s)
    return 1 - 0.5 * coh.rabi_contrast * \
        (1 - np.cos(2 * np.pi * coh.rabi_freq_hz * t)) * decay


def ramsey_envelope(t, t2_star_s, envelope=GAUSSIAN):
    if envelope == GAUSSIAN:
        return np.exp(-(t / t2_star_s) ** 2)
    if envelope == EXPONENTIAL:
        return np.exp(-t / t2_star_s)
    raise ValidationError('Unknown Ramsey envelope %s' % envelope)


def ramsey_signal(t, detuning_hz, coh, envelope=GAUSSIAN):
    '''Normalized PL after a Ramsey sequence with free evolution t.
    The contrast is the Rabi contrast of `coh`.
    '''
    t = _times(t)
    return 1 - 0.5 * coh.rabi_contrast * (
            1 - np.cos(2 * np.pi * detuning_hz * t) *
            ramsey_envelope(t, coh.t2_star_s, envelope))
