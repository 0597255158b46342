# -*- coding: utf-8 -*-
'''
    nvmag.fit
    ~~~~~~~~~

    Inverse spectral analysis: dip detection, multi-Lorentzian fits of ODMR
    spectra, pairing of dips into resonance pairs, dipole polarization
    patterns and Rabi/Ramsey trace fits.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import logging
import math

import numpy as np
from scipy import linalg, ndimage, optimize, signal as sp_signal

from nvmag.errors import ConvergenceError, ValidationError
from nvmag.spin import EXPONENTIAL, GAUSSIAN, ResonancePair, ramsey_envelope

log = logging.getLogger(__name__)

UNIFORM = 'uniform'
SHOT_NOISE = 'shot-noise'
WEIGHTS = (UNIFORM, SHOT_NOISE)

SINGLE_DIPOLE = 'SingleDipole'
DOUBLE_DIPOLE = 'DoubleDipole'

# Internal frequency unit of the dip fit
_SCALE_HZ = 1e6


class DipFit(object):
    '''Fitted parameters of one Lorentzian dip with their uncertainties.
    `cost` is the squared residual within one FWHM of the center.
    '''

    def __init__(self, center_hz, fwhm_hz, contrast, center_sigma_hz=0.0,
                 fwhm_sigma_hz=0.0, contrast_sigma=0.0, cost=0.0):
        if not fwhm_hz > 0:
            raise ValidationError('fwhm_hz must be positive (%s)' % fwhm_hz)
        for name, sigma in (('center_sigma_hz', center_sigma_hz),
                            ('fwhm_sigma_hz', fwhm_sigma_hz),
                            ('contrast_sigma', contrast_sigma)):
            if not sigma >= 0:
                raise ValidationError('Invalid %s (%s)' % (name, sigma))
        self.center_hz = float(center_hz)
        self.fwhm_hz = float(fwhm_hz)
        self.contrast = float(contrast)
        self.center_sigma_hz = float(center_sigma_hz)
        self.fwhm_sigma_hz = float(fwhm_sigma_hz)
        self.contrast_sigma = float(contrast_sigma)
        self.cost = float(cost)

    def __repr__(self):
        return 'DipFit(center_hz=%r, fwhm_hz=%r, contrast=%r)' % (
                self.center_hz, self.fwhm_hz, self.contrast)


class FitReport(object):
    '''Result of :func:`fit_lorentzians`.

    A report with ``converged == False`` holds the best parameters reached
    before the iteration limit.
    '''

    def __init__(self, dips, baseline, baseline_sigma=0.0, cost=0.0,
                 evaluations=0, converged=True, degenerate=False,
                 message='', weights=UNIFORM):
        self.dips = sorted(dips, key=lambda d: d.center_hz)
        self.baseline = float(baseline)
        self.baseline_sigma = float(baseline_sigma)
        self.cost = float(cost)
        self.evaluations = int(evaluations)
        self.converged = bool(converged)
        self.degenerate = bool(degenerate)
        self.message = message
        self.weights = weights

    def centers(self):
        return [d.center_hz for d in self.dips]

    def model(self, freqs_hz):
        freqs_hz = np.asarray(freqs_hz, dtype=float)
        out = np.full_like(freqs_hz, self.baseline)
        for d in self.dips:
            half = 0.5 * d.fwhm_hz
            out -= d.contrast * half ** 2 / \
                ((freqs_hz - d.center_hz) ** 2 + half ** 2)
        return out


class DipolePattern(object):
    '''Polarization dependence of an ODMR contrast and its classification.
    In-plane orientations show a single dipole lobe, out-of-plane
    orientations two orthogonal lobes.
    '''

    def __init__(self, samples, classification, amplitudes, lobe_axes_deg,
                 offset, unpolarized=False, rss_single=0.0, rss_double=0.0):
        self.samples = samples
        self.classification = classification
        self.amplitudes = amplitudes
        self.lobe_axes_deg = lobe_axes_deg
        self.offset = offset
        self.unpolarized = unpolarized
        self.rss_single = rss_single
        self.rss_double = rss_double

    @property
    def in_plane(self):
        return self.classification == SINGLE_DIPOLE

    def __call__(self, angle_deg):
        theta = np.radians(np.asarray(angle_deg, dtype=float))
        out = self.offset
        for a, axis in zip(self.amplitudes, self.lobe_axes_deg):
            out = out + a * np.cos(theta - math.radians(axis)) ** 2
        return out


class RabiFit(object):

    def __init__(self, rabi_freq_hz, decay_s, contrast, rabi_freq_sigma_hz,
                 decay_sigma_s, contrast_sigma):
        self.rabi_freq_hz = rabi_freq_hz
        self.decay_s = decay_s
        self.contrast = contrast
        self.rabi_freq_sigma_hz = rabi_freq_sigma_hz
        self.decay_sigma_s = decay_sigma_s
        self.contrast_sigma = contrast_sigma


class RamseyFit(object):

    def __init__(self, t2_star_s, detuning_hz, contrast, t2_star_sigma_s,
                 detuning_sigma_hz, contrast_sigma, envelope=GAUSSIAN):
        self.t2_star_s = t2_star_s
        self.detuning_hz = detuning_hz
        self.contrast = contrast
        self.t2_star_sigma_s = t2_star_sigma_s
        self.detuning_sigma_hz = detuning_sigma_hz
        self.contrast_sigma = contrast_sigma
        self.envelope = envelope


def _find_dips(spec, min_prominence):
    peaks, props = sp_signal.find_peaks(-spec.signal,
                                        prominence=min_prominence)
    return spec.freqs_hz[peaks], props['prominences'], peaks


def _noise_level(values):
    '''Robust standard deviation of point-to-point noise.'''
    if len(values) < 3:
        return 0.0
    return float(np.median(np.abs(np.diff(values)))) / (0.6745 * math.sqrt(2))


def detect_dips(spec, min_prominence=0.005, min_separation_hz=0.0):
    '''Find candidate dip centers.

    :param spec: OdmrSpectrum
    :param min_prominence: Minimum depth below the local baseline, as
        fraction of the normalized signal.
    :param min_separation_hz: Candidates closer than this are merged into
        the more prominent one.
    :returns: Sorted list of center frequencies in Hz.
    '''
    if len(spec) == 0:
        raise ValidationError('Cannot detect dips in an empty spectrum')
    if not 0 < min_prominence < 1:
        raise ValidationError('min_prominence must lie in (0, 1) (%s)'
                              % min_prominence)
    centers, prominences, _ = _find_dips(spec, min_prominence)
    kept = []
    for i in np.argsort(-prominences, kind='stable'):
        if all(abs(centers[i] - k) >= min_separation_hz for k in kept):
            kept.append(centers[i])
    log.debug('Detected %d dips above prominence %g', len(kept),
              min_prominence)
    return sorted(float(c) for c in kept)


def initial_centers(spec, n_dips, min_prominence=0.005, label='spectrum'):
    '''Starting centers for a fit of `n_dips` dips.

    :returns: The centers of :func:`detect_dips` when exactly `n_dips` are
        found, otherwise None and the fit seeds its own centers.
    '''
    found = detect_dips(spec, min_prominence)
    if len(found) == n_dips:
        return found
    log.warning('%s: %d dips detected, fitting %d', label, len(found),
                n_dips)
    return None


def _half_depth_width(freqs, smooth, idx, baseline):
    depth = baseline - smooth[idx]
    if depth <= 0:
        return None
    level = baseline - 0.5 * depth
    left = idx
    while left > 0 and smooth[left] < level:
        left -= 1
    right = idx
    while right < len(smooth) - 1 and smooth[right] < level:
        right += 1
    return freqs[right] - freqs[left]


def _initial_guess(spec, n_dips, init):
    freqs, values = spec.freqs_hz, spec.signal
    if isinstance(init, FitReport):
        params = [init.baseline]
        for d in init.dips:
            params += [d.center_hz, d.fwhm_hz, d.contrast]
        return params
    baseline = float(np.median(values))
    smooth = ndimage.uniform_filter1d(values, 5, mode='nearest')
    step = float(np.median(np.diff(freqs)))
    if init is None:
        threshold = max(4 * _noise_level(values), 1e-9)
        found, prominences, _ = _find_dips(spec, threshold)
        order = np.argsort(-prominences, kind='stable')[:n_dips]
        centers = sorted(found[order])
        missing = n_dips - len(centers)
        if missing:
            log.debug('Seeding %d dips at equal spacing', missing)
            centers = sorted(list(centers) + list(
                    np.linspace(freqs[0], freqs[-1], missing + 2)[1:-1]))
    else:
        centers = sorted(float(c) for c in init)
    widths = []
    for c in centers:
        idx = int(np.argmin(np.abs(freqs - c)))
        w = _half_depth_width(freqs, smooth, idx, baseline)
        if w:
            widths.append(w)
    fwhm = max(float(np.median(widths)) if widths else 10 * step, 2 * step)
    params = [baseline]
    for c in centers:
        idx = int(np.argmin(np.abs(freqs - c)))
        params += [c, fwhm, max(baseline - smooth[idx], 1e-4)]
    return params


def _to_internal(params, f_ref):
    p = np.array(params, dtype=float)
    p[1::3] = (p[1::3] - f_ref) / _SCALE_HZ
    p[2::3] = p[2::3] / _SCALE_HZ
    return p


def _lorentz_parts(p, x):
    c = p[1::3][:, None]
    h = 0.5 * p[2::3][:, None]
    a = p[3::3][:, None]
    dx = x[None, :] - c
    den = dx ** 2 + h ** 2
    return a, h, dx, den


def _model(p, x):
    a, h, dx, den = _lorentz_parts(p, x)
    return p[0] - (a * h ** 2 / den).sum(axis=0)


def _jacobian(p, x):
    a, h, dx, den = _lorentz_parts(p, x)
    jac = np.empty((len(x), len(p)))
    jac[:, 0] = 1.0
    jac[:, 1::3] = (-a * h ** 2 * 2 * dx / den ** 2).T
    jac[:, 2::3] = (-a * h * dx ** 2 / den ** 2).T
    jac[:, 3::3] = (-(h ** 2) / den).T
    return jac


def _covariance(jac):
    _, s, vt = linalg.svd(jac, full_matrices=False)
    threshold = np.finfo(float).eps * max(jac.shape) * s[0]
    keep = s > threshold
    if not np.all(keep):
        return np.full((jac.shape[1], jac.shape[1]), np.inf), False
    return (vt.T / s ** 2).dot(vt), True


def fit_lorentzians(spec, n_dips, init=None, weights=UNIFORM, jac='analytic',
                    max_iterations=500, ftol=1e-10):
    '''Fit a constant baseline minus `n_dips` Lorentzian dips.

    :param spec: OdmrSpectrum with at least 8 points.
    :param n_dips: Number of dips in the model.
    :param init: Optional initial centers (one per dip), or a previous
        FitReport to restart from.
    :param weights: ``uniform`` or ``shot-noise``.
    :param jac: ``analytic`` or a finite-difference scheme such as
        ``2-point``.
    :returns: FitReport
    '''
    if n_dips < 1:
        raise ValidationError('n_dips must be at least 1 (%s)' % n_dips)
    if len(spec) < 8:
        raise ValidationError('Fitting needs at least 8 points (%d)'
                              % len(spec))
    if len(spec) <= 3 * n_dips + 1:
        raise ValidationError('Too few points for %d dips' % n_dips)
    if weights not in WEIGHTS:
        raise ValidationError('Unknown weighting %s' % weights)
    if init is not None:
        count = len(init.dips) if isinstance(init, FitReport) else len(init)
        if count != n_dips:
            raise ValidationError('init holds %d centers for %d dips'
                                  % (count, n_dips))

    freqs, values = spec.freqs_hz, spec.signal
    f_ref = float(freqs[0])
    x = (freqs - f_ref) / _SCALE_HZ
    if weights == SHOT_NOISE:
        w = 1 / np.sqrt(np.clip(values, 1e-6, None))
    else:
        w = np.ones_like(values)
    p0 = _to_internal(_initial_guess(spec, n_dips, init), f_ref)

    def residuals(p):
        return (_model(p, x) - values) * w

    def jacobian(p):
        return _jacobian(p, x) * w[:, None]

    res = optimize.least_squares(
            residuals, p0, jac=jacobian if jac == 'analytic' else jac,
            method='lm', ftol=ftol, xtol=ftol, gtol=ftol, x_scale='jac',
            max_nfev=max_iterations)
    converged = res.status > 0
    p = res.x
    dof = len(x) - len(p)
    s2 = 2 * res.cost / dof if dof > 0 else np.inf
    cov, regular = _covariance(res.jac)
    sigmas = np.sqrt(np.abs(np.diag(cov)) * s2)

    plain = _model(p, x) - values
    dips = []
    for k in range(n_dips):
        c = f_ref + p[1 + 3 * k] * _SCALE_HZ
        fwhm = abs(p[2 + 3 * k]) * _SCALE_HZ
        near = np.abs(freqs - c) <= fwhm
        dips.append(DipFit(c, fwhm, p[3 + 3 * k],
                           sigmas[1 + 3 * k] * _SCALE_HZ,
                           sigmas[2 + 3 * k] * _SCALE_HZ,
                           sigmas[3 + 3 * k],
                           float(np.sum(plain[near] ** 2))))
    report = FitReport(dips, p[0], sigmas[0], res.cost, res.nfev, converged,
                       message=res.message, weights=weights)
    report.degenerate = not regular or _is_degenerate(report.dips)
    if not converged:
        log.warning('Fit of %d dips did not converge after %d evaluations',
                    n_dips, res.nfev)
    elif report.degenerate:
        log.warning('Degenerate fit of %d dips', n_dips)
    log.debug('Fit of %d dips: cost %g after %d evaluations (%s)', n_dips,
              res.cost, res.nfev, res.message)
    return report


def _is_degenerate(dips):
    for d in dips:
        if d.contrast <= 0:
            return True
    for a, b in zip(dips[:-1], dips[1:]):
        if b.center_hz - a.center_hz < 0.05 * (a.fwhm_hz + b.fwhm_hz):
            return True
    return False


def pair_dips(centers, d_hz, tolerance_hz=50e6):
    '''Pair the k-th lowest with the k-th highest dip.

    :param centers: Center frequencies or DipFit objects.
    :param d_hz: Zero-field splitting the pairs are centered on.
    :param tolerance_hz: Pairs whose center is further from D are flagged
        asymmetric.
    :returns: ResonancePairs ordered by splitting, largest first.
    '''
    items = []
    for c in centers:
        if isinstance(c, DipFit):
            items.append((c.center_hz, c.center_sigma_hz))
        else:
            items.append((float(c), 0.0))
    if len(items) % 2:
        raise ValidationError('Cannot pair an odd number of dips (%d)'
                              % len(items))
    items.sort()
    pairs = []
    n = len(items)
    for k in range(n // 2):
        (lo, slo), (hi, shi) = items[k], items[n - 1 - k]
        pair = ResonancePair(lo, hi, slo, shi)
        pair.asymmetric = abs(pair.center_hz - d_hz) > tolerance_hz
        if pair.asymmetric:
            log.warning('Dip pair (%g, %g) Hz is centered %g Hz away from D',
                        lo, hi, pair.center_hz - d_hz)
        pairs.append(pair)
    pairs.sort(key=lambda p: -p.splitting_hz)
    return pairs


def _angular_span(angles):
    a = np.unique(np.mod(angles, 360.0))
    if len(a) < 2:
        return 0.0
    gaps = np.append(np.diff(a), 360.0 - (a[-1] - a[0]))
    return 360.0 - gaps.max()


def fit_dipole_pattern(samples, background=0.0, min_gain=0.2, min_ratio=0.2,
                       unpolarized_fraction=0.05):
    '''Fit single and double cos^2 lobe models to contrast versus half-wave
    plate angle.

    The offset of both models is the known background. The second lobe of
    the double model is orthogonal to the first.

    :param samples: Iterable of (angle_deg, contrast).
    :param background: Contrast offset shared by both models.
    :param min_gain: Relative residual reduction required for the double
        model.
    :param min_ratio: Minimum A2/A1 for the double model.
    :returns: DipolePattern
    '''
    samples = [(float(a) % 360.0, float(c)) for a, c in samples]
    if len(samples) < 8:
        raise ValidationError('At least 8 angle samples required (%d)'
                              % len(samples))
    angles = np.array([s[0] for s in samples])
    values = np.array([s[1] for s in samples]) - background
    span = _angular_span(angles)
    if span < 180.0 - 1e-9:
        raise ValidationError('Angle samples span only %.1f deg, 180 deg '
                              'required' % span)
    theta = np.radians(angles)

    # Double model: (A1+A2)/2 + (A1-A2)/2 * cos(2(theta - theta1))
    design = np.column_stack([np.ones_like(theta), np.cos(2 * theta),
                              np.sin(2 * theta)])
    coef = linalg.lstsq(design, values)[0]
    mean, amp = coef[0], math.hypot(coef[1], coef[2])
    axis = 0.5 * math.atan2(coef[2], coef[1])
    a1, a2 = mean + amp, mean - amp
    if a2 < 0:
        a1, a2 = max(2 * amp, 0.0), 0.0
    rss_double = float(np.sum((values - (a1 * np.cos(theta - axis) ** 2 +
                                         a2 * np.sin(theta - axis) ** 2))
                              ** 2))

    def single(p):
        return p[0] * np.cos(theta - p[1]) ** 2 - values

    fitted = optimize.least_squares(single, [max(a1, 1e-12), axis],
                                    method='lm')
    s_amp, s_axis = fitted.x
    if s_amp < 0:
        s_amp = 0.0
    rss_single = float(np.sum(single([s_amp, s_axis]) ** 2))

    scale = max(float(np.mean(np.abs(values + background))), 1e-12)
    double = (rss_double < (1 - min_gain) * rss_single and
              a2 > min_ratio * a1)
    if double:
        first = math.degrees(axis) % 180.0
        pattern = DipolePattern(samples, DOUBLE_DIPOLE, (a1, a2),
                                (first, (first + 90.0) % 360.0), background,
                                rss_single=rss_single, rss_double=rss_double)
    else:
        pattern = DipolePattern(samples, SINGLE_DIPOLE, (s_amp,),
                                (math.degrees(s_axis) % 180.0,), background,
                                unpolarized=s_amp <= unpolarized_fraction *
                                scale,
                                rss_single=rss_single, rss_double=rss_double)
    log.debug('Dipole pattern classified as %s (rss %g vs %g)',
              pattern.classification, rss_single, rss_double)
    return pattern


def _fft_frequency(t, values):
    '''Dominant oscillation frequency from a zero-padded spectrum.'''
    dt = float(np.median(np.diff(t)))
    n = 16 * len(values)
    spectrum = np.abs(np.fft.rfft(values - np.mean(values), n))
    freqs = np.fft.rfftfreq(n, dt)
    usable = freqs > 1.5 / (t[-1] - t[0])
    return float(freqs[usable][np.argmax(spectrum[usable])])


def _trace_arrays(t, values):
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.shape != values.shape or t.ndim != 1 or len(t) < 8:
        raise ValidationError('Trace needs matching arrays of at least 8 '
                              'points')
    if np.any(np.diff(t) <= 0):
        raise ValidationError('Trace times are not strictly increasing')
    return t, values


def fit_rabi(t, values):
    '''Fit 1 - C/2 (1 - cos(2 pi f t)) exp(-t/tau) to a Rabi trace.

    :param t: Pulse lengths in seconds.
    :param values: Normalized PL.
    :returns: RabiFit
    '''
    t, values = _trace_arrays(t, values)
    us = t * 1e6

    def model(tt, f, tau, c):
        return 1 - 0.5 * c * (1 - np.cos(2 * np.pi * f * tt)) * \
            np.exp(-tt / tau)

    p0 = [_fft_frequency(us, values), 0.5 * (us[-1] - us[0]),
          min(max(1 - values.min(), 1e-3), 0.99)]
    try:
        popt, pcov = optimize.curve_fit(
                model, us, values, p0=p0,
                bounds=([0, 1e-6, 0], [np.inf, np.inf, 1]), max_nfev=10000)
    except RuntimeError as e:
        raise ConvergenceError('Rabi fit failed (%s)' % e)
    sig = np.sqrt(np.abs(np.diag(pcov)))
    log.debug('Rabi fit: %g MHz, %g us, contrast %g', *popt)
    return RabiFit(popt[0] * 1e6, popt[1] * 1e-6, popt[2], sig[0] * 1e6,
                   sig[1] * 1e-6, sig[2])


def fit_ramsey(t, values, envelope=GAUSSIAN):
    '''Fit a Ramsey free induction decay with Gaussian or exponential
    envelope.

    :param t: Free evolution times in seconds.
    :param values: Normalized PL.
    :returns: RamseyFit
    '''
    if envelope not in (GAUSSIAN, EXPONENTIAL):
        raise ValidationError('Unknown Ramsey envelope %s' % envelope)
    t, values = _trace_arrays(t, values)
    ns = t * 1e9

    def model(tt, f, t2, c):
        return 1 - 0.5 * c * (1 - np.cos(2 * np.pi * f * tt) *
                              ramsey_envelope(tt, t2, envelope))

    f0 = _fft_frequency(ns, values)
    c0 = min(max(1 - values.min(), 1e-3), 0.99)
    span = ns[-1] - ns[0]
    best = None
    for t2 in (span / 20, span / 10, span / 5, span / 2):
        try:
            popt, pcov = optimize.curve_fit(
                    model, ns, values, p0=[f0, t2, c0],
                    bounds=([0, 1e-6, 0], [np.inf, np.inf, 1]),
                    max_nfev=10000)
        except RuntimeError:
            continue
        cost = float(np.sum((model(ns, *popt) - values) ** 2))
        if best is None or cost < best[0]:
            best = (cost, popt, pcov)
    if best is None:
        raise ConvergenceError('Ramsey fit failed for every start value')
    _, popt, pcov = best
    sig = np.sqrt(np.abs(np.diag(pcov)))
    log.debug('Ramsey fit: %g GHz, %g ns, contrast %g', *popt)
    return RamseyFit(popt[1] * 1e-9, popt[0] * 1e9, popt[2], sig[1] * 1e-9,
                     sig[0] * 1e9, sig[2], envelope)
