# -*- coding: utf-8 -*-
'''
    nvmag.inversion
    ~~~~~~~~~~~~~~~

    Vector field reconstruction from the resonance pairs of three NV
    orientations.

    Each resonance pair gives the field magnitude and the polar angle between
    field and NV axis. The polar angle constrains the field direction to a
    cone around the axis; three cones intersect in the field direction. Since
    a resonance pair cannot tell a field from its mirror image across the
    plane perpendicular to the axis, every cone has two nappes, and the pair
    of nappes that intersects best is chosen. Alternatively the fixed
    mirroring convention (mirror every cone wider than half the tetrahedral
    angle) is kept as is. The remaining global sign (B and -B give identical
    spectra) is fixed by a hemisphere hint.

    Example::

        >>> from nvmag.spin import nv_axes_for_facet, SpinParams
        >>> from nvmag.inversion import reconstruct_vector
        >>> geom = nv_axes_for_facet('(110)')
        >>> result = reconstruct_vector(pairs, geom, SpinParams(),
        ...                             hint='toward')
        >>> result.b_crystal.magnitude()

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import itertools
import logging
import math

import numpy as np
from scipy import linalg

from nvmag.errors import (FrameError, IntersectionError, NumericalError,
                          ValidationError)
from nvmag.spin import CRYSTAL, LAB, FieldVector
from nvmag.util import angle_deg, ensure_finite, unit_vector

log = logging.getLogger(__name__)

TETRAHEDRAL_ANGLE_DEG = math.degrees(math.acos(-1.0 / 3.0))
MIRROR_THRESHOLD_DEG = 0.5 * TETRAHEDRAL_ANGLE_DEG
LOW_CONFIDENCE_DEG = 10.0
MIN_FIELD_T = 1e-4

TOWARD = 'toward'
AWAY = 'away'
HINTS = (TOWARD, AWAY)

CUBIC = 'cubic'
PRINTED = 'printed'
FORMULAS = (CUBIC, PRINTED)

SEARCH = 'search'
MIRROR = 'mirror'
SELECTIONS = (SEARCH, MIRROR)

LOWER = 'lower'
UPPER = 'upper'


class ConeConstraint(object):
    '''Field directions at a fixed angle to an axis.

    :param axis: Unit vector of the cone axis (crystal frame).
    :param half_angle_deg: Half opening angle in [0, 90].
    :param sigma_deg: Uncertainty of the half angle.
    :param mirrored: Set when the axis was point mirrored.
    :param index: Geometry axis the cone was derived from.
    '''

    def __init__(self, axis, half_angle_deg, sigma_deg=0.0, mirrored=False,
                 index=None):
        axis = np.asarray(axis, dtype=float)
        if abs(np.linalg.norm(axis) - 1) > 1e-9:
            raise ValidationError('Cone axis must have unit norm')
        if not 0 <= half_angle_deg <= 90:
            raise ValidationError('Cone half angle outside [0, 90] (%s)'
                                  % half_angle_deg)
        if not sigma_deg >= 0:
            raise ValidationError('Invalid cone sigma (%s)' % sigma_deg)
        self.axis = axis
        self.half_angle_deg = float(half_angle_deg)
        self.sigma_deg = float(sigma_deg)
        self.mirrored = mirrored
        self.index = index

    def flipped(self):
        '''The opposite nappe: same half angle around the mirrored axis.'''
        return ConeConstraint(-self.axis, self.half_angle_deg, self.sigma_deg,
                              not self.mirrored, self.index)

    def __repr__(self):
        return 'ConeConstraint(%r, %r, mirrored=%r)' % (
                list(self.axis), self.half_angle_deg, self.mirrored)


class ConeIntersection(object):
    '''Pairwise intersection points of three cones and their centroid.'''

    def __init__(self, cones, triangle, direction, triangle_diameter_deg):
        self.cones = cones
        self.triangle = triangle
        self.direction = direction
        self.triangle_diameter_deg = triangle_diameter_deg


class ReconstructionResult(object):
    '''Reconstructed field with diagnostics.

    `residuals_t` holds, per cone, the measured field projection minus the
    projection of the reconstructed field. `azimuth_deg` is set when both
    in-plane orientations took part.
    '''

    def __init__(self, b_crystal, magnitude_t, magnitude_sigma_t, triangle,
                 triangle_diameter_deg, residuals_t, cones, b_lab=None,
                 direction_sigma_deg=0.0, low_confidence=False,
                 azimuth_deg=None, azimuth_alternates_deg=None,
                 magnitudes_t=None, polar_angles_deg=None, hint=None):
        self.b_crystal = b_crystal
        self.b_lab = b_lab
        self.magnitude_t = magnitude_t
        self.magnitude_sigma_t = magnitude_sigma_t
        self.triangle = triangle
        self.triangle_diameter_deg = triangle_diameter_deg
        self.residuals_t = residuals_t
        self.cones = cones
        self.direction_sigma_deg = direction_sigma_deg
        self.low_confidence = low_confidence
        self.azimuth_deg = azimuth_deg
        self.azimuth_alternates_deg = azimuth_alternates_deg
        self.magnitudes_t = magnitudes_t
        self.polar_angles_deg = polar_angles_deg
        self.hint = hint

    def field(self, frame=CRYSTAL):
        if frame == CRYSTAL:
            return self.b_crystal
        if self.b_lab is None:
            raise FrameError('Reconstruction carries no lab-frame field')
        return self.b_lab


class FieldDifference(object):

    def __init__(self, vector, magnitude_t, sigma_t):
        self.vector = vector
        self.magnitude_t = magnitude_t
        self.sigma_t = sigma_t


class CurrentResponse(object):
    '''Linear resonance shift of one orientation with applied current.'''

    def __init__(self, currents_a, resonances_hz, slope_hz_per_a,
                 slope_sigma_hz_per_a, intercept_hz, field_per_current_t_per_a,
                 field_per_current_sigma_t_per_a, residuals_hz):
        self.currents_a = currents_a
        self.resonances_hz = resonances_hz
        self.slope_hz_per_a = slope_hz_per_a
        self.slope_sigma_hz_per_a = slope_sigma_hz_per_a
        self.intercept_hz = intercept_hz
        self.field_per_current_t_per_a = field_per_current_t_per_a
        self.field_per_current_sigma_t_per_a = field_per_current_sigma_t_per_a
        self.residuals_hz = residuals_hz


def _field_squared_hz2(pair, params):
    # nu1^2 + nu2^2 - nu1*nu2 - D^2 written in offsets from D
    a = pair.nu1_hz - params.d_hz
    b = pair.nu2_hz - params.d_hz
    q = a * a + b * b - a * b + params.d_hz * (a + b)
    return q / 3.0 - params.e_hz ** 2


def b_magnitude(pair, params):
    '''Field magnitude in tesla from one resonance pair.

    :raises NumericalError: if the pair is inconsistent with D and E.
    '''
    rhs = _field_squared_hz2(pair, params)
    tol = (MIN_FIELD_T * params.gamma_hz_per_t) ** 2
    if rhs < -tol:
        raise NumericalError('Inconsistent resonance pair (%g, %g) Hz'
                             % (pair.nu1_hz, pair.nu2_hz))
    return math.sqrt(max(rhs, 0.0)) / params.gamma_hz_per_t


def b_magnitude_sigma(pair, params):
    '''Uncertainty of :func:`b_magnitude` propagated from the frequency
    sigmas of the pair.
    '''
    if pair.sigma1_hz == 0 and pair.sigma2_hz == 0:
        return 0.0
    mag = b_magnitude(pair, params)
    if mag == 0:
        return float('inf')
    g2 = params.gamma_hz_per_t ** 2
    d1 = (2 * pair.nu1_hz - pair.nu2_hz) / (6 * g2 * mag)
    d2 = (2 * pair.nu2_hz - pair.nu1_hz) / (6 * g2 * mag)
    return math.hypot(d1 * pair.sigma1_hz, d2 * pair.sigma2_hz)


def _delta_ghz(nu1, nu2, params, formula):
    d = params.d_hz * 1e-9
    e2 = (params.e_hz * 1e-9) ** 2
    nu1 *= 1e-9
    nu2 *= 1e-9
    s = nu1 + nu2
    s2 = nu1 * nu1 + nu2 * nu2
    p = nu1 * nu2
    q = s2 - p
    if formula == CUBIC:
        num = 7 * d ** 3 + 2 * s * (2 * s2 - 5 * p) - 3 * d * (q + 9 * e2)
        den = 9 * (q - d * d - 3 * e2)
    elif formula == PRINTED:
        num = 7 * d ** 3 + 2 * s * (2 * s2 - 5 * p - 9 * e2) - \
            3 * d * (q + 9 * e2)
        den = 9 * (q - d * d) - 3 * e2
    else:
        raise ValidationError('Unknown polar angle formula %s' % formula)
    if den == 0:
        raise NumericalError('Angle undefined at near-zero field')
    return num / den, d


def _theta_deg(nu1, nu2, params, formula):
    delta, d = _delta_ghz(nu1, nu2, params, formula)
    ratio = delta / d
    if abs(ratio) > 1.05:
        raise NumericalError('Polar angle out of range (delta/D = %g)'
                             % ratio)
    ratio = min(max(ratio, -1.0), 1.0)
    return 0.5 * math.degrees(math.acos(ratio))


def polar_angle(pair, params, formula=CUBIC):
    '''Angle between field and NV axis in degrees, in [0, 90].

    :param formula: ``cubic`` (exact for E = 0, default) or ``printed``
        (the closed form carrying additional E terms).
    :raises NumericalError: below 0.1 mT, where the angle is undefined.
    '''
    if b_magnitude(pair, params) < MIN_FIELD_T:
        raise NumericalError('Angle undefined at near-zero field')
    return _theta_deg(pair.nu1_hz, pair.nu2_hz, params, formula)


def polar_angle_sigma(pair, params, formula=CUBIC, step_hz=1e3):
    '''Uncertainty of :func:`polar_angle` by numerical propagation.'''
    if pair.sigma1_hz == 0 and pair.sigma2_hz == 0:
        return 0.0
    if math.isinf(pair.sigma1_hz) or math.isinf(pair.sigma2_hz):
        return float('inf')
    nu = [pair.nu1_hz, pair.nu2_hz]
    total = 0.0
    for k, sigma in enumerate((pair.sigma1_hz, pair.sigma2_hz)):
        up, down = list(nu), list(nu)
        up[k] += step_hz
        down[k] -= step_hz
        deriv = (_theta_deg(up[0], up[1], params, formula) -
                 _theta_deg(down[0], down[1], params, formula)) / \
            (2 * step_hz)
        total += (deriv * sigma) ** 2
    return math.sqrt(total)


def azimuthal_angles(proj2, proj3):
    '''Azimuths of the in-plane field projection relative to the two
    in-plane NV axes, which enclose the tetrahedral angle.

    :param proj2: Field projection on the first in-plane axis.
    :param proj3: Field projection on the second in-plane axis.
    :returns: (phi1, phi2) in degrees, phi1 + phi2 = 109.47. phi1 is the
        orientation of the line carrying the in-plane projection and lies
        in [0, 180), so phi2 lies in (-70.53, 109.47]. The projection signs
        fix the branch: proj2 = -proj3 gives phi1 = 144.74, outside
        [0, 90]. :func:`azimuthal_alternates` gives the other branch.
    '''
    ensure_finite('projection', proj2, proj3)
    if proj2 == 0 and proj3 == 0:
        raise ValidationError('Azimuth undefined for zero projections')
    t = math.radians(TETRAHEDRAL_ANGLE_DEG)
    phi1 = math.degrees(math.atan2(proj3 - proj2 * math.cos(t),
                                   proj2 * math.sin(t))) % 180.0
    return phi1, TETRAHEDRAL_ANGLE_DEG - phi1


def azimuthal_alternates(phi1):
    '''The supplementary branch of :func:`azimuthal_angles`.'''
    alt = phi1 - 180.0
    return alt, TETRAHEDRAL_ANGLE_DEG - alt


def cone_from_measurement(axis, theta_deg, sigma_deg=0.0, index=None):
    '''Express a measured polar angle as an intersectable cone.

    Angles above half the tetrahedral angle are point mirrored: the axis is
    inverted and the stored half angle kept within [0, 90].
    '''
    if not 0 <= theta_deg <= 180:
        raise ValidationError('Polar angle outside [0, 180] (%s)' % theta_deg)
    axis = unit_vector(axis)
    if theta_deg <= MIRROR_THRESHOLD_DEG:
        return ConeConstraint(axis, theta_deg, sigma_deg, False, index)
    half = theta_deg if theta_deg <= 90 else 180.0 - theta_deg
    return ConeConstraint(-axis, half, sigma_deg, True, index)


def _pair_points(ci, cj):
    a, b = ci.axis, cj.axis
    g = float(a.dot(b))
    denom = 1 - g * g
    if denom < 1e-12:
        raise IntersectionError('Cone axes are parallel')
    cos_i = math.cos(math.radians(ci.half_angle_deg))
    cos_j = math.cos(math.radians(cj.half_angle_deg))
    alpha = (cos_i - g * cos_j) / denom
    beta = (cos_j - g * cos_i) / denom
    disc = (1 - alpha * cos_i - beta * cos_j) / denom
    base = alpha * a + beta * b
    return base, np.cross(a, b), disc


def intersect_cones(cones, tolerance_deg=1e-6):
    '''Intersect three cones pairwise.

    :param cones: Exactly three ConeConstraints.
    :returns: ConeIntersection with the three pairwise points (triangle),
        their normalized centroid and the largest angle between them.
    :raises IntersectionError: naming the first pair that cannot
        intersect and the deficit angle.
    '''
    cones = list(cones)
    if len(cones) != 3:
        raise ValidationError('Exactly three cones required (%d)'
                              % len(cones))
    for i, j in ((0, 1), (1, 2), (0, 2)):
        sep = angle_deg(cones[i].axis, cones[j].axis)
        ti, tj = cones[i].half_angle_deg, cones[j].half_angle_deg
        deficit = max(sep - (ti + tj), abs(ti - tj) - sep)
        if deficit > tolerance_deg:
            raise IntersectionError(
                    'Cones %d and %d do not intersect (deficit %.4f deg)'
                    % (i, j, deficit), (i, j), deficit)
    points = []
    for i, j, k in ((0, 1, 2), (1, 2, 0), (0, 2, 1)):
        base, normal, disc = _pair_points(cones[i], cones[j])
        if disc < -1e-9:
            raise IntersectionError(
                    'Cones %d and %d do not intersect (discriminant %g)'
                    % (i, j, disc), (i, j), 0.0)
        root = math.sqrt(max(disc, 0.0))
        target = math.cos(math.radians(cones[k].half_angle_deg))
        candidates = [base + root * normal, base - root * normal]
        best = min(candidates,
                   key=lambda u: abs(u.dot(cones[k].axis) - target))
        points.append(unit_vector(best))
    triangle = np.array(points)
    direction = unit_vector(triangle.sum(axis=0))
    diameter = max(angle_deg(triangle[a], triangle[b])
                   for a, b in ((0, 1), (1, 2), (0, 2)))
    return ConeIntersection(cones, triangle, direction, diameter)


def _hint_ok(direction, hint):
    if hint == TOWARD:
        return direction[2] <= 1e-12
    return direction[2] >= -1e-12


def _combine_magnitudes(mags, sigmas):
    mags = np.asarray(mags)
    sigmas = np.asarray(sigmas)
    if np.all(np.isfinite(sigmas) & (sigmas > 0)):
        w = 1 / sigmas ** 2
        return float(np.sum(w * mags) / np.sum(w)), float(1 / math.sqrt(
                np.sum(w)))
    return float(mags.mean()), float(mags.std(ddof=1) / math.sqrt(len(mags)))


def _flip_combinations(selection):
    if selection == MIRROR:
        return [(False, False, False), (True, True, True)]
    return list(itertools.product((False, True), repeat=3))


def reconstruct_vector(pairs, geom, params, hint=TOWARD, formula=CUBIC,
                       polarization_reference_deg=None, selection=SEARCH):
    '''Reconstruct the field vector from three axis-tagged resonance pairs.

    :param pairs: Three ResonancePairs with distinct `axis_index`.
    :param geom: CrystalGeometry the indices refer to.
    :param params: SpinParams
    :param hint: ``toward`` (field points into the facet) or ``away``.
    :param formula: Polar angle formula, see :func:`polar_angle`.
    :param polarization_reference_deg: If set, the lab-frame field is added
        using this polarization reference.
    :param selection: ``search`` tries every nappe combination and keeps the
        smallest triangle. ``mirror`` keeps the cones of
        :func:`cone_from_measurement` and only lets the hint choose between
        the field and its inverse.
    :returns: ReconstructionResult
    '''
    pairs = list(pairs)
    if len(pairs) != 3:
        raise ValidationError('three orientations required (%d given)'
                              % len(pairs))
    indices = [p.axis_index for p in pairs]
    if None in indices or len(set(indices)) != 3:
        raise ValidationError('Pairs need three distinct axis indices (%s)'
                              % indices)
    if hint not in HINTS:
        raise ValidationError('Unknown hemisphere hint %s' % hint)
    if selection not in SELECTIONS:
        raise ValidationError('Unknown cone selection %s' % selection)

    mags = [b_magnitude(p, params) for p in pairs]
    mag_sigmas = [b_magnitude_sigma(p, params) for p in pairs]
    thetas = [polar_angle(p, params, formula) for p in pairs]
    theta_sigmas = [polar_angle_sigma(p, params, formula) for p in pairs]
    cones = [cone_from_measurement(geom.axis(i), t, s, i)
             for i, t, s in zip(indices, thetas, theta_sigmas)]

    candidates = []
    failure = None
    for flips in _flip_combinations(selection):
        trial = [c.flipped() if f else c for c, f in zip(cones, flips)]
        try:
            inter = intersect_cones(trial)
        except IntersectionError as e:
            failure = e
            continue
        candidates.append((round(inter.triangle_diameter_deg, 9), sum(flips),
                           inter))
    if not candidates:
        raise failure
    allowed = [c for c in candidates if _hint_ok(c[2].direction, hint)]
    if not allowed:
        raise ValidationError('Hint %s contradicts every intersecting '
                              'configuration' % hint)
    _, flips, inter = min(allowed, key=lambda c: (c[0], c[1]))
    log.debug('Chose cone configuration with %d flipped nappes, triangle '
              '%.3f deg', flips, inter.triangle_diameter_deg)

    magnitude, magnitude_sigma = _combine_magnitudes(mags, mag_sigmas)
    b_crystal = FieldVector.from_array(magnitude * inter.direction, CRYSTAL)
    residuals = []
    for cone, m in zip(inter.cones, mags):
        measured = m * math.cos(math.radians(cone.half_angle_deg))
        residuals.append(measured - float(b_crystal.vector.dot(cone.axis)))
    low_confidence = inter.triangle_diameter_deg > LOW_CONFIDENCE_DEG
    if low_confidence:
        log.warning('Low-confidence reconstruction, triangle of %.2f deg',
                    inter.triangle_diameter_deg)

    azimuth = alternates = None
    in_plane = geom.in_plane()
    if all(i in indices for i in in_plane) and len(in_plane) == 2:
        proj = []
        for i in in_plane:
            k = indices.index(i)
            proj.append(mags[k] * math.cos(math.radians(thetas[k])))
        azimuth = azimuthal_angles(proj[0], proj[1])
        alternates = azimuthal_alternates(azimuth[0])

    finite = [s for s in theta_sigmas if not math.isinf(s)]
    direction_sigma = math.sqrt(np.mean(np.square(finite))) \
        if len(finite) == 3 else float('inf')
    b_lab = None
    if polarization_reference_deg is not None:
        b_lab = crystal_to_lab(b_crystal, geom, polarization_reference_deg)
    return ReconstructionResult(
            b_crystal, magnitude, magnitude_sigma, inter.triangle,
            inter.triangle_diameter_deg, residuals, inter.cones, b_lab,
            direction_sigma, low_confidence, azimuth, alternates, mags,
            thetas, hint)


def vector_difference(a, b, frame=CRYSTAL):
    '''Difference a - b of two reconstructions.

    :returns: FieldDifference with magnitude and propagated uncertainty.
    '''
    va, vb = a.field(frame), b.field(frame)
    if va.frame != vb.frame:
        raise FrameError('Cannot subtract %s-frame from %s-frame field'
                         % (vb.frame, va.frame))
    diff = va - vb
    var = 0.0
    for r in (a, b):
        var += r.magnitude_sigma_t ** 2 + \
            (r.magnitude_t * math.radians(r.direction_sigma_deg)) ** 2
    return FieldDifference(diff, diff.magnitude(), math.sqrt(var))


def field_from_projections(axes, projections, frame=CRYSTAL):
    '''Field whose projections on three axes take the given values.'''
    axes = np.asarray(axes, dtype=float)
    if axes.shape != (3, 3):
        raise ValidationError('Three axes required')
    try:
        vec = linalg.solve(axes, np.asarray(projections, dtype=float))
    except linalg.LinAlgError:
        raise NumericalError('Axes are linearly dependent')
    return FieldVector.from_array(vec, frame)


def fit_current_response(currents_a, resonances_hz, params):
    '''Straight-line fit of a resonance frequency versus current.

    :param currents_a: Applied currents.
    :param resonances_hz: Resonance frequency per current.
    :returns: CurrentResponse with the field per current |slope|/gamma.
    '''
    x = np.asarray(currents_a, dtype=float)
    y = np.asarray(resonances_hz, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValidationError('At least two (current, frequency) samples '
                              'required')
    ensure_finite('current response', x, y)
    if len(np.unique(x)) < 2:
        raise ValidationError('Singular design: only one distinct current')
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), _, _, _ = linalg.lstsq(design, y)
    residuals = y - (slope * x + intercept)
    if len(x) > 2:
        s2 = float(np.sum(residuals ** 2)) / (len(x) - 2)
        sigma = math.sqrt(s2 / float(np.sum((x - x.mean()) ** 2)))
    else:
        sigma = 0.0
    g = params.gamma_hz_per_t
    return CurrentResponse(x, y, float(slope), sigma, float(intercept),
                           abs(slope) / g, sigma / g, residuals)


def current_field_vector(responses, geom, indices, params,
                         transition=LOWER):
    '''Field per unit current from the slopes of three orientations.

    :param responses: CurrentResponses, one per orientation.
    :param indices: Geometry axis of each response.
    :param transition: ``lower`` when the slopes track the lower resonance,
        whose frequency falls with the field projection.
    '''
    if transition not in (LOWER, UPPER):
        raise ValidationError('Unknown transition %s' % transition)
    sign = -1.0 if transition == LOWER else 1.0
    axes = [geom.axis(i) for i in indices]
    proj = [sign * r.slope_hz_per_a / params.gamma_hz_per_t
            for r in responses]
    return field_from_projections(axes, proj)


def _rotation(polarization_reference_deg):
    psi = math.radians(polarization_reference_deg)
    c, s = math.cos(psi), math.sin(psi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _check_lab_aligned(geom):
    if geom.facet != '(110)' or not np.allclose(geom.normal, [0, 0, 1]):
        raise ValidationError('Geometry carries no lab alignment')


def crystal_to_lab(v, geom, polarization_reference_deg=0.0):
    '''Express a crystal-frame field in the lab frame (x along the current,
    y along the waveguide polarization, z along the facet normal). The
    reference angle rotates about z for a polarization offset.
    '''
    v.require_frame(CRYSTAL)
    _check_lab_aligned(geom)
    vec = _rotation(polarization_reference_deg).dot(v.vector)
    return FieldVector.from_array(vec, LAB)


def lab_to_crystal(v, geom, polarization_reference_deg=0.0):
    '''Inverse of :func:`crystal_to_lab`.'''
    v.require_frame(LAB)
    _check_lab_aligned(geom)
    vec = _rotation(polarization_reference_deg).T.dot(v.vector)
    return FieldVector.from_array(vec, CRYSTAL)
